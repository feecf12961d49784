#pragma once

#include <Eigen/Core>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hotspots/fem.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/mesh.hpp"

namespace hotspots::analysis {

/// Area-weighted average of the element gradients around each vertex.
std::vector<Vec2> recover_gradient(const mesh::Mesh& mesh, const Eigen::VectorXd& field);

/// Vertex-to-vertex adjacency through triangle edges.
std::vector<std::vector<int>> vertex_neighbors(const mesh::Mesh& mesh);

/// Vertices within `rings` edge hops of v, v excluded, in BFS order.
std::vector<int> ring(const std::vector<std::vector<int>>& adjacency, int v, int rings);

enum class Extremum { SaddleLike, LocalMax, LocalMin, Unresolved };
const char* extremum_name(Extremum e) noexcept;

enum class CriticalVerdict { NoInteriorCriticalPoints, CriticalPointsFound, Inconclusive };
const char* verdict_name(CriticalVerdict v) noexcept;

struct Candidate {
  Vec2 location;
  std::vector<double> ratios;  ///< |G| / max|G| per level, coarse to fine
  double distance_over_d = 0.0;
  Extremum classification = Extremum::Unresolved;
  double mode_ratio = 0.0;  ///< see classify_vertex
  bool confirmed = false;
};

struct CriticalPointOptions {
  double tau = 0.02;
  /// Exclusion margin; <= 0 selects 2 h of the finest level.
  double delta = 0.0;
  double persistence = 3.0;  ///< in units of the level's h
  /// Required ratio decrease per level for a confirmed candidate.
  double decrease = 1.5;
  /// Ratios below this are indistinguishable from zero.
  double noise_floor = 1e-8;
};

struct CriticalPointReport {
  std::vector<Candidate> candidates;
  double tau = 0.0;
  double delta = 0.0;
  std::vector<double> max_gradient;  ///< per level, over vertices at distance >= delta
  CriticalVerdict verdict = CriticalVerdict::Inconclusive;
  int field = 0;
};

/// Candidates are local minima of |G| with ratio <= tau at the finest level,
/// at distance >= delta from the boundary and D. Each is tracked back to the
/// coarser levels by the smallest ratio within `persistence` h, and confirmed
/// when it stays below tau and shrinks by `decrease` per level.
CriticalPointReport find_critical_points(const geometry::DomainSpec& spec,
                                         std::span<const fem::EigenSolution> levels, int field = 0,
                                         const CriticalPointOptions& options = {});

struct Classification {
  Extremum kind = Extremum::Unresolved;
  double mode_ratio = std::numeric_limits<double>::quiet_NaN();  ///< |a2| / (2|u(p)|)
};

/// Classifies a critical point p of an eigenfunction (-Δu = λu). The Hessian
/// has trace -λu(p); its eigenvalue split is set by the cos 2θ / sin 2θ
/// coefficient a2 of u on the circle of radius r around p, divided by
/// J2(√λ r). Extremum when |a2| < 2|u(p)|, saddle when |a2| > 2|u(p)|, with a
/// 10% band left unresolved. a2 and u(p) are Richardson-extrapolated over the
/// two finest levels.
Classification classify_critical_point(std::span<const fem::EigenSolution> levels, int field, Vec2 p, double r);

struct ComparisonField {
  Eigen::VectorXd values;  ///< u(p) J0(sqrt(lambda) |x - p|) - u(x)
  int vertex = -1;
  int sign_components = 0;  ///< on the 3-ring around p
  double min_on_dirichlet = 0.0;
};

/// Diagnostic field from the hot spots argument, centred at the vertex nearest p.
ComparisonField comparison_field(const fem::EigenSolution& solution, Vec2 p, int field = 0);

struct NodalSet {
  std::vector<std::vector<Vec2>> polylines;
  int positive_domains = 0;
  int negative_domains = 0;
  int domains() const { return positive_domains + negative_domains; }
  /// Vertex labels: component index for each sign, -1 for zeros.
  std::vector<int> component;
  std::vector<int> sign;
};

/// Zero level set of a P1 field and its vertex-connected sign components.
NodalSet nodal_set(const mesh::Mesh& mesh, const Eigen::VectorXd& field);

/// x -> A x + b with A orthogonal.
struct Isometry {
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  Vec2 b;
  Vec2 apply(Vec2 p) const { return {a11 * p.x + a12 * p.y + b.x, a21 * p.x + a22 * p.y + b.y}; }
  static Isometry reflection(Vec2 point, Vec2 direction);
  static Isometry rotation(Vec2 center, double angle);
};

enum class Parity { Even, Odd, Neither };
const char* parity_name(Parity p) noexcept;

struct SymmetryReport {
  double even_deviation = 0.0;  ///< max |u∘σ - u| / max|u|
  double odd_deviation = 0.0;   ///< max |u∘σ + u| / max|u|
  Parity parity = Parity::Neither;
};

SymmetryReport symmetry_check(const mesh::Mesh& mesh, const Eigen::VectorXd& field, const Isometry& sigma,
                              double tol = 1e-2);

enum class NodalHypothesis { Holds, False, Degenerate };
const char* hypothesis_name(NodalHypothesis h) noexcept;

struct NodalDomainReport {
  double mu2 = 0.0;
  double mu3 = 0.0;
  double diameter = 0.0;
  double diameter_plus = 0.0;
  double diameter_minus = 0.0;
  int domains = 0;
  NodalHypothesis hypothesis = NodalHypothesis::Degenerate;
  CriticalPointReport critical_points;  ///< filled only when the hypothesis holds
};

/// Second Neumann eigenfunction of a convex domain without D: checks whether
/// both nodal domains have at most half the diameter of Omega. `levels` must
/// carry at least three eigenpairs, with est_error from extrapolation.
NodalDomainReport nodal_domain_report(const geometry::DomainSpec& spec,
                                      std::span<const fem::EigenSolution> levels);

}  // namespace hotspots::analysis
