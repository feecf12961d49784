#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hotspots/vec2.hpp"

namespace hotspots::geometry {

/// Straight boundary piece from a to b.
struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Circular arc traversed from theta_start to theta_end (radians);
/// counterclockwise when theta_end > theta_start.
struct Arc {
  Vec2 center;
  double radius = 0.0;
  double theta_start = 0.0;
  double theta_end = 0.0;
};

using Curve = std::variant<Segment, Arc>;

Vec2 start_point(const Curve& c);
Vec2 end_point(const Curve& c);
/// Point at parameter t in [0, 1] (uniform in arc length).
Vec2 point_at(const Curve& c, double t);
/// Unit tangent in the direction of travel.
Vec2 tangent_at(const Curve& c, double t);
double length(const Curve& c);
/// Restriction of c to the parameter range [t0, t1] of the original.
Curve sub_curve(const Curve& c, double t0, double t1);
/// Copy of c traversed in the opposite direction.
Curve reversed(const Curve& c);

/// Closed boundary loop. Outer loops run counterclockwise, holes clockwise.
struct Chain {
  std::vector<Curve> pieces;
};

/// Signed area enclosed by the chain (positive when counterclockwise), exact
/// for arcs.
double signed_area(const Chain& chain);

/// Part of a boundary chain. Positions are `piece index + fraction`, so
/// [2, 3] is the whole of piece 2; `to < from` wraps around the chain.
/// Chain 0 is the outer boundary and chain k >= 1 is holes[k-1].
struct BoundaryArc {
  int chain = 0;
  double from = 0.0;
  double to = 0.0;
};

struct ClosedDisk {
  Vec2 center;
  double radius = 0.0;
};

struct InteriorSegment {
  Vec2 a;
  Vec2 b;
};

/// Whole piece `index` of the outer chain.
struct PolygonEdge {
  int index = 0;
};

using DirichletPiece = std::variant<BoundaryArc, ClosedDisk, InteriorSegment, PolygonEdge>;

/// Reflection in the line x = offset (axis 0) or y = offset (axis 1).
struct Mirror {
  int axis = 0;
  double offset = 0.0;
  Vec2 apply(Vec2 p) const { return axis == 0 ? Vec2{2.0 * offset - p.x, p.y} : Vec2{p.x, 2.0 * offset - p.y}; }
  bool fixes(Vec2 p) const { return (axis == 0 ? p.x : p.y) == offset; }
};

/// Declarative description of a domain and its Dirichlet region.
struct DomainSpec {
  std::string name;
  Chain outer;
  std::vector<Chain> holes;
  std::vector<DirichletPiece> dirichlet;
  /// Points the mesher must use as vertices (symmetry centres and the like).
  std::vector<Vec2> seeds;
  /// Axis-aligned reflections mapping Omega and D onto themselves. When set,
  /// `fundamental` holds the piece cut off by the mirror lines (the mirror
  /// lines are part of its boundary); the mesher meshes it once and reflects.
  std::vector<Mirror> mirrors;
  std::vector<DomainSpec> fundamental;
};

/// Throws GeometryError when an invariant of DomainSpec fails.
void validate(const DomainSpec& spec);

/// Chains of the domain in order: outer first, then holes.
std::vector<const Chain*> chains(const DomainSpec& spec);

/// Ray-crossing containment in the open region bounded by outer minus holes.
bool contains(const DomainSpec& spec, Vec2 p);
bool chain_contains(const Chain& chain, Vec2 p);

/// x -> rotation(angle) * x + shift.
struct RigidMotion {
  double angle = 0.0;
  Vec2 shift;

  Vec2 apply(Vec2 p) const;
};

DomainSpec transformed(const DomainSpec& spec, const RigidMotion& motion);

/// Boundary piece with its boundary condition.
struct TaggedCurve {
  Curve curve;
  int chain = 0;
  bool dirichlet = false;
};

/// Every chain split at the ends of Dirichlet boundary arcs and polygon
/// edges, in traversal order.
std::vector<TaggedCurve> tagged_boundary(const DomainSpec& spec);

/// Dirichlet pieces as plain curves (disk circles, interior segments and
/// boundary sub-arcs), useful for distances and plotting.
std::vector<Curve> dirichlet_curves(const DomainSpec& spec);

/// Distance from p to the boundary of Omega together with the Dirichlet set.
double distance_to_boundary_or_dirichlet(const DomainSpec& spec, Vec2 p);

/// Diameter of a sampled set made of points with radii: max |p-q| + r_p + r_q.
struct Blob {
  Vec2 center;
  double radius = 0.0;
};

struct GeometrySummary {
  double diameter = 0.0;            ///< d
  double area = 0.0;                ///< |Omega| (Dirichlet disks included)
  double free_area = 0.0;           ///< |Omega \ D|
  double projection_length = 0.0;   ///< l, projection onto the y-axis
  double quadrant_area = 0.0;       ///< A = |Omega ∩ {x, y >= 0}|
  bool miyamoto_placement = false;  ///< Omega in {y >= 0}, D in the closed second quadrant
  bool has_dirichlet = false;
  double dirichlet_diameter = 0.0;  ///< R1
  Vec2 dirichlet_center;            ///< D ⊂ B(dirichlet_center, R1)
  double omega_plus_area = 0.0;     ///< |Omega \ B(center, R1)|
  double r2 = 0.0;                  ///< sqrt(R1^2 + |Omega_+| / pi)
};

struct SummaryOptions {
  RigidMotion placement;
  /// Throw when the placed domain does not satisfy the Miyamoto placement.
  bool require_miyamoto = false;
  /// Boundary sampling step as a fraction of the diameter.
  double boundary_resolution = 1e-4;
};

GeometrySummary summarize(const DomainSpec& spec, const SummaryOptions& options = {});

struct ConvexityOptions {
  double tol = 1e-9;                 ///< relative to d
  double boundary_resolution = 1e-4; ///< fraction of d
  double interior_resolution = 1e-2; ///< fraction of d
};

struct ConvexityVerdict {
  bool pass = true;
  double worst = 0.0;  ///< min (y - x)·nu(y) / d over the samples
  Vec2 witness_boundary;
  Vec2 witness_interior;
};

ConvexityVerdict neumann_convexity_check(const DomainSpec& spec,
                                         const ConvexityOptions& options = {});

struct ConnectednessReport {
  int dirichlet_components = 0;
  bool dirichlet_connected = false;  ///< false for an empty D
};

ConnectednessReport connectedness_check(const DomainSpec& spec);

/// sqrt(|Omega|/pi) * exp(-(4 pi / j0^2) d^2 / |Omega|): a connected Dirichlet
/// set of at most this diameter rules out interior critical points on a
/// convex domain.
double epsilon_threshold(const GeometrySummary& summary);

/// Deterministic domain constructors by name. Supported names and parameters:
///   square2disks(eps)                 0 < eps < 1/2
///   triangle3disks(eps)               0 < eps < 1/(1 + 2/sqrt 3)
///   disk_arc(alpha)                   0 < alpha <= pi
///   regular_polygon_edge(n, frac)     n >= 3, 0 < frac <= 1
///   Pn_edge(n)                        side 1, D = the edge [-1/2, 1/2] x {0}
///   Kn(n)                             n >= 3, side 1, D = empty
///   wild(a[, x0, y0, x1, y1, ...])    a > 1, optional interior polyline of gamma
///   rectangle(A, l)                   D = left edge
///   annulus(R1, R2)                   D = inner circle
///   bulged_rectangle(s)               A = l = 1, right side bulged by sagitta s
///   square_disk(side, r, cx, cy)      square [0, side]^2, Dirichlet disk
///   square_segment(side, x0, y0, x1, y1)
///   disk_dirichlet(R) / disk_neumann(R) / square_neumann(side)
///   rectangle_neumann(w, h) / lshape()
DomainSpec make_example(std::string_view name, std::span<const double> params = {});

/// Names accepted by make_example.
std::vector<std::string> example_names();

// Helpers shared with other modules.

/// Points sampled along a curve with spacing at most `step`, including both
/// ends.
std::vector<Vec2> sample_curve(const Curve& c, double step);

/// Diameter of a set of points by rotating calipers on the convex hull.
double point_set_diameter(std::span<const Vec2> points);

/// Convex hull, counterclockwise, without collinear points.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Area of Omega (outer minus holes) inside the disk B(center, radius),
/// evaluated on a polygonization with chord spacing `step`.
double area_in_disk(const DomainSpec& spec, Vec2 center, double radius, double step);

/// Area of Omega ∩ {x >= 0}, exact for segments and arcs.
double area_right_half_plane(const DomainSpec& spec);

}  // namespace hotspots::geometry
