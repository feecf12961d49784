#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "hotspots/mesh.hpp"

namespace hotspots::fem {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// P1 stiffness and mass matrices with the Dirichlet node flags of the mesh.
struct System {
  SparseMatrix stiffness;
  SparseMatrix mass;
  std::vector<std::uint8_t> dirichlet;
};

/// Assembles over triangles; `threads` > 1 splits the triangle range into
/// chunks whose contributions are concatenated in order, so the result does
/// not depend on the thread count.
System assemble(const mesh::Mesh& mesh, int threads = 1);

struct EigenSolution {
  std::vector<double> eigenvalues;         ///< ascending
  std::vector<Eigen::VectorXd> fields;     ///< nodal values, unit L2 norm, 0 on D
  std::vector<double> est_error;           ///< absolute, filled by extrapolation
  std::vector<double> residuals;           ///< ||K x - lambda M x||_{M^-1} / ||x||_M
  /// Residual attainable in double precision for the field; convergence is
  /// accepted below it once the residual stops decreasing.
  std::vector<double> residual_floor;
  std::shared_ptr<const mesh::Mesh> mesh;
  int iterations = 0;
  double shift = 0.0;
};

struct SolveOptions {
  int count = 1;
  /// Residual target relative to max(1, lambda).
  double tol = 1e-10;
  int max_iterations = 400;
  int extra_vectors = 4;
};

/// Lowest eigenpairs of K x = lambda M x restricted to non-Dirichlet nodes,
/// by block shift-invert subspace iteration with Rayleigh-Ritz. The shift is
/// 0 with Dirichlet nodes and -1/|Omega| for the pure Neumann problem.
EigenSolution solve_lowest(const System& system, std::shared_ptr<const mesh::Mesh> mesh,
                           const SolveOptions& options = {});

struct Extrapolation {
  std::vector<double> value;      ///< (4 lambda_fine - lambda_coarse) / 3
  std::vector<double> est_error;  ///< |lambda_fine - lambda_coarse| / 3
  std::vector<double> rel_error;  ///< est_error / max(|value|, tiny)
  std::vector<bool> monotone;     ///< lambda_fine <= lambda_coarse (conforming P1 decreases)
};

/// Richardson extrapolation of two consecutive red-refinement levels.
Extrapolation extrapolate(const EigenSolution& coarse, const EigenSolution& fine);

struct TestFunction {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
};

/// Integral of |grad f|^2 and f^2 over the exact domain: 7-point rule per
/// triangle plus the caps between curved boundary edges and their chords.
struct QuotientParts {
  double numerator = 0.0;
  double denominator = 0.0;
  double value() const { return numerator / denominator; }
};

QuotientParts rayleigh_parts(const mesh::Mesh& mesh, const TestFunction& f);

/// numerator / denominator; throws FemError when f is identically zero or
/// does not vanish on Dirichlet nodes (tolerance 1e-8 max|f|).
double rayleigh_quotient(const mesh::Mesh& mesh, const TestFunction& f);

/// x^T K x / x^T M x for a nodal field.
double rayleigh_quotient(const System& system, const Eigen::VectorXd& field);

}  // namespace hotspots::fem
