#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hotspots/error.hpp"
#include "hotspots/fem.hpp"

namespace hotspots::fem {

namespace {

SparseMatrix restrict_to(const SparseMatrix& a, const std::vector<int>& index, int nfree) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(a.nonZeros());
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      const int r = index[it.row()], c = index[it.col()];
      if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix out(nfree, nfree);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

EigenSolution solve_lowest(const System& system, std::shared_ptr<const mesh::Mesh> mesh,
                           const SolveOptions& options) {
  const int n = static_cast<int>(system.stiffness.rows());
  std::vector<int> index(n, -1), free_nodes;
  for (int i = 0; i < n; ++i) {
    if (!system.dirichlet[i]) {
      index[i] = static_cast<int>(free_nodes.size());
      free_nodes.push_back(i);
    }
  }
  const int nf = static_cast<int>(free_nodes.size());
  if (options.count < 1) throw FemError("eigenpair count must be positive");
  const int block = std::min(nf, options.count + std::max(0, options.extra_vectors));
  if (block < options.count) throw FemError("not enough free nodes for the requested eigenpairs");

  const SparseMatrix k = restrict_to(system.stiffness, index, nf);
  const SparseMatrix m = restrict_to(system.mass, index, nf);
  double shift = 0.0;
  if (nf == n) {
    const double area = Eigen::VectorXd::Ones(n).dot(m * Eigen::VectorXd::Ones(n));
    shift = -1.0 / area;
  }
  Eigen::SimplicialLDLT<SparseMatrix> op(SparseMatrix(k - shift * m));
  if (op.info() != Eigen::Success) throw FemError("factorization of the shifted operator failed");
  Eigen::SimplicialLDLT<SparseMatrix> mfac(m);
  if (mfac.info() != Eigen::Success) throw FemError("factorization of the mass matrix failed");

  Eigen::MatrixXd x(nf, block);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  x.col(0).setOnes();
  for (int j = 1; j < block; ++j) {
    for (int i = 0; i < nf; ++i) x(i, j) = uni(rng);
  }

  // Rounding of x alone leaves a residual of about eps * sqrt(sum (K_ii x_i)^2 / M_ii);
  // on strongly graded meshes this exceeds the requested tolerance.
  Eigen::VectorXd kdiag = k.diagonal(), mdiag = m.diagonal();
  auto floor_of = [&](const Eigen::VectorXd& xc, double xn) {
    double acc = 0.0;
    for (int i = 0; i < nf; ++i) acc += (kdiag(i) * xc(i)) * (kdiag(i) * xc(i)) / mdiag(i);
    return 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(acc) / xn;
  };

  Eigen::VectorXd lambda;
  Eigen::MatrixXd kx, mx;
  std::vector<double> res(options.count, 0.0), prev(options.count, 0.0), floors(options.count, 0.0);
  int iter = 0;
  bool done = false;
  while (!done) {
    if (iter >= options.max_iterations) {
      throw FemError("eigensolver did not converge in " + std::to_string(options.max_iterations) +
                     " iterations");
    }
    ++iter;
    Eigen::MatrixXd y = op.solve(m * x);
    kx = k * y;
    mx = m * y;
    Eigen::MatrixXd kr = y.transpose() * kx;
    Eigen::MatrixXd mr = y.transpose() * mx;
    kr = 0.5 * (kr + kr.transpose());
    mr = 0.5 * (mr + mr.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(kr, mr);
    if (ritz.info() != Eigen::Success) throw FemError("Rayleigh-Ritz step failed");
    lambda = ritz.eigenvalues();
    const Eigen::MatrixXd& v = ritz.eigenvectors();
    x = y * v;
    kx = kx * v;
    mx = mx * v;
    done = true;
    for (int j = 0; j < options.count; ++j) {
      const Eigen::VectorXd r = kx.col(j) - lambda(j) * mx.col(j);
      const double rn = std::sqrt(std::max(0.0, r.dot(mfac.solve(r))));
      const double xn = std::sqrt(std::max(0.0, x.col(j).dot(mx.col(j))));
      prev[j] = res[j];
      res[j] = rn / xn;
      floors[j] = floor_of(x.col(j), xn);
      const bool small = res[j] <= options.tol * std::max(1.0, std::fabs(lambda(j)));
      const bool stalled = iter > 2 && res[j] <= floors[j] && res[j] > 0.5 * prev[j];
      if (!(small || stalled)) done = false;
    }
  }

  EigenSolution out;
  out.mesh = std::move(mesh);
  out.iterations = iter;
  out.shift = shift;
  out.residuals = res;
  out.residual_floor = floors;
  for (int j = 0; j < options.count; ++j) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    const double xn = std::sqrt(x.col(j).dot(mx.col(j)));
    for (int i = 0; i < nf; ++i) f(free_nodes[i]) = x(i, j) / xn;
    if (j == 0) {
      if (f.sum() < 0.0) f = -f;
    } else {
      Eigen::Index imax = 0;
      f.cwiseAbs().maxCoeff(&imax);
      if (f(imax) < 0.0) f = -f;
    }
    out.eigenvalues.push_back(lambda(j));
    out.fields.push_back(std::move(f));
  }
  return out;
}

Extrapolation extrapolate(const EigenSolution& coarse, const EigenSolution& fine) {
  Extrapolation e;
  const std::size_t n = std::min(coarse.eigenvalues.size(), fine.eigenvalues.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double lc = coarse.eigenvalues[i], lf = fine.eigenvalues[i];
    const double v = (4.0 * lf - lc) / 3.0;
    const double err = std::fabs(lf - lc) / 3.0;
    e.value.push_back(v);
    e.est_error.push_back(err);
    e.rel_error.push_back(err / std::max(std::fabs(v), 1e-300));
    e.monotone.push_back(lf <= lc * (1.0 + 1e-12) + 1e-14);
  }
  return e;
}

}  // namespace hotspots::fem
