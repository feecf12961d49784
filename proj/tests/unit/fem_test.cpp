#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "hotspots/bessel.hpp"
#include "hotspots/error.hpp"
#include "hotspots/fem.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/mesh.hpp"

namespace g = hotspots::geometry;
namespace m = hotspots::mesh;
namespace fem = hotspots::fem;
using hotspots::Vec2;

namespace {
std::shared_ptr<const m::Mesh> build(const char* name, std::vector<double> p, double h, int refinements = 0) {
  m::MeshOptions o;
  o.h = h;
  auto mesh = m::triangulate(g::make_example(name, p), o);
  for (int i = 0; i < refinements; ++i) mesh = m::refine(mesh);
  return std::make_shared<const m::Mesh>(std::move(mesh));
}
}  // namespace

TEST(Fem, MassSumsToAreaAndStiffnessKillsConstants) {
  const auto mesh = build("lshape", {}, 0.2);
  const auto s = fem::assemble(*mesh);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(mesh->vertices.size());
  EXPECT_NEAR(one.dot(s.mass * one), 3.0, 1e-12);
  EXPECT_NEAR((s.stiffness * one).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Fem, ThreadCountDoesNotChangeMatrices) {
  const auto mesh = build("disk_arc", {1.9}, 0.1);
  const auto a = fem::assemble(*mesh, 1);
  const auto b = fem::assemble(*mesh, 4);
  EXPECT_EQ((Eigen::MatrixXd(a.stiffness) - Eigen::MatrixXd(b.stiffness)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((Eigen::MatrixXd(a.mass) - Eigen::MatrixXd(b.mass)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Fem, QuotientQuadratureIsExactOnTheDisk) {
  const auto mesh = build("disk_dirichlet", {1.0}, 0.3);
  fem::TestFunction f{[](Vec2 p) { return 1.0 - hotspots::norm2(p); }, [](Vec2 p) { return -2.0 * p; }};
  const auto parts = fem::rayleigh_parts(*mesh, f);
  EXPECT_NEAR(parts.numerator, 2.0 * M_PI, 1e-10);
  EXPECT_NEAR(parts.denominator, M_PI / 3.0, 1e-10);
  EXPECT_NEAR(fem::rayleigh_quotient(*mesh, f), 6.0, 1e-10);
}

TEST(Fem, QuotientRejectsNonAdmissibleFunctions) {
  const auto mesh = build("disk_dirichlet", {1.0}, 0.3);
  fem::TestFunction f{[](Vec2) { return 1.0; }, [](Vec2) { return Vec2{}; }};
  EXPECT_THROW(fem::rayleigh_quotient(*mesh, f), hotspots::FemError);
}

TEST(Fem, DiskDirichletEigenvalue) {
  const auto coarse = build("disk_dirichlet", {1.0}, 0.1);
  const auto fine = std::make_shared<const m::Mesh>(m::refine(*coarse));
  const auto a = fem::solve_lowest(fem::assemble(*coarse), coarse);
  const auto b = fem::solve_lowest(fem::assemble(*fine), fine);
  const double j0 = hotspots::bessel::j0_first_zero();
  EXPECT_GT(a.eigenvalues[0], b.eigenvalues[0]);
  EXPECT_GT(b.eigenvalues[0], j0 * j0);
  const auto ex = fem::extrapolate(a, b);
  EXPECT_NEAR(ex.value[0], j0 * j0, 1e-3 * j0 * j0);
  EXPECT_TRUE(ex.monotone[0]);
  EXPECT_LT(b.residuals[0], 1e-8);
}

TEST(Fem, EigenfieldsAreMassNormalisedAndVanishOnD) {
  const auto mesh = build("rectangle", {1.0, 1.0}, 0.1);
  const auto sys = fem::assemble(*mesh);
  fem::SolveOptions o;
  o.count = 2;
  const auto s = fem::solve_lowest(sys, mesh, o);
  for (int k = 0; k < 2; ++k) {
    const auto& u = s.fields[k];
    EXPECT_NEAR(u.dot(sys.mass * u), 1.0, 1e-10);
    for (std::size_t v = 0; v < mesh->vertices.size(); ++v) {
      if (mesh->dirichlet[v]) EXPECT_EQ(u(v), 0.0);
    }
    EXPECT_NEAR(fem::rayleigh_quotient(sys, u), s.eigenvalues[k], 1e-9 * s.eigenvalues[k]);
  }
  EXPECT_NEAR(s.fields[0].dot(sys.mass * s.fields[1]), 0.0, 1e-9);
  EXPECT_GT(s.fields[0].sum(), 0.0);
}

TEST(Fem, NeumannSquareSpectrum) {
  const auto mesh = build("square_neumann", {1.0}, 0.05);
  fem::SolveOptions o;
  o.count = 3;
  const auto s = fem::solve_lowest(fem::assemble(*mesh), mesh, o);
  EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-9);
  EXPECT_NEAR(s.eigenvalues[1], M_PI * M_PI, 0.02 * M_PI * M_PI);
  EXPECT_NEAR(s.eigenvalues[2], s.eigenvalues[1], 1e-3 * s.eigenvalues[1]);
}

TEST(Fem, ExtrapolationFormula) {
  fem::EigenSolution c, f;
  c.eigenvalues = {10.0};
  f.eigenvalues = {9.4};
  const auto ex = fem::extrapolate(c, f);
  EXPECT_NEAR(ex.value[0], 9.2, 1e-14);
  EXPECT_NEAR(ex.est_error[0], 0.2, 1e-14);
  EXPECT_TRUE(ex.monotone[0]);
}
