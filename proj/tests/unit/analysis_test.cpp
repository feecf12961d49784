#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "hotspots/analysis.hpp"
#include "hotspots/error.hpp"
#include "hotspots/fem.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/mesh.hpp"

namespace g = hotspots::geometry;
namespace m = hotspots::mesh;
namespace fem = hotspots::fem;
namespace an = hotspots::analysis;
using hotspots::Vec2;

namespace {

std::vector<fem::EigenSolution> levels(const g::DomainSpec& spec, double h, int count, int n = 3) {
  m::MeshOptions o;
  o.h = h;
  auto mesh = m::triangulate(spec, o);
  fem::SolveOptions so;
  so.count = count;
  std::vector<fem::EigenSolution> out;
  for (int l = 0; l < n; ++l) {
    if (l) mesh = m::refine(mesh);
    auto shared = std::make_shared<const m::Mesh>(mesh);
    out.push_back(fem::solve_lowest(fem::assemble(*shared), shared, so));
  }
  const auto ex = fem::extrapolate(out[n - 2], out[n - 1]);
  out.back().est_error = ex.est_error;
  return out;
}

Eigen::VectorXd sample(const m::Mesh& mesh, double (*f)(Vec2)) {
  Eigen::VectorXd v(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) v(i) = f(mesh.vertices[i]);
  return v;
}

m::Mesh square(double h) {
  m::MeshOptions o;
  o.h = h;
  return m::triangulate(g::make_example("square_neumann", std::vector<double>{1.0}), o);
}

}  // namespace

TEST(Analysis, RecoveredGradientIsExactForLinearFields) {
  const auto mesh = square(0.1);
  const auto grad = an::recover_gradient(mesh, sample(mesh, [](Vec2 p) { return 3.0 * p.x - 2.0 * p.y + 1.0; }));
  for (const auto& gr : grad) {
    EXPECT_NEAR(gr.x, 3.0, 1e-10);
    EXPECT_NEAR(gr.y, -2.0, 1e-10);
  }
}

TEST(Analysis, RingsGrowOutward) {
  const auto mesh = square(0.2);
  const auto adj = an::vertex_neighbors(mesh);
  const auto r1 = an::ring(adj, 0, 1);
  const auto r2 = an::ring(adj, 0, 2);
  EXPECT_EQ(r1.size(), adj[0].size());
  EXPECT_GT(r2.size(), r1.size());
}

TEST(Analysis, NodalSetOfLinearField) {
  const auto mesh = square(0.1);
  const auto ns = an::nodal_set(mesh, sample(mesh, [](Vec2 p) { return p.x - 0.4321; }));
  EXPECT_EQ(ns.positive_domains, 1);
  EXPECT_EQ(ns.negative_domains, 1);
  ASSERT_EQ(ns.polylines.size(), 1u);
  for (const auto& p : ns.polylines[0]) EXPECT_NEAR(p.x, 0.4321, 1e-12);
}

TEST(Analysis, NodalSetNeedsSignChange) {
  const auto mesh = square(0.2);
  EXPECT_THROW(an::nodal_set(mesh, sample(mesh, [](Vec2) { return 1.0; })), hotspots::AnalysisError);
}

TEST(Analysis, SymmetryParity) {
  const auto mesh = square(0.1);
  const auto sigma = an::Isometry::reflection({0.5, 0.5}, {0.0, 1.0});
  EXPECT_EQ(an::symmetry_check(mesh, sample(mesh, [](Vec2 p) { return p.x - 0.5; }), sigma).parity, an::Parity::Odd);
  // Interpolation error on a non-symmetric mesh is O(h^2).
  EXPECT_EQ(an::symmetry_check(mesh, sample(mesh, [](Vec2 p) { return std::cos(M_PI * p.x); }), sigma, 5e-2).parity,
            an::Parity::Odd);
  EXPECT_EQ(an::symmetry_check(mesh, sample(mesh, [](Vec2 p) { return p.y; }), sigma).parity, an::Parity::Even);
  EXPECT_EQ(an::symmetry_check(mesh, sample(mesh, [](Vec2 p) { return p.x + p.y; }), sigma).parity,
            an::Parity::Neither);
}

TEST(Analysis, IsometryMaps) {
  const auto r = an::Isometry::rotation({1.0, 0.0}, M_PI / 2);
  const Vec2 q = r.apply({2.0, 0.0});
  EXPECT_NEAR(q.x, 1.0, 1e-15);
  EXPECT_NEAR(q.y, 1.0, 1e-15);
  const auto s = an::Isometry::reflection({0.0, 0.0}, {1.0, 1.0});
  const Vec2 w = s.apply({1.0, 0.0});
  EXPECT_NEAR(w.x, 0.0, 1e-15);
  EXPECT_NEAR(w.y, 1.0, 1e-15);
}

TEST(Analysis, RectangleHasNoInteriorCriticalPoints) {
  const auto spec = g::make_example("rectangle", std::vector<double>{1.0, 1.0});
  const auto sols = levels(spec, 0.1, 1);
  const auto rep = an::find_critical_points(spec, sols);
  EXPECT_EQ(rep.verdict, an::CriticalVerdict::NoInteriorCriticalPoints);
  EXPECT_NEAR(rep.delta, 2.0 * 0.025, 1e-12);
}

TEST(Analysis, SymmetricSaddleIsFoundAndClassified) {
  const auto spec = g::make_example("square2disks", std::vector<double>{0.1});
  const auto sols = levels(spec, 0.08, 1);
  const auto rep = an::find_critical_points(spec, sols);
  ASSERT_EQ(rep.verdict, an::CriticalVerdict::CriticalPointsFound);
  const auto& c = rep.candidates.front();
  EXPECT_LT(hotspots::norm(c.location), 1e-12);
  EXPECT_EQ(c.classification, an::Extremum::SaddleLike);
  const auto cmp = an::comparison_field(sols.back(), {0.0, 0.0});
  EXPECT_GE(cmp.sign_components, 4);
}

TEST(Analysis, NodalHypothesisOnRectangle) {
  const auto spec = g::make_example("rectangle_neumann", std::vector<double>{1.0, 0.8});
  const auto rep = an::nodal_domain_report(spec, levels(spec, 0.1, 3, 2));
  EXPECT_EQ(rep.hypothesis, an::NodalHypothesis::False);
  EXPECT_EQ(rep.domains, 2);
  EXPECT_NEAR(rep.diameter_plus, std::sqrt(0.25 + 0.64), 1e-3);
  EXPECT_NEAR(rep.mu2, M_PI * M_PI, 1e-3 * M_PI * M_PI);
}

TEST(Analysis, NodalHypothesisFlagsDoubleEigenvalue) {
  const auto spec = g::make_example("square_neumann", std::vector<double>{1.0});
  EXPECT_EQ(an::nodal_domain_report(spec, levels(spec, 0.1, 3, 2)).hypothesis, an::NodalHypothesis::Degenerate);
}
