#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hotspots/error.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/locator.hpp"
#include "hotspots/mesh.hpp"

namespace g = hotspots::geometry;
namespace m = hotspots::mesh;
using hotspots::Vec2;

namespace {
m::Mesh build(const char* name, std::vector<double> p, double h) {
  m::MeshOptions o;
  o.h = h;
  return m::triangulate(g::make_example(name, p), o);
}
}  // namespace

TEST(Mesh, SquareAreaAndQuality) {
  const auto mesh = build("square_neumann", {1.0}, 0.1);
  EXPECT_NEAR(m::total_area(mesh), 1.0, 1e-12);
  EXPECT_GE(m::min_angle_deg(mesh), 20.0);
  EXPECT_EQ(m::connectivity(mesh), 1);
  for (const auto& t : mesh.triangles) {
    EXPECT_GT(hotspots::orient(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]), 0.0);
  }
}

TEST(Mesh, RefinementKeepsAreaAndLineage) {
  const auto coarse = build("rectangle", {1.0, 1.0}, 0.2);
  const auto fine = m::refine(coarse);
  EXPECT_EQ(fine.triangles.size(), 4 * coarse.triangles.size());
  EXPECT_NEAR(m::total_area(fine), m::total_area(coarse), 1e-12);
  EXPECT_DOUBLE_EQ(fine.h, 0.5 * coarse.h);
  for (std::size_t v = 0; v < fine.vertices.size(); ++v) {
    const auto [a, b] = fine.lineage[v];
    const Vec2 mid = 0.5 * (coarse.vertices[a] + coarse.vertices[b]);
    EXPECT_NEAR(hotspots::distance(mid, fine.vertices[v]), 0.0, 1e-14);
  }
}

TEST(Mesh, CurvedBoundarySnapsToCircle) {
  auto mesh = m::refine(build("disk_dirichlet", {1.0}, 0.3));
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (mesh.boundary[v]) EXPECT_NEAR(hotspots::norm(mesh.vertices[v]), 1.0, 1e-14);
    if (mesh.boundary[v]) EXPECT_TRUE(mesh.dirichlet[v]);
  }
}

TEST(Mesh, DirichletTagsFollowPieces) {
  const auto mesh = build("rectangle", {1.0, 1.0}, 0.2);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    EXPECT_EQ(static_cast<bool>(mesh.dirichlet[v]), mesh.vertices[v].x == 0.0) << v;
  }
}

TEST(Mesh, GradingRefinesNearSmallDirichletSet) {
  const auto mesh = build("square_disk", {1.0, 0.01, 0.5, 0.5}, 0.1);
  double shortest = 1.0;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag == m::Tag::Dirichlet) {
      shortest = std::min(shortest, hotspots::distance(mesh.vertices[e.v[0]], mesh.vertices[e.v[1]]));
    }
  }
  EXPECT_LT(shortest, 0.01);
  EXPECT_EQ(m::connectivity(mesh), 1);
}

TEST(Mesh, MirroredMeshIsSymmetric) {
  const auto mesh = build("square2disks", {0.1}, 0.1);
  std::set<std::pair<double, double>> pts;
  for (const auto& p : mesh.vertices) pts.insert({p.x, p.y});
  EXPECT_EQ(pts.size(), mesh.vertices.size());
  for (const auto& p : mesh.vertices) {
    EXPECT_TRUE(pts.count({-p.x, p.y}) && pts.count({p.x, -p.y})) << p.x << ' ' << p.y;
  }
  EXPECT_TRUE(pts.count({0.0, 0.0}));
  EXPECT_NEAR(m::total_area(mesh), 4.0 - 2.0 * M_PI * 0.0025, 1e-3);
  EXPECT_EQ(m::connectivity(mesh), 1);
  for (const auto& e : mesh.boundary_edges) {
    const Vec2 mid = 0.5 * (mesh.vertices[e.v[0]] + mesh.vertices[e.v[1]]);
    EXPECT_FALSE(std::fabs(mid.x) < 1e-14 && std::fabs(mid.y) < 0.99);
  }
}

TEST(Mesh, SlitIsKeptAsConstrainedEdges) {
  const auto mesh = build("square_segment", {1.0, 0.3, 0.5, 0.7, 0.5}, 0.1);
  EXPECT_FALSE(mesh.constrained_edges.empty());
  EXPECT_EQ(m::connectivity(mesh), 2 - 1);
}

TEST(Mesh, RejectsBadSize) {
  m::MeshOptions o;
  o.h = -1.0;
  EXPECT_THROW(m::triangulate(g::make_example("square_neumann", std::vector<double>{1.0}), o), hotspots::MeshError);
}

TEST(Mesh, LocatorInterpolatesLinearFields) {
  const auto mesh = build("disk_neumann", {1.0}, 0.2);
  Eigen::VectorXd f(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) f(v) = 2.0 * mesh.vertices[v].x - mesh.vertices[v].y;
  const m::Locator loc(mesh);
  for (Vec2 p : {Vec2{0.1, 0.2}, Vec2{-0.5, 0.3}, Vec2{0.0, -0.7}}) {
    const auto val = loc.interpolate(f, p);
    ASSERT_TRUE(val.has_value());
    EXPECT_NEAR(*val, 2.0 * p.x - p.y, 1e-12);
  }
  EXPECT_FALSE(loc.interpolate(f, {3.0, 0.0}).has_value());
}
