#include <gtest/gtest.h>

#include <cmath>

#include "hotspots/domain_json.hpp"
#include "hotspots/error.hpp"
#include "hotspots/geometry.hpp"

namespace g = hotspots::geometry;
using hotspots::Vec2;

namespace {
g::DomainSpec ex(const char* name, std::vector<double> p = {}) { return g::make_example(name, p); }
}  // namespace

TEST(Geometry, UnitSquareSummary) {
  const auto s = g::summarize(ex("square_neumann", {1.0}));
  EXPECT_NEAR(s.area, 1.0, 1e-14);
  EXPECT_NEAR(s.diameter, std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(s.has_dirichlet);
}

TEST(Geometry, EpsilonThreshold) {
  EXPECT_NEAR(g::epsilon_threshold(g::summarize(ex("square_neumann", {1.0}))), 0.0073123204, 1e-10);
  EXPECT_NEAR(g::epsilon_threshold(g::summarize(ex("disk_neumann", {1.0}))), 0.0628728337, 1e-9);
}

TEST(Geometry, DiskAreaIsExact) {
  EXPECT_NEAR(g::summarize(ex("disk_dirichlet", {1.0})).area, M_PI, 1e-12);
}

TEST(Geometry, AnnulusSetupForCentredDisk) {
  const auto s = g::summarize(ex("square_disk", {2.0, 0.05, 1.0, 1.0}));
  EXPECT_TRUE(s.has_dirichlet);
  EXPECT_NEAR(s.dirichlet_diameter, 0.1, 1e-12);
  EXPECT_NEAR(s.dirichlet_center.x, 1.0, 1e-12);
  const double plus = 4.0 - M_PI * 0.01;
  EXPECT_NEAR(s.omega_plus_area, plus, 1e-6);
  EXPECT_NEAR(s.r2, std::sqrt(0.01 + plus / M_PI), 1e-6);
}

TEST(Geometry, MiyamotoQuantitiesOfRectangle) {
  const auto s = g::summarize(ex("rectangle", {1.0, 1.0}));
  EXPECT_TRUE(s.miyamoto_placement);
  EXPECT_NEAR(s.projection_length, 1.0, 1e-12);
  EXPECT_NEAR(s.quadrant_area, 1.0, 1e-12);
}

TEST(Geometry, Containment) {
  const auto s = ex("annulus", {0.5, 1.0});
  EXPECT_TRUE(g::contains(s, {0.75, 0.0}));
  EXPECT_FALSE(g::contains(s, {1.2, 0.0}));
  EXPECT_TRUE(g::contains(ex("square_neumann", {1.0}), {0.5, 0.5}));
}

TEST(Geometry, RejectsSelfIntersectingBoundary) {
  g::DomainSpec bow;
  bow.name = "bow";
  bow.outer.pieces = {g::Segment{{0, 0}, {1, 1}}, g::Segment{{1, 1}, {1, 0}}, g::Segment{{1, 0}, {0, 1}},
                      g::Segment{{0, 1}, {0, 0}}};
  EXPECT_THROW(g::validate(bow), hotspots::GeometryError);
}

TEST(Geometry, RejectsBadExampleParameters) {
  EXPECT_THROW(ex("annulus", {1.0, 0.5}), hotspots::GeometryError);
  EXPECT_THROW(ex("no_such_domain"), hotspots::GeometryError);
  EXPECT_THROW(ex("disk_arc", {4.0}), hotspots::GeometryError);
}

TEST(Geometry, ConvexityCheck) {
  EXPECT_TRUE(g::neumann_convexity_check(ex("square_neumann", {1.0})).pass);
  EXPECT_FALSE(g::neumann_convexity_check(ex("lshape")).pass);
}

TEST(Geometry, DirichletComponents) {
  EXPECT_EQ(g::connectedness_check(ex("square2disks", {0.1})).dirichlet_components, 2);
  EXPECT_TRUE(g::connectedness_check(ex("Pn_edge", {5.0})).dirichlet_connected);
}

TEST(Geometry, JsonRoundTrip) {
  const std::vector<std::pair<const char*, std::vector<double>>> cases{
      {"wild", {4.0}}, {"square2disks", {0.1}}, {"annulus", {0.2, 1.0}}, {"disk_arc", {1.9}}, {"square_segment", {1, 0.2, 0.5, 0.4, 0.5}}};
  for (const auto& [name, p] : cases) {
    const auto doc = g::domain_to_json(ex(name, p));
    EXPECT_EQ(g::domain_to_json(g::domain_from_json(doc)).dump(), doc.dump()) << name;
  }
}

TEST(Geometry, JsonErrorsAreGeometryErrors) {
  EXPECT_THROW(g::domain_from_json(nlohmann::json::parse(R"({"outer": 3})")), hotspots::GeometryError);
  EXPECT_THROW(g::domain_from_json(nlohmann::json::array()), hotspots::GeometryError);
}

TEST(Geometry, MirroredExampleIsConsistent) {
  const auto s = ex("square2disks", {0.1});
  ASSERT_EQ(s.mirrors.size(), 2u);
  ASSERT_EQ(s.fundamental.size(), 1u);
  EXPECT_NEAR(g::summarize(s.fundamental[0]).area * 4.0, g::summarize(s).free_area, 1e-9);
}

TEST(Geometry, PointSetDiameter) {
  const std::vector<Vec2> pts{{0, 0}, {3, 0}, {0, 4}, {1, 1}};
  EXPECT_DOUBLE_EQ(g::point_set_diameter(pts), 5.0);
}
