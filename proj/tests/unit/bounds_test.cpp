#include <gtest/gtest.h>

#include <cmath>

#include "hotspots/bounds.hpp"
#include "hotspots/geometry.hpp"

namespace b = hotspots::bounds;
namespace g = hotspots::geometry;

TEST(Bounds, Constants) {
  EXPECT_NEAR(b::j0(), 2.404825557695773, 1e-14);
  EXPECT_NEAR(b::miyamoto_ratio_limit(), 2 * 2.404825557695773 / M_PI, 1e-14);
  EXPECT_NEAR(b::miyamoto_ratio_limit(), 1.5310, 1e-4);
}

TEST(Bounds, AnnulusRootRegression) {
  EXPECT_NEAR(b::annulus_lambda1(std::exp(-2.0), 1.0), 1.4702541105282248, 1e-12);
  EXPECT_NEAR(b::annulus_lambda1(1e-3, 1.0), 0.32353104767914252, 1e-12);
  EXPECT_NEAR(b::annulus_lambda1(1e-4, 1.0), 0.23591094755412812, 1e-12);
}

TEST(Bounds, AnnulusBracket) {
  for (double r1 : {std::exp(-2.0), 1e-3, 1e-4}) {
    const double l = b::annulus_lambda1(r1, 1.0);
    EXPECT_LE(b::annulus_lower(r1, 1.0), l);
    EXPECT_LE(l, b::annulus_upper(r1, 1.0));
  }
  EXPECT_NEAR(b::annulus_upper(std::exp(-2.0), 1.0), 2.0, 1e-14);
  EXPECT_NEAR(b::annulus_lower(std::exp(-2.0), 1.0), 1.0, 1e-14);
}

TEST(Bounds, ScaleInvariance) {
  const double l1 = b::annulus_lambda1(0.1, 1.0);
  EXPECT_NEAR(b::annulus_lambda1(0.2, 2.0), l1 / 4.0, 1e-12);
}

TEST(Bounds, PolygonFormulas) {
  for (int n = 7; n <= 40; ++n) EXPECT_LT(b::regular_polygon_ratio(n), b::miyamoto_ratio_limit()) << n;
  EXPECT_GT(b::regular_polygon_ratio(4), b::miyamoto_ratio_limit());
  EXPECT_NEAR(b::pentagon_ratio(), 1.4472, 1e-4);
  const auto hex = b::hexagon_bound();
  EXPECT_NEAR(hex.bound, (M_PI * M_PI / 4) * (1.5 + 1 / M_PI) / (1.5 - 1 / M_PI), 1e-14);
  EXPECT_NEAR(hex.bound, 3.7967, 1e-4);
  EXPECT_NEAR(hex.threshold, 4.33739, 1e-5);
  EXPECT_TRUE(hex.holds);
}

TEST(Bounds, DiskArcThresholdAndWild) {
  EXPECT_NEAR(b::disk_arc_threshold(), 1.97652, 1e-5);
  EXPECT_NEAR(b::disk_arc_ratio(b::disk_arc_threshold()), b::miyamoto_ratio_limit(), 1e-12);
  EXPECT_LT(b::disk_arc_ratio(M_PI / 2), b::miyamoto_ratio_limit());
  EXPECT_EQ(b::wild_first_integer(), 4);
  EXPECT_GE(b::wild_ratio(3.0), b::miyamoto_ratio_limit());
}

TEST(Bounds, RectangleAttainsMiyamoto) {
  const auto s = g::summarize(g::make_example("rectangle", std::vector<double>{1.0, 1.0}));
  b::BoundInputs in;
  in.lambda1 = M_PI * M_PI / 4.0;
  const auto r = b::evaluate_bounds(s, in);
  ASSERT_TRUE(r.miyamoto_applicable);
  EXPECT_NEAR(r.miyamoto_bound, M_PI * M_PI / 4.0, 1e-12);
  EXPECT_EQ(r.find("miyamoto")->verdict, b::Verdict::Holds);
  EXPECT_EQ(r.find("kroger")->verdict, b::Verdict::NotApplicable);
}

TEST(Bounds, ViolationIsReported) {
  const auto s = g::summarize(g::make_example("Pn_edge", std::vector<double>{4.0}));
  b::BoundInputs in;
  in.lambda1 = 100.0;
  EXPECT_EQ(b::evaluate_bounds(s, in).find("hotspots")->verdict, b::Verdict::Violated);
}

TEST(Bounds, KrogerForNeumannDomains) {
  const auto s = g::summarize(g::make_example("square_neumann", std::vector<double>{1.0}));
  b::BoundInputs in;
  in.mu2 = M_PI * M_PI;
  const auto r = b::evaluate_bounds(s, in);
  EXPECT_NEAR(r.kroger_bound, 4.0 * std::pow(b::j0() / std::sqrt(2.0), 2), 1e-12);
  EXPECT_EQ(r.find("kroger")->verdict, b::Verdict::Holds);
}
