#include <gtest/gtest.h>

#include <cmath>

#include "hotspots/bessel.hpp"

namespace bessel = hotspots::bessel;

TEST(Bessel, MatchesStandardLibraryOnGrid) {
  for (double x = 0.05; x <= 50.0; x += 0.0731) {
    EXPECT_NEAR(bessel::j0(x), std::cyl_bessel_j(0.0, x), 1e-12) << x;
    EXPECT_NEAR(bessel::j1(x), std::cyl_bessel_j(1.0, x), 1e-12) << x;
    EXPECT_NEAR(bessel::y0(x), std::cyl_neumann(0.0, x), 1e-12) << x;
    EXPECT_NEAR(bessel::y1(x), std::cyl_neumann(1.0, x), 1e-12) << x;
  }
}

TEST(Bessel, SmallArgumentLimits) {
  EXPECT_DOUBLE_EQ(bessel::j0(0.0), 1.0);
  EXPECT_DOUBLE_EQ(bessel::j1(0.0), 0.0);
  // Y0(x) ~ (2/pi)(ln(x/2) + gamma)
  const double x = 1e-6;
  EXPECT_NEAR(bessel::y0(x), 2.0 / M_PI * (std::log(x / 2) + 0.5772156649015329), 1e-10);
}

TEST(Bessel, FirstZeroOfJ0) {
  EXPECT_NEAR(bessel::j0_first_zero(), 2.404825557695773, 1e-14);
  EXPECT_NEAR(bessel::j0(bessel::j0_first_zero()), 0.0, 1e-15);
}

TEST(Bessel, KindDispatch) {
  EXPECT_EQ(bessel::eval(bessel::Kind::Y1, 3.0), bessel::y1(3.0));
  EXPECT_EQ(bessel::eval(bessel::Kind::J0, 3.0), bessel::j0(3.0));
}
