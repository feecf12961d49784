#pragma once

namespace hotspots::bessel {

enum class Kind { J0, Y0, J1, Y1 };

/// Bessel functions of order 0 and 1 for real x >= 0 (x > 0 for Y).
///
/// Ascending series evaluated in extended precision for x <= 17 and the
/// Hankel asymptotic expansion beyond. Absolute error is below 1e-13 and
/// relative error below 1e-12 away from zeros on (0, 50].
double eval(Kind kind, double x);

double j0(double x);
double y0(double x);
double j1(double x);
double y1(double x);

/// First positive zero of J0, Newton-refined from 2.4.
double j0_first_zero();

}  // namespace hotspots::bessel
