#include "hotspots/bessel.hpp"

#include <cmath>
#include <numbers>

#include "hotspots/error.hpp"

namespace hotspots::bessel {
namespace {

using Real = long double;

constexpr Real kPi = 3.141592653589793238462643383279502884L;
constexpr Real kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr double kSeriesLimit = 17.0;

struct SeriesPair {
  Real first;   // J
  Real second;  // Y
};

// Ascending series for order 0. The alternating terms peak near k = x/2; at
// x = 17 the largest is ~4e5, which extended precision absorbs.
SeriesPair series_order0(Real x, bool want_y) {
  const Real q = x * x / 4;
  Real term = 1;  // q^k / (k!)^2 with sign
  Real j = 1;
  Real ysum = 0;
  Real harmonic = 0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (Real(k) * Real(k));
    harmonic += Real(1) / k;
    j += term;
    ysum -= harmonic * term;  // (-1)^{k+1} H_k q^k/(k!)^2
    if (std::fabs(term) * (1 + harmonic) < 1e-22L * (1 + std::fabs(j))) break;
  }
  Real y = 0;
  if (want_y) {
    y = (2 / kPi) * ((std::log(x / 2) + kEulerGamma) * j + ysum);
  }
  return {j, y};
}

SeriesPair series_order1(Real x, bool want_y) {
  const Real q = x * x / 4;
  Real term = 1;  // (-1)^k q^k / (k! (k+1)!)
  Real sum_j = 1;
  Real h_k = 0;    // H_k
  Real h_k1 = 1;   // H_{k+1}
  Real sum_y = (h_k + h_k1 - 2 * kEulerGamma) * term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (Real(k) * Real(k + 1));
    h_k += Real(1) / k;
    h_k1 += Real(1) / (k + 1);
    sum_j += term;
    sum_y += (h_k + h_k1 - 2 * kEulerGamma) * term;
    if (std::fabs(term) * (1 + h_k1) < 1e-22L * (1 + std::fabs(sum_j))) break;
  }
  const Real j = (x / 2) * sum_j;
  Real y = 0;
  if (want_y) {
    y = -2 / (kPi * x) + (2 / kPi) * std::log(x / 2) * j - (x / 2) * sum_y / kPi;
  }
  return {j, y};
}

// Hankel expansion, truncated at the smallest term.
SeriesPair hankel(int order, Real x) {
  const Real mu = 4.0L * order * order;
  Real p = 0;
  Real q = 0;
  Real a = 1;  // a_k / x^k
  Real last = INFINITY;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const Real odd = 2 * k - 1;
      a *= (mu - odd * odd) / (Real(k) * 8 * x);
    }
    const Real mag = std::fabs(a);
    if (mag > last) break;
    last = mag;
    const int half = k / 2;
    const Real sign = (half % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sign * a;
    } else {
      q += sign * a;
    }
    if (mag < 1e-21L) break;
  }
  const Real chi = x - (Real(order) / 2 + Real(0.25)) * kPi;
  const Real scale = std::sqrt(2 / (kPi * x));
  return {scale * (p * std::cos(chi) - q * std::sin(chi)),
          scale * (p * std::sin(chi) + q * std::cos(chi))};
}

}  // namespace

double eval(Kind kind, double x) {
  const bool is_y = kind == Kind::Y0 || kind == Kind::Y1;
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw BoundsError("bessel: argument must be finite and non-negative");
  }
  if (is_y && x == 0.0) {
    throw BoundsError("bessel: Y0/Y1 are singular at x = 0");
  }
  const int order = (kind == Kind::J0 || kind == Kind::Y0) ? 0 : 1;
  SeriesPair value{};
  if (x <= kSeriesLimit) {
    value = order == 0 ? series_order0(x, is_y) : series_order1(x, is_y);
  } else {
    value = hankel(order, x);
  }
  return static_cast<double>(is_y ? value.second : value.first);
}

double j0(double x) { return eval(Kind::J0, x); }
double y0(double x) { return eval(Kind::Y0, x); }
double j1(double x) { return eval(Kind::J1, x); }
double y1(double x) { return eval(Kind::Y1, x); }

double j0_first_zero() {
  // J0' = -J1, so Newton reads x <- x + J0/J1.
  double x = 2.4;
  for (int it = 0; it < 50; ++it) {
    const double step = j0(x) / j1(x);
    x += step;
    if (std::fabs(step) < 1e-16 * x) break;
  }
  return x;
}

}  // namespace hotspots::bessel
