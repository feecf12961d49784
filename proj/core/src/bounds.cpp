#include "hotspots/bounds.hpp"

#include <cmath>
#include <numbers>

#include "hotspots/bessel.hpp"
#include "hotspots/error.hpp"

namespace hotspots::bounds {

using std::numbers::pi;

double j0() {
  static const double value = bessel::j0_first_zero();
  return value;
}

double miyamoto_ratio_limit() { return 2.0 * j0() / pi; }

namespace {

// Cross product whose zeros in k are the radial eigenvalues, and its k-derivative.
double cross_product(double k, double r1, double r2) {
  return bessel::y0(k * r1) * bessel::j1(k * r2) - bessel::j0(k * r1) * bessel::y1(k * r2);
}

double cross_derivative(double k, double r1, double r2) {
  const double a = k * r1;
  const double b = k * r2;
  const double j0a = bessel::j0(a), y0a = bessel::y0(a), j1a = bessel::j1(a), y1a = bessel::y1(a);
  const double j0b = bessel::j0(b), y0b = bessel::y0(b), j1b = bessel::j1(b), y1b = bessel::y1(b);
  const double dj1b = j0b - j1b / b;
  const double dy1b = y0b - y1b / b;
  return -r1 * y1a * j1b + y0a * r2 * dj1b + r1 * j1a * y1b - j0a * r2 * dy1b;
}

void check_radii(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2)) {
    throw BoundsError("degenerate annulus radii (requires 0 < R1 < R2)");
  }
}

}  // namespace

double annulus_lambda1(double r1, double r2) {
  check_radii(r1, r2);
  const double step = pi / (8.0 * (r2 - r1));
  double lo = step / 64.0;
  double flo = cross_product(lo, r1, r2);
  if (!(flo > 0.0)) throw BoundsError("annulus root scan: unexpected sign near k = 0");
  double hi = lo;
  double fhi = flo;
  bool bracketed = false;
  for (int i = 0; i < 100000; ++i) {
    hi = lo + step;
    fhi = cross_product(hi, r1, r2);
    if (fhi <= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
    flo = fhi;
  }
  if (!bracketed) throw BoundsError("annulus root scan: no sign change in scan range");
  if (fhi == 0.0) return hi * hi;

  for (int i = 0; i < 200 && hi - lo > 1e-10 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = cross_product(mid, r1, r2);
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double k = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    const double f = cross_product(k, r1, r2);
    const double df = cross_derivative(k, r1, r2);
    if (df == 0.0) break;
    const double next = k - f / df;
    if (!(next > lo && next < hi)) break;
    const bool done = std::fabs(next - k) <= 1e-16 * k;
    k = next;
    if (done) break;
  }
  return k * k;
}

double annulus_upper(double r1, double r2) {
  check_radii(r1, r2);
  return 4.0 / (r2 * r2 * std::log(r2 / r1));
}

double annulus_lower(double r1, double r2) {
  check_radii(r1, r2);
  return 2.0 / (r2 * r2 * std::log(r2 / r1));
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "NOT_APPLICABLE";
}

const Check* BoundReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

Check compare(std::string name, double value, double bound, double allowance) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.bound = bound;
  c.slack = bound - value;
  c.verdict = value <= bound + allowance ? Verdict::Holds : Verdict::Violated;
  return c;
}

Check not_applicable(std::string name, std::string note) {
  Check c;
  c.name = std::move(name);
  c.verdict = Verdict::NotApplicable;
  c.note = std::move(note);
  return c;
}

}  // namespace

BoundReport evaluate_bounds(const geometry::GeometrySummary& s, const BoundInputs& in) {
  if (!(s.diameter > 0.0) || !(s.area > 0.0)) throw BoundsError("summary needs positive diameter and area");
  BoundReport r;
  r.lambda1 = in.lambda1;
  r.mu2 = in.mu2;
  r.est_error = in.est_error;
  const double allowance = 3.0 * in.est_error;
  const double jd = j0() / s.diameter;
  r.hotspots_threshold = jd * jd;
  r.kroger_bound = 4.0 * jd * jd;
  r.miyamoto_limit = miyamoto_ratio_limit();
  r.epsilon = geometry::epsilon_threshold(s);
  r.miyamoto_applicable = s.miyamoto_placement && s.quadrant_area > 0.0;
  if (r.miyamoto_applicable) {
    const double q = pi * s.projection_length / (2.0 * s.quadrant_area);
    r.miyamoto_bound = q * q;
    r.miyamoto_ratio = s.diameter * s.projection_length / s.quadrant_area;
  }
  r.annulus_applicable = s.has_dirichlet && s.dirichlet_diameter > 0.0 && s.r2 > s.dirichlet_diameter;
  if (r.annulus_applicable) {
    const double r1 = s.dirichlet_diameter;
    r.annulus_lambda = annulus_lambda1(r1, s.r2);
    r.annulus_upper = annulus_upper(r1, s.r2);
    r.annulus_lower = annulus_lower(r1, s.r2);
    r.bracket_applicable = r1 <= std::exp(-2.0) * s.r2;
  }

  if (!s.has_dirichlet) {
    r.checks.push_back(not_applicable("hotspots", "D is empty"));
  } else if (in.lambda1) {
    r.checks.push_back(compare("hotspots", *in.lambda1, r.hotspots_threshold, allowance));
  } else {
    r.checks.push_back(not_applicable("hotspots", "no eigenvalue supplied"));
  }

  if (!r.miyamoto_applicable) {
    r.checks.push_back(not_applicable("miyamoto", "placement: need Omega in {y >= 0} and D in the second quadrant"));
    r.checks.push_back(not_applicable("miyamoto_ratio", "placement"));
  } else {
    if (in.lambda1) {
      r.checks.push_back(compare("miyamoto", *in.lambda1, r.miyamoto_bound, allowance));
    } else {
      r.checks.push_back(not_applicable("miyamoto", "no eigenvalue supplied"));
    }
    r.checks.push_back(compare("miyamoto_ratio", r.miyamoto_ratio, r.miyamoto_limit, 0.0));
  }

  if (!r.annulus_applicable) {
    r.checks.push_back(not_applicable("annulus_maximality", "D is empty or degenerate"));
  } else if (in.lambda1) {
    r.checks.push_back(compare("annulus_maximality", *in.lambda1, r.annulus_lambda, allowance));
  } else {
    r.checks.push_back(not_applicable("annulus_maximality", "no eigenvalue supplied"));
  }

  if (r.bracket_applicable) {
    r.checks.push_back(compare("annulus_upper", r.annulus_lambda, r.annulus_upper, 0.0));
    r.checks.push_back(compare("annulus_lower", r.annulus_lower, r.annulus_lambda, 0.0));
    if (in.lambda1) r.checks.push_back(compare("annulus_upper_fem", *in.lambda1, r.annulus_upper, allowance));
  } else {
    r.checks.push_back(not_applicable("annulus_upper", "requires R1 <= exp(-2) R2"));
    r.checks.push_back(not_applicable("annulus_lower", "requires R1 <= exp(-2) R2"));
  }

  if (s.has_dirichlet && s.dirichlet_diameter <= r.epsilon && r.annulus_applicable) {
    const double chain = 4.0 / ((s.area / pi) * std::log(s.r2 / s.dirichlet_diameter));
    r.checks.push_back(compare("epsilon_chain", chain, r.hotspots_threshold, 0.0));
  } else {
    r.checks.push_back(not_applicable("epsilon_chain", "requires diameter of D <= epsilon"));
  }

  if (s.has_dirichlet) {
    r.checks.push_back(not_applicable("kroger", "requires D empty"));
  } else if (in.mu2) {
    r.checks.push_back(compare("kroger", *in.mu2, r.kroger_bound, allowance));
  } else {
    r.checks.push_back(not_applicable("kroger", "no second Neumann eigenvalue supplied"));
  }
  return r;
}

HexagonBound hexagon_bound() {
  HexagonBound h;
  const double q = pi / 2.0;
  h.bound = q * q * (1.5 + 1.0 / pi) / (1.5 - 1.0 / pi);
  h.threshold = 0.75 * j0() * j0();
  h.holds = h.bound < h.threshold;
  return h;
}

double regular_polygon_ratio(int n) {
  if (n < 3) throw BoundsError("regular polygon needs n >= 3");
  const double t = pi / n;
  return 4.0 / (n * std::sin(t) * std::cos(t));
}

double pentagon_ratio() {
  return 2.0 * std::sin(2.0 * pi / 5.0) * (1.0 + std::cos(pi / 5.0)) /
         (5.0 * std::sin(pi / 5.0) * std::cos(pi / 5.0));
}

double disk_arc_ratio(double alpha) {
  if (!(alpha > 0.0) || alpha > pi) throw BoundsError("disk arc angle must lie in (0, pi]");
  const double h = alpha / 2.0;
  return 4.0 / (pi - h + std::sin(h) * std::cos(h));
}

double disk_arc_threshold() {
  // The ratio increases with alpha on (0, pi].
  const double target = miyamoto_ratio_limit();
  double lo = 1e-6;
  double hi = pi;
  if (disk_arc_ratio(hi) <= target) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (disk_arc_ratio(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double wild_ratio(double a) {
  if (!(a > 1.0)) throw BoundsError("wild example needs a > 1");
  return std::sqrt(a * a + 1.0) / (a - 1.0);
}

int wild_first_integer() {
  const double target = miyamoto_ratio_limit();
  for (int a = 2; a < 1000; ++a) {
    if (wild_ratio(a) < target) return a;
  }
  throw BoundsError("no integer a below 1000 satisfies the wild bound");
}

}  // namespace hotspots::bounds
