// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hotspots/bessel.hpp"
#include "hotspots/bounds.hpp"
#include "hotspots/domain_json.hpp"
#include "hotspots/error.hpp"
#include "hotspots/fem.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/lab.hpp"
#include "hotspots/mesh.hpp"

namespace {

using hotspots::Vec2;
namespace lab = hotspots::lab;
namespace g = hotspots::geometry;
namespace b = hotspots::bounds;
namespace an = hotspots::analysis;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string f(const char* fmt, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
  return buf;
}

int env_threads() {
  const char* v = std::getenv("HOTSPOTS_THREADS");
  return v && std::atoi(v) > 0 ? std::atoi(v) : 1;
}

lab::CaseReport run(const std::string& name) {
  lab::RunOptions o;
  o.threads = env_threads();
  return lab::run_case(lab::find_case(name), o);
}

lab::CaseReport run_example(const std::string& example, std::vector<double> params, double h, int eigenpairs = 1) {
  lab::CaseDefinition c;
  c.name = example;
  c.example = example;
  c.params = std::move(params);
  c.h = h;
  c.eigenpairs = eigenpairs;
  c.field = eigenpairs > 1 ? 1 : 0;
  lab::RunOptions o;
  o.threads = env_threads();
  return lab::run_case(c, o);
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

const an::Candidate* confirmed_near(const lab::CaseReport& r, Vec2 p, double radius) {
  for (const auto& c : r.critical.candidates) {
    if (c.confirmed && hotspots::distance(c.location, p) <= radius) return &c;
  }
  return nullptr;
}

Outcome solver_calibration() {
  Outcome o;
  const double j0sq = b::j0() * b::j0();
  const auto disk = run("disk_dirichlet");
  o.check(rel(disk.eigenvalues[0], j0sq) <= 0.005, f("disk lambda1 %.8g vs %.8g", disk.eigenvalues[0], j0sq));
  const auto sq = run("square_neumann");
  o.check(rel(sq.eigenvalues[1], kPi * kPi) <= 0.005, f("square mu2 %.8g vs %.8g", sq.eigenvalues[1], kPi * kPi));
  return o;
}

Outcome miyamoto_sharpness() {
  Outcome o;
  const double target = kPi * kPi / 4.0;
  const auto rect = run("rectangle_miyamoto");
  o.check(rel(rect.eigenvalues[0], target) <= 0.01, f("rectangle lambda1 %.8g vs %.8g", rect.eigenvalues[0], target));
  const auto bulge = run("bulged_rectangle");
  o.check(std::fabs(bulge.summary.quadrant_area - 1.0) < 1e-9 && std::fabs(bulge.summary.projection_length - 1.0) < 1e-9,
          f("bulged A = %.12g, l = %.12g", bulge.summary.quadrant_area, bulge.summary.projection_length));
  const double gap = target - bulge.eigenvalues[0];
  o.check(gap > 3.0 * bulge.est_error[0], f("bulged lambda1 %.8g below by %.3g > 3 err = %.3g", bulge.eigenvalues[0], gap,
                                            3.0 * bulge.est_error[0]));
  return o;
}

Outcome annulus_bracket() {
  Outcome o;
  for (double r1 : {std::exp(-2.0), 1e-3, 1e-4}) {
    const double l = b::annulus_lambda1(r1, 1.0);
    const double lo = b::annulus_lower(r1, 1.0), hi = b::annulus_upper(r1, 1.0);
    o.check(lo <= l && l <= hi, f("R1 %.3g: %.6g in [%.6g, %.6g]", r1, l, lo, hi));
  }
  const auto r = run("annulus");
  const double radial = b::annulus_lambda1(std::exp(-2.0), 1.0);
  o.check(rel(r.eigenvalues[0], radial) <= 0.01, f("FEM %.8g vs radial %.8g", r.eigenvalues[0], radial));
  return o;
}

Outcome annulus_maximality() {
  Outcome o;
  const auto r = run("annulus_maximality");
  const double r1 = r.summary.dirichlet_diameter, r2 = r.summary.r2;
  const double cap = b::annulus_lambda1(r1, r2);
  o.check(std::fabs(r1 - 0.1) < 1e-12, f("R1 = %.12g", r1));
  o.check(r.eigenvalues[0] <= cap + 3.0 * r.est_error[0],
          f("lambda1 %.8g <= annulus(%.4g, ", r.eigenvalues[0], r1) + f("%.6g) = %.8g + 3 err", r2, cap));
  return o;
}

Outcome counterexamples() {
  Outcome o;
  const auto s = run("square2disks");
  o.check(s.critical.verdict == an::CriticalVerdict::CriticalPointsFound,
          std::string("square2disks ") + an::verdict_name(s.critical.verdict));
  const auto* c = confirmed_near(s, {0, 0}, 1e-9);
  o.check(c && c->ratios.back() <= 1e-3, c ? f("origin ratio %.3g", c->ratios.back()) : "no candidate at origin");
  const auto t = run("triangle3disks");
  const auto* ct = confirmed_near(t, {0, 0}, 1e-9);
  const bool extremum =
      ct && (ct->classification == an::Extremum::LocalMax || ct->classification == an::Extremum::LocalMin);
  o.check(extremum, ct ? std::string("incenter ") + an::extremum_name(ct->classification) + f(" (mode ratio %.3g)", ct->mode_ratio)
                       : "no candidate at incenter");
  return o;
}

Outcome disk_arc_certification() {
  Outcome o;
  const double j0sq = b::j0() * b::j0();
  for (const char* name : {"disk_arc_1.571", "disk_arc_1.9"}) {
    const auto r = run(name);
    const double d = r.summary.diameter;
    o.check(r.eigenvalues[0] * d * d <= j0sq, std::string(name) + f(": lambda d^2 = %.6g <= %.6g", r.eigenvalues[0] * d * d, j0sq));
    o.check(r.critical.verdict == an::CriticalVerdict::NoInteriorCriticalPoints, an::verdict_name(r.critical.verdict));
  }
  const double alpha = b::disk_arc_threshold();
  o.check(std::fabs(alpha - 1.976) <= 1e-3, f("alpha* = %.6g", alpha));
  return o;
}

Outcome regular_polygons() {
  Outcome o;
  for (int n = 4; n <= 8; ++n) {
    const auto r = run("P" + std::to_string(n) + "_edge");
    const double t = std::pow(b::j0() / r.summary.diameter, 2);
    o.check(r.eigenvalues[0] <= t * (1.0 + 3.0 * r.rel_error[0]), f("n=%g: %.6g <= %.6g", n, r.eigenvalues[0], t));
  }
  bool formula = true;
  for (int n = 7; n <= 200; ++n) formula = formula && b::regular_polygon_ratio(n) < b::miyamoto_ratio_limit();
  o.check(formula, "dl/A < 2 j0/pi for 7 <= n <= 200");
  const double pent = b::pentagon_ratio();
  o.check(std::fabs(pent - 1.4472) < 1e-4 && pent < b::miyamoto_ratio_limit(), f("pentagon %.6g", pent));

  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec2> v{{0, 0}, {0.5, -s / 2}, {1, 0}, {1, s}, {0.5, 1.5 * s}, {0, s}};
  json outer = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], c = v[(i + 1) % v.size()];
    outer.push_back({{"seg", {a.x, a.y, c.x, c.y}}});
  }
  const json hex{{"name", "hexagon"}, {"outer", outer}, {"dirichlet", {{{"kind", "edge"}, {"index", 5}}}}};
  hotspots::mesh::MeshOptions mo;
  mo.h = 0.02;
  const auto mesh = hotspots::mesh::triangulate(g::domain_from_json(hex), mo);
  hotspots::fem::TestFunction phi{[](Vec2 p) { return std::sin(kPi * p.x / 2); },
                                  [](Vec2 p) { return Vec2{kPi / 2 * std::cos(kPi * p.x / 2), 0.0}; }};
  const double q = hotspots::fem::rayleigh_quotient(mesh, phi);
  const auto hb = b::hexagon_bound();
  o.check(q <= 3.797 && hb.bound <= 3.797 && 3.797 < hb.threshold,
          f("hexagon quotient %.6g, bound %.6g < %.6g", q, hb.bound, hb.threshold));
  return o;
}

Outcome kn_hot_spots() {
  Outcome o;
  for (int n = 3; n <= 6; ++n) {
    const auto r = run("K" + std::to_string(n));
    const double gap = (r.eigenvalues[2] - r.eigenvalues[1]) / r.eigenvalues[1];
    o.check(gap > 10.0 * r.rel_error[1], f("K%g gap %.3g", n, gap));
    const auto& s = r.solutions.back();
    const auto sym = an::symmetry_check(*s.mesh, s.fields[1], an::Isometry::reflection({0, 0}, {1, 0}), 1e-2);
    o.check(sym.parity == an::Parity::Odd && sym.odd_deviation <= 1e-2, f("odd deviation %.3g", sym.odd_deviation));
    o.check(r.critical.verdict == an::CriticalVerdict::NoInteriorCriticalPoints, an::verdict_name(r.critical.verdict));
    const auto p = run_example("Pn_edge", {static_cast<double>(n)}, 0.1);
    o.check(rel(r.eigenvalues[1], p.eigenvalues[0]) <= 0.01,
            f("mu2 %.8g vs mixed lambda1 %.8g", r.eigenvalues[1], p.eigenvalues[0]));
  }
  return o;
}

Outcome unit_square_end_to_end() {
  Outcome o;
  const double eps = g::epsilon_threshold(g::summarize(g::make_example("square_neumann", std::vector<double>{1.0})));
  o.check(std::fabs(eps - 0.0073123204) < 1e-9, f("epsilon %.8g", eps));
  for (const char* name : {"unit_square_center", "unit_square_corner", "unit_square_edge"}) {
    const auto r = run(name);
    const double t = b::j0() * b::j0() / 2.0;
    o.check(r.summary.dirichlet_diameter <= eps, f("diam D %.8g", r.summary.dirichlet_diameter));
    o.check(r.eigenvalues[0] <= t, std::string(name) + f(": lambda1 %.6g <= %.6g", r.eigenvalues[0], t));
    o.check(r.critical.verdict == an::CriticalVerdict::NoInteriorCriticalPoints, an::verdict_name(r.critical.verdict));
    o.check(r.wall_time <= 300.0, f("%.1f s", r.wall_time));
  }
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  // Variational upper bound: polynomial multiples of a function vanishing on D.
  struct Family {
    std::string name;
    std::vector<double> params;
    std::function<double(Vec2)> w;
    std::function<Vec2(Vec2)> dw;
  };
  const double l1 = std::log(0.2);
  const std::vector<Family> families{
      {"rectangle", {1.0, 1.0}, [](Vec2 p) { return p.x; }, [](Vec2) { return Vec2{1, 0}; }},
      {"annulus", {0.2, 1.0}, [l1](Vec2 p) { return 0.5 * std::log(hotspots::norm2(p)) - l1; },
       [](Vec2 p) { return (1.0 / hotspots::norm2(p)) * p; }}};
  int admissible = 0;
  for (const auto& fam : families) {
    const auto r = run_example(fam.name, fam.params, 0.1);
    const auto& mesh = *r.solutions.back().mesh;
    for (int k = 0; k < 10; ++k) {
      double c[6];
      for (double& x : c) x = coef(rng);
      c[0] = 2.0 + std::fabs(c[0]);
      auto poly = [c](Vec2 p) { return c[0] + c[1] * p.x + c[2] * p.y + c[3] * p.x * p.y + c[4] * p.x * p.x + c[5] * p.y * p.y; };
      auto dpoly = [c](Vec2 p) {
        return Vec2{c[1] + c[3] * p.y + 2 * c[4] * p.x, c[2] + c[3] * p.x + 2 * c[5] * p.y};
      };
      hotspots::fem::TestFunction tf{[&](Vec2 p) { return fam.w(p) * poly(p); },
                                     [&](Vec2 p) { return poly(p) * fam.dw(p) + fam.w(p) * dpoly(p); }};
      const double q = hotspots::fem::rayleigh_quotient(mesh, tf);
      const bool ok = q >= r.eigenvalues[0] - r.est_error[0];
      admissible += ok ? 1 : 0;
      if (!ok) o.check(false, fam.name + f(" test function %g: %.8g < %.8g", k, q, r.eigenvalues[0]));
    }
  }
  o.check(admissible == 20, f("%g/20 quotients >= lambda1 - err", admissible));

  // Domain monotonicity in D.
  struct Pair {
    const char* example;
    std::vector<double> small, large;
  };
  const std::vector<Pair> pairs{{"square_disk", {1.0, 0.02, 0.5, 0.5}, {1.0, 0.04, 0.5, 0.5}},
                                {"square_disk", {1.0, 0.05, 0.3, 0.6}, {1.0, 0.1, 0.3, 0.6}},
                                {"annulus", {0.1, 1.0}, {0.2, 1.0}},
                                {"regular_polygon_edge", {5.0, 0.5}, {5.0, 1.0}},
                                {"square_segment", {1.0, 0.4, 0.5, 0.6, 0.5}, {1.0, 0.3, 0.5, 0.7, 0.5}}};
  int nested = 0;
  for (const auto& p : pairs) {
    const auto a = run_example(p.example, p.small, 0.1);
    const auto c = run_example(p.example, p.large, 0.1);
    const bool ok = a.eigenvalues[0] <= c.eigenvalues[0] + a.est_error[0] + c.est_error[0];
    nested += ok ? 1 : 0;
    if (!ok) o.check(false, std::string(p.example) + f(": %.8g > %.8g", a.eigenvalues[0], c.eigenvalues[0]));
  }
  o.check(nested == 5, f("%g/5 nested pairs monotone", nested));

  // Bessel regression.
  const double zero = hotspots::bessel::j0_first_zero();
  const double roots[3][2] = {{std::exp(-2.0), 1.4702541105282248}, {1e-3, 0.32353104767914252}, {1e-4, 0.23591094755412812}};
  bool stable = std::fabs(zero - 2.4048255576957728) <= 1e-12;
  for (const auto& r : roots) stable = stable && rel(b::annulus_lambda1(r[0], 1.0), r[1]) <= 1e-12;
  o.check(stable, f("j0 = %.16g, annulus roots within 1e-12", zero));

  // Determinism.
  int identical = 0;
  for (const char* name : {"disk_dirichlet", "K4", "square2disks"}) {
    const auto x = run(name);
    const auto y = run(name);
    const bool same = lab::dump(lab::report_to_json(x, false)) == lab::dump(lab::report_to_json(y, false)) &&
                      lab::render_svg(x) == lab::render_svg(y);
    identical += same ? 1 : 0;
  }
  o.check(identical == 3, f("%g/3 byte-identical reports", identical));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"solver calibration", solver_calibration},
      {"Miyamoto sharpness", miyamoto_sharpness},
      {"annulus bracket", annulus_bracket},
      {"annulus maximality", annulus_maximality},
      {"counterexamples", counterexamples},
      {"hot spots certification (disk arcs)", disk_arc_certification},
      {"regular polygons", regular_polygons},
      {"K_n hot spots", kn_hot_spots},
      {"unit square end to end", unit_square_end_to_end},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const hotspots::Error& e) {
      out.pass = false;
      out.detail = std::string("error [") + hotspots::stage_name(e.stage()) + "]: " + e.what();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s) [%.1fs]: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
