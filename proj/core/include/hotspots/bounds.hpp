#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hotspots/geometry.hpp"

namespace hotspots::bounds {

/// First positive zero of J0 (cached).
double j0();

/// 2 j0 / pi, the largest admissible d l / A.
double miyamoto_ratio_limit();

/// Smallest eigenvalue on the annulus R1 < r < R2 with u = 0 on r = R1 and
/// du/dr = 0 on r = R2: k^2 for the smallest k > 0 solving
/// Y0(k R1) J1(k R2) = J0(k R1) Y1(k R2).
double annulus_lambda1(double r1, double r2);

/// 4 / (R2^2 ln(R2/R1)) and 2 / (R2^2 ln(R2/R1)).
double annulus_upper(double r1, double r2);
double annulus_lower(double r1, double r2);

enum class Verdict { Holds, Violated, NotApplicable };

const char* verdict_name(Verdict v) noexcept;

/// One inequality value <= bound. slack = bound - value.
struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  Verdict verdict = Verdict::NotApplicable;
  std::string note;
};

struct BoundInputs {
  std::optional<double> lambda1;   ///< first mixed eigenvalue (extrapolated)
  std::optional<double> mu2;       ///< second Neumann eigenvalue, convex D = empty domains
  double est_error = 0.0;          ///< absolute error estimate used as slack allowance
};

struct BoundReport {
  std::optional<double> lambda1;
  std::optional<double> mu2;
  double est_error = 0.0;
  double hotspots_threshold = 0.0;   ///< (j0/d)^2
  double miyamoto_bound = 0.0;       ///< (pi l / 2A)^2
  double miyamoto_ratio = 0.0;       ///< d l / A
  double miyamoto_limit = 0.0;       ///< 2 j0 / pi
  bool miyamoto_applicable = false;
  bool annulus_applicable = false;   ///< D nonempty
  bool bracket_applicable = false;   ///< R1 <= e^-2 R2
  double annulus_lambda = 0.0;
  double annulus_upper = 0.0;
  double annulus_lower = 0.0;
  double epsilon = 0.0;              ///< epsilon_threshold of the domain
  double kroger_bound = 0.0;         ///< 4 (j0/d)^2
  std::vector<Check> checks;

  const Check* find(const std::string& name) const;
};

/// Evaluates every threshold and compares the supplied eigenvalues with them.
/// A check HOLDS iff value <= bound + 3 est_error.
BoundReport evaluate_bounds(const geometry::GeometrySummary& summary, const BoundInputs& inputs = {});

struct HexagonBound {
  double bound = 0.0;      ///< (pi/2)^2 (3/2 + 1/pi) / (3/2 - 1/pi)
  double threshold = 0.0;  ///< (j0 sqrt(3) / 2)^2 = 3 j0^2 / 4
  bool holds = false;
};

HexagonBound hexagon_bound();

/// d l / A for the regular n-gon with D a full edge: 4 / (n sin(pi/n) cos(pi/n)).
double regular_polygon_ratio(int n);

/// 2 sin(2pi/5) (1 + cos(pi/5)) / (5 sin(pi/5) cos(pi/5)).
double pentagon_ratio();

/// d l / A for the unit disk with a Dirichlet arc of angle alpha:
/// 4 / (pi - alpha/2 + sin(alpha/2) cos(alpha/2)).
double disk_arc_ratio(double alpha);

/// alpha at which disk_arc_ratio equals 2 j0 / pi (bisection).
double disk_arc_threshold();

/// sqrt(a^2 + 1) / (a - 1).
double wild_ratio(double a);

/// Smallest integer a >= 2 with wild_ratio(a) < 2 j0 / pi.
int wild_first_integer();

}  // namespace hotspots::bounds
