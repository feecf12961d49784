#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "hotspots/error.hpp"
#include "hotspots/geometry.hpp"

namespace hotspots::geometry {

using std::numbers::pi;

namespace {

Chain polygon(const std::vector<Vec2>& vertices) {
  Chain chain;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    chain.pieces.push_back(Segment{vertices[i], vertices[(i + 1) % vertices.size()]});
  }
  return chain;
}

Chain circle(Vec2 center, double radius, bool counterclockwise = true) {
  Chain chain;
  if (counterclockwise) {
    chain.pieces.push_back(Arc{center, radius, 0.0, 2.0 * pi});
  } else {
    chain.pieces.push_back(Arc{center, radius, 2.0 * pi, 0.0});
  }
  return chain;
}

double param(std::span<const double> p, std::size_t i, std::string_view example) {
  if (i >= p.size()) {
    throw GeometryError("example '" + std::string(example) + "': missing parameter #" + std::to_string(i + 1));
  }
  if (!std::isfinite(p[i])) {
    throw GeometryError("example '" + std::string(example) + "': non-finite parameter");
  }
  return p[i];
}

void require(bool ok, std::string_view example, const std::string& what) {
  if (!ok) throw GeometryError("example '" + std::string(example) + "': " + what);
}

int as_count(double v, std::string_view example) {
  require(v == std::floor(v) && v >= 3 && v <= 64, example, "polygon size must be an integer in [3, 64]");
  return static_cast<int>(v);
}

DomainSpec square2disks(std::span<const double> p) {
  const double eps = param(p, 0, "square2disks");
  require(eps > 0.0 && eps < 0.5, "square2disks", "requires 0 < eps < 1/2");
  DomainSpec s;
  s.name = "square2disks";
  s.outer = polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  s.dirichlet = {ClosedDisk{{eps, 0.0}, eps / 2}, ClosedDisk{{-eps, 0.0}, eps / 2}};
  s.seeds = {{0.0, 0.0}};
  // Quarter x, y >= 0; the upper half of the right disk is cut out of its edge.
  DomainSpec q;
  q.name = "square2disks_quarter";
  q.outer.pieces = {Segment{{0, 0}, {eps / 2, 0}}, Arc{{eps, 0}, eps / 2, pi, 0.0},
                    Segment{{1.5 * eps, 0}, {1, 0}}, Segment{{1, 0}, {1, 1}},
                    Segment{{1, 1}, {0, 1}},         Segment{{0, 1}, {0, 0}}};
  q.dirichlet = {BoundaryArc{0, 1.0, 2.0}};
  s.mirrors = {Mirror{0, 0.0}, Mirror{1, 0.0}};
  s.fundamental = {q};
  return s;
}

// Equilateral triangle with circumradius 1 and incenter at the origin.
DomainSpec triangle3disks(std::span<const double> p) {
  const double eps = param(p, 0, "triangle3disks");
  require(eps > 0.0, "triangle3disks", "requires eps > 0");
  // Distance from p_i to the two sides through v_i is (1 - |p_i|)/2.
  const double offset = 2.0 * eps / std::sqrt(3.0);
  require((1.0 - offset) / 2.0 > eps / 2.0, "triangle3disks", "Dirichlet disks escape the triangle");
  DomainSpec s;
  s.name = "triangle3disks";
  std::vector<Vec2> v;
  for (int k = 0; k < 3; ++k) {
    const double th = pi / 2 + 2.0 * pi * k / 3.0;
    v.push_back({std::cos(th), std::sin(th)});
  }
  s.outer = polygon(v);
  for (const auto& vi : v) s.dirichlet.push_back(ClosedDisk{offset * vi, eps / 2});
  s.seeds = {{0.0, 0.0}};
  return s;
}

// Unit disk placed with the Dirichlet arc's chord on the y-axis, the disk in
// {y >= 0} and the arc in the closed second quadrant.
DomainSpec disk_arc(std::span<const double> p) {
  const double alpha = param(p, 0, "disk_arc");
  require(alpha > 0.0 && alpha <= pi, "disk_arc", "requires 0 < alpha <= pi");
  const Vec2 c{std::cos(alpha / 2), 1.0};
  DomainSpec s;
  s.name = "disk_arc";
  s.outer.pieces = {Arc{c, 1.0, pi - alpha / 2, pi + alpha / 2},
                    Arc{c, 1.0, pi + alpha / 2, 3.0 * pi - alpha / 2}};
  s.dirichlet = {BoundaryArc{0, 0.0, 1.0}};
  return s;
}

// Regular n-gon with circumradius 1, D on the left edge (x = 0), y >= 0.
DomainSpec regular_polygon_edge(std::span<const double> p) {
  const int n = as_count(param(p, 0, "regular_polygon_edge"), "regular_polygon_edge");
  const double frac = p.size() > 1 ? param(p, 1, "regular_polygon_edge") : 1.0;
  require(frac > 0.0 && frac <= 1.0, "regular_polygon_edge", "sub-segment fraction must lie in (0, 1]");
  require(n >= 3, "regular_polygon_edge", "requires n >= 3");
  std::vector<Vec2> v;
  double min_y = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = pi + pi / n + 2.0 * pi * k / n;
    v.push_back({std::cos(th), std::sin(th)});
    min_y = std::min(min_y, v.back().y);
  }
  const Vec2 shift{std::cos(pi / n), -min_y};
  for (auto& q : v) {
    q += shift;
    if (std::fabs(q.x) < 1e-15) q.x = 0.0;
  }
  DomainSpec s;
  s.name = "regular_polygon_edge";
  s.outer = polygon(v);  // piece n-1 runs down the left edge
  if (frac == 1.0) {
    s.dirichlet = {PolygonEdge{n - 1}};
  } else {
    s.dirichlet = {BoundaryArc{0, n - 1 + (1.0 - frac) / 2, n - 1 + (1.0 + frac) / 2}};
  }
  return s;
}

// Regular n-gon with side 1 sitting on e = [-1/2, 1/2] x {0}, vertices listed
// counterclockwise from (-1/2, 0).
std::vector<Vec2> polygon_on_edge(int n) {
  const double circum = 1.0 / (2.0 * std::sin(pi / n));
  const double apothem = 1.0 / (2.0 * std::tan(pi / n));
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) {
    const double th = -pi / 2 - pi / n + 2.0 * pi * k / n;
    Vec2 q{circum * std::cos(th), apothem + circum * std::sin(th)};
    if (std::fabs(q.y) < 1e-14) q.y = 0.0;
    v.push_back(q);
  }
  v[0] = {-0.5, 0.0};
  v[1] = {0.5, 0.0};
  return v;
}

DomainSpec kn(std::span<const double> p) {
  const int n = as_count(param(p, 0, "Kn"), "Kn");
  const auto upper = polygon_on_edge(n);
  std::vector<Vec2> v;
  for (int k = 1; k <= n; ++k) v.push_back(upper[k % n]);  // (1/2,0) ... (-1/2,0)
  for (int k = n - 1; k >= 2; --k) v.push_back({upper[k].x, -upper[k].y});
  DomainSpec s;
  s.name = "Kn";
  s.outer = polygon(v);
  return s;
}

DomainSpec pn_edge(std::span<const double> p) {
  const int n = as_count(param(p, 0, "Pn_edge"), "Pn_edge");
  DomainSpec s;
  s.name = "Pn_edge";
  s.outer = polygon(polygon_on_edge(n));
  s.dirichlet = {PolygonEdge{0}};
  return s;
}

DomainSpec wild(std::span<const double> p) {
  const double a = param(p, 0, "wild");
  require(a > 1.0, "wild", "requires a > 1");
  std::vector<Vec2> gamma;  // interior vertices from (0,0) to (0,1)
  if (p.size() > 1) {
    require(p.size() % 2 == 1, "wild", "gamma polyline needs x,y pairs");
    for (std::size_t i = 1; i + 1 < p.size(); i += 2) gamma.push_back({p[i], p[i + 1]});
  } else {
    gamma = {{-0.5, 0.15}, {-0.2, 0.35}, {-0.8, 0.5}, {-0.2, 0.65}, {-0.5, 0.85}};
  }
  for (const auto& g : gamma) {
    require(g.x >= -1.0 && g.x <= 0.0 && g.y >= 0.0 && g.y <= 1.0, "wild",
            "gamma must stay inside the square [-1,0] x [0,1]");
  }
  std::vector<Vec2> v{{0, 0}, {a - 1, 0}, {a - 1, 1}, {0, 1}};
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) v.push_back(*it);
  DomainSpec s;
  s.name = "wild";
  s.outer = polygon(v);
  // Pieces 3 .. 3+|gamma| form gamma (traversed from (0,1) back to (0,0)).
  for (std::size_t k = 3; k < v.size(); ++k) s.dirichlet.push_back(PolygonEdge{static_cast<int>(k)});
  try {
    validate(s);
  } catch (const GeometryError&) {
    throw GeometryError("example 'wild': gamma is not a simple curve inside the square");
  }
  return s;
}

DomainSpec rectangle(std::span<const double> p) {
  const double area = param(p, 0, "rectangle");
  const double ell = param(p, 1, "rectangle");
  require(area > 0.0 && ell > 0.0, "rectangle", "requires A > 0 and l > 0");
  const double w = area / ell;
  DomainSpec s;
  s.name = "rectangle";
  s.outer = polygon({{0, 0}, {w, 0}, {w, ell}, {0, ell}});
  s.dirichlet = {PolygonEdge{3}};
  return s;
}

DomainSpec annulus(std::span<const double> p) {
  const double r1 = param(p, 0, "annulus");
  const double r2 = param(p, 1, "annulus");
  require(r1 > 0.0 && r2 > r1, "annulus", "degenerate annulus (requires 0 < R1 < R2)");
  DomainSpec s;
  s.name = "annulus";
  s.outer = circle({0, 0}, r2);
  s.holes = {circle({0, 0}, r1, false)};
  s.dirichlet = {BoundaryArc{1, 0.0, 1.0}};
  return s;
}

// Rectangle-like domain with A = l = 1 whose right side bulges out along a
// circular arc of sagitta s; D is the left edge.
DomainSpec bulged_rectangle(std::span<const double> p) {
  const double sag = param(p, 0, "bulged_rectangle");
  require(sag > 0.0 && sag <= 0.5, "bulged_rectangle", "requires 0 < s <= 1/2");
  const double rho = (0.25 + sag * sag) / (2.0 * sag);
  const double phi = 2.0 * std::asin(0.5 / rho);
  const double cap = 0.5 * rho * rho * (phi - std::sin(phi));
  const double w = 1.0 - cap;
  const Vec2 c{w + sag - rho, 0.5};
  DomainSpec s;
  s.name = "bulged_rectangle";
  s.outer.pieces = {Segment{{0, 0}, {w, 0}}, Arc{c, rho, -phi / 2, phi / 2}, Segment{{w, 1}, {0, 1}},
                    Segment{{0, 1}, {0, 0}}};
  s.dirichlet = {PolygonEdge{3}};
  return s;
}

DomainSpec square_disk(std::span<const double> p) {
  const double side = param(p, 0, "square_disk");
  const double r = param(p, 1, "square_disk");
  const double cx = param(p, 2, "square_disk");
  const double cy = param(p, 3, "square_disk");
  require(side > 0.0 && r > 0.0, "square_disk", "requires side > 0 and r > 0");
  require(cx - r > 0.0 && cx + r < side && cy - r > 0.0 && cy + r < side, "square_disk",
          "Dirichlet disk must lie strictly inside the square");
  DomainSpec s;
  s.name = "square_disk";
  s.outer = polygon({{0, 0}, {side, 0}, {side, side}, {0, side}});
  s.dirichlet = {ClosedDisk{{cx, cy}, r}};
  return s;
}

DomainSpec square_segment(std::span<const double> p) {
  const double side = param(p, 0, "square_segment");
  DomainSpec s;
  s.name = "square_segment";
  s.outer = polygon({{0, 0}, {side, 0}, {side, side}, {0, side}});
  s.dirichlet = {InteriorSegment{{param(p, 1, "square_segment"), param(p, 2, "square_segment")},
                                 {param(p, 3, "square_segment"), param(p, 4, "square_segment")}}};
  return s;
}

DomainSpec disk_dirichlet(std::span<const double> p) {
  const double r = p.empty() ? 1.0 : param(p, 0, "disk_dirichlet");
  require(r > 0.0, "disk_dirichlet", "requires R > 0");
  DomainSpec s;
  s.name = "disk_dirichlet";
  s.outer = circle({0, 0}, r);
  s.dirichlet = {BoundaryArc{0, 0.0, 1.0}};
  return s;
}

DomainSpec disk_neumann(std::span<const double> p) {
  const double r = p.empty() ? 1.0 : param(p, 0, "disk_neumann");
  require(r > 0.0, "disk_neumann", "requires R > 0");
  DomainSpec s;
  s.name = "disk_neumann";
  s.outer = circle({0, 0}, r);
  return s;
}

DomainSpec square_neumann(std::span<const double> p) {
  const double side = p.empty() ? 1.0 : param(p, 0, "square_neumann");
  require(side > 0.0, "square_neumann", "requires side > 0");
  DomainSpec s;
  s.name = "square_neumann";
  s.outer = polygon({{0, 0}, {side, 0}, {side, side}, {0, side}});
  return s;
}

DomainSpec rectangle_neumann(std::span<const double> p) {
  const double w = param(p, 0, "rectangle_neumann");
  const double h = param(p, 1, "rectangle_neumann");
  require(w > 0.0 && h > 0.0, "rectangle_neumann", "requires positive sides");
  DomainSpec s;
  s.name = "rectangle_neumann";
  s.outer = polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
  return s;
}

DomainSpec lshape(std::span<const double>) {
  DomainSpec s;
  s.name = "lshape";
  s.outer = polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  return s;
}

using Builder = std::function<DomainSpec(std::span<const double>)>;

const std::map<std::string, Builder, std::less<>>& builders() {
  static const std::map<std::string, Builder, std::less<>> table{
      {"square2disks", square2disks},
      {"triangle3disks", triangle3disks},
      {"disk_arc", disk_arc},
      {"regular_polygon_edge", regular_polygon_edge},
      {"Kn", kn},
      {"Pn_edge", pn_edge},
      {"wild", wild},
      {"rectangle", rectangle},
      {"annulus", annulus},
      {"bulged_rectangle", bulged_rectangle},
      {"square_disk", square_disk},
      {"square_segment", square_segment},
      {"disk_dirichlet", disk_dirichlet},
      {"disk_neumann", disk_neumann},
      {"square_neumann", square_neumann},
      {"rectangle_neumann", rectangle_neumann},
      {"lshape", lshape},
  };
  return table;
}

}  // namespace

DomainSpec make_example(std::string_view name, std::span<const double> params) {
  const auto& table = builders();
  const auto it = table.find(name);
  if (it == table.end()) throw GeometryError("unknown example '" + std::string(name) + "'");
  DomainSpec spec = it->second(params);
  validate(spec);
  return spec;
}

std::vector<std::string> example_names() {
  std::vector<std::string> names;
  for (const auto& [name, builder] : builders()) names.push_back(name);
  return names;
}

}  // namespace hotspots::geometry
