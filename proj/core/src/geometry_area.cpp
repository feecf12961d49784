#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "geometry_internal.hpp"
#include "hotspots/geometry.hpp"

namespace hotspots::geometry {

using std::numbers::pi;

namespace {

// Signed area of triangle (0, a, b) intersected with the disk of radius r at
// the origin.
double triangle_disk_area(Vec2 a, Vec2 b, double r) {
  const Vec2 d = b - a;
  const double qa = norm2(d);
  if (qa == 0.0) return 0.0;
  const double qb = 2.0 * dot(a, d);
  const double qc = norm2(a) - r * r;
  std::vector<double> ts{0.0};
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  }
  ts.push_back(1.0);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const Vec2 u = a + ts[i] * d;
    const Vec2 v = a + ts[i + 1] * d;
    const Vec2 m = 0.5 * (u + v);
    if (norm2(m) <= r * r) {
      area += 0.5 * cross(u, v);
    } else {
      area += 0.5 * r * r * std::atan2(cross(u, v), dot(u, v));
    }
  }
  return area;
}

// Integral of x dy along the part of a curve with x >= 0.
double x_dy_right(const Curve& c) {
  if (const auto* s = std::get_if<Segment>(&c)) {
    const double xa = s->a.x;
    const double xb = s->b.x;
    double s0 = 0.0;
    double s1 = 1.0;
    if (xa < 0.0 && xb < 0.0) return 0.0;
    if (xa < 0.0) s0 = -xa / (xb - xa);
    if (xb < 0.0) s1 = -xa / (xb - xa);
    const double x0 = xa + s0 * (xb - xa);
    const double x1 = xa + s1 * (xb - xa);
    return (s->b.y - s->a.y) * (s1 - s0) * 0.5 * (x0 + x1);
  }
  const Arc& a = std::get<Arc>(c);
  const double cx = a.center.x;
  const double r = a.radius;
  auto antiderivative = [&](double t) {
    return cx * r * std::sin(t) + r * r * (0.5 * t + 0.25 * std::sin(2.0 * t));
  };
  const double lo = std::min(a.theta_start, a.theta_end);
  const double hi = std::max(a.theta_start, a.theta_end);
  std::vector<double> cuts{lo};
  const double ratio = -cx / r;
  if (ratio > -1.0 && ratio < 1.0) {
    const double beta = std::acos(ratio);
    for (double base : {beta, -beta}) {
      for (double k = std::floor((lo - base) / (2.0 * pi)); base + 2.0 * pi * k < hi; k += 1.0) {
        const double th = base + 2.0 * pi * k;
        if (th > lo) cuts.push_back(th);
      }
    }
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (cx + r * std::cos(mid) >= 0.0) total += antiderivative(cuts[i + 1]) - antiderivative(cuts[i]);
  }
  return a.theta_end >= a.theta_start ? total : -total;
}

std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, Vec2 normal) {
  // Keeps {p : dot(p, normal) >= 0}.
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double dp = dot(p, normal);
    const double dq = dot(q, normal);
    if (dp >= 0.0) out.push_back(p);
    if ((dp >= 0.0) != (dq >= 0.0)) out.push_back(p + (dp / (dp - dq)) * (q - p));
  }
  return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * twice;
}

}  // namespace

double area_in_disk(const DomainSpec& spec, Vec2 center, double radius, double step) {
  double area = 0.0;
  for (const Chain* ch : chains(spec)) {
    const auto poly = detail::polygonize(*ch, step);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      area += triangle_disk_area(poly[i] - center, poly[(i + 1) % poly.size()] - center, radius);
    }
  }
  return area;
}

double area_right_half_plane(const DomainSpec& spec) {
  double area = 0.0;
  for (const Chain* ch : chains(spec)) {
    for (const auto& c : ch->pieces) area += x_dy_right(c);
  }
  return area;
}

namespace detail {

double area_in_quadrant_polygonal(const DomainSpec& spec, double step) {
  double area = 0.0;
  for (const Chain* ch : chains(spec)) {
    auto poly = polygonize(*ch, step);
    poly = clip_half_plane(poly, {1.0, 0.0});
    poly = clip_half_plane(poly, {0.0, 1.0});
    area += polygon_area(poly);
  }
  return area;
}

}  // namespace detail

}  // namespace hotspots::geometry
