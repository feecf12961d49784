#include "hotspots/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "geometry_internal.hpp"
#include "hotspots/bessel.hpp"
#include "hotspots/error.hpp"

namespace hotspots::geometry {

using std::numbers::pi;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Exact values at multiples of pi/2 keep arc end points consistent.
Vec2 on_circle(Vec2 c, double r, double theta) {
  const double q = theta / (pi / 2);
  const double k = std::round(q);
  if (std::fabs(q - k) < 1e-14) {
    static constexpr double cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int idx = static_cast<int>(((static_cast<long long>(k) % 4) + 4) % 4);
    return {c.x + r * cs[idx][0], c.y + r * cs[idx][1]};
  }
  return {c.x + r * std::cos(theta), c.y + r * std::sin(theta)};
}

}  // namespace

Vec2 start_point(const Curve& c) { return point_at(c, 0.0); }
Vec2 end_point(const Curve& c) { return point_at(c, 1.0); }

Vec2 point_at(const Curve& c, double t) {
  return std::visit(Overloaded{
                        [t](const Segment& s) { return lerp(s.a, s.b, t); },
                        [t](const Arc& a) {
                          return on_circle(a.center, a.radius,
                                           a.theta_start + t * (a.theta_end - a.theta_start));
                        }},
                    c);
}

Vec2 tangent_at(const Curve& c, double t) {
  return std::visit(Overloaded{
                        [](const Segment& s) {
                          const Vec2 d = s.b - s.a;
                          return d / norm(d);
                        },
                        [t](const Arc& a) {
                          const double th = a.theta_start + t * (a.theta_end - a.theta_start);
                          const double sgn = a.theta_end >= a.theta_start ? 1.0 : -1.0;
                          return Vec2{-sgn * std::sin(th), sgn * std::cos(th)};
                        }},
                    c);
}

double length(const Curve& c) {
  return std::visit(Overloaded{[](const Segment& s) { return distance(s.a, s.b); },
                               [](const Arc& a) {
                                 return a.radius * std::fabs(a.theta_end - a.theta_start);
                               }},
                    c);
}

Curve sub_curve(const Curve& c, double t0, double t1) {
  return std::visit(Overloaded{[&](const Segment& s) -> Curve {
                                 return Segment{lerp(s.a, s.b, t0), lerp(s.a, s.b, t1)};
                               },
                               [&](const Arc& a) -> Curve {
                                 const double span = a.theta_end - a.theta_start;
                                 return Arc{a.center, a.radius, a.theta_start + t0 * span,
                                            a.theta_start + t1 * span};
                               }},
                    c);
}

Curve reversed(const Curve& c) {
  return std::visit(
      Overloaded{[](const Segment& s) -> Curve { return Segment{s.b, s.a}; },
                 [](const Arc& a) -> Curve {
                   return Arc{a.center, a.radius, a.theta_end, a.theta_start};
                 }},
      c);
}

std::vector<Vec2> sample_curve(const Curve& c, double step) {
  const double len = length(c);
  const auto n = static_cast<std::size_t>(
      std::clamp(std::ceil(len / step), 1.0, 4.0e6));
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    pts.push_back(point_at(c, static_cast<double>(i) / static_cast<double>(n)));
  }
  return pts;
}

namespace detail {

double distance_to_curve(const Curve& c, Vec2 p) {
  return std::visit(Overloaded{[p](const Segment& s) { return distance_to_segment(p, s.a, s.b); },
                               [p](const Arc& a) {
                                 const double th = std::atan2(p.y - a.center.y, p.x - a.center.x);
                                 if (angle_in_arc(a, th)) {
                                   return std::fabs(distance(p, a.center) - a.radius);
                                 }
                                 return std::min(distance(p, start_point(a)),
                                                 distance(p, end_point(a)));
                               }},
                    c);
}

bool angle_in_arc(const Arc& a, double theta) {
  const double lo = std::min(a.theta_start, a.theta_end);
  const double hi = std::max(a.theta_start, a.theta_end);
  if (hi - lo >= 2.0 * pi - 1e-15) return true;
  // Shift theta into [lo, lo + 2 pi).
  double t = theta;
  t = lo + std::fmod(std::fmod(t - lo, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
  return t <= hi + 1e-15;
}

BBox curve_bbox(const Curve& c) {
  BBox box;
  std::visit(Overloaded{[&](const Segment& s) {
                          box.add(s.a);
                          box.add(s.b);
                        },
                        [&](const Arc& a) {
                          box.add(start_point(a));
                          box.add(end_point(a));
                          for (int k = 0; k < 4; ++k) {
                            const double th = k * pi / 2.0;
                            if (angle_in_arc(a, th)) box.add(on_circle(a.center, a.radius, th));
                          }
                        }},
             c);
  return box;
}

BBox chain_bbox(const Chain& chain) {
  BBox box;
  for (const auto& c : chain.pieces) box.merge(curve_bbox(c));
  return box;
}

std::vector<Vec2> polygonize(const Chain& chain, double step) {
  std::vector<Vec2> pts;
  for (const auto& c : chain.pieces) {
    auto s = sample_curve(c, step);
    pts.insert(pts.end(), s.begin(), s.end() - 1);
  }
  return pts;
}

std::vector<Vec2> boundary_samples(const DomainSpec& spec, double step) {
  std::vector<Vec2> pts;
  for (const Chain* ch : chains(spec)) {
    auto p = polygonize(*ch, step);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  return pts;
}

double quick_diameter(const DomainSpec& spec) {
  const BBox box = chain_bbox(spec.outer);
  return std::max(box.hi.x - box.lo.x, box.hi.y - box.lo.y);
}

}  // namespace detail

using detail::BBox;

double signed_area(const Chain& chain) {
  double twice = 0.0;
  for (const auto& c : chain.pieces) {
    twice += std::visit(
        Overloaded{[](const Segment& s) { return cross(s.a, s.b); },
                   [](const Arc& a) {
                     const double r = a.radius;
                     const double t0 = a.theta_start;
                     const double t1 = a.theta_end;
                     return r * r * (t1 - t0) +
                            r * (a.center.x * (std::sin(t1) - std::sin(t0)) -
                                 a.center.y * (std::cos(t1) - std::cos(t0)));
                   }},
        c);
  }
  return 0.5 * twice;
}

std::vector<const Chain*> chains(const DomainSpec& spec) {
  std::vector<const Chain*> out{&spec.outer};
  for (const auto& h : spec.holes) out.push_back(&h);
  return out;
}

namespace {

// Crossing contribution of a y-monotone piece for a ray towards +x.
int crossing(Vec2 a, Vec2 b, Vec2 p, const Curve* arc_source) {
  if ((a.y > p.y) == (b.y > p.y)) return 0;
  double x_hit = 0.0;
  if (arc_source == nullptr) {
    x_hit = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
  } else {
    const Arc& arc = std::get<Arc>(*arc_source);
    const double dy = p.y - arc.center.y;
    const double h = std::sqrt(std::max(0.0, arc.radius * arc.radius - dy * dy));
    // A monotone sub-arc lies entirely on one side of the vertical diameter.
    const double mid_x = std::cos(0.5 * (arc.theta_start + arc.theta_end));
    x_hit = mid_x >= 0.0 ? arc.center.x + h : arc.center.x - h;
  }
  return x_hit > p.x ? 1 : 0;
}

}  // namespace

bool chain_contains(const Chain& chain, Vec2 p) {
  int count = 0;
  for (const auto& c : chain.pieces) {
    if (const auto* s = std::get_if<Segment>(&c)) {
      count += crossing(s->a, s->b, p, nullptr);
      continue;
    }
    const Arc& a = std::get<Arc>(c);
    // Split at the extreme points theta = pi/2 + k pi so each part is y-monotone.
    std::vector<double> cuts{a.theta_start};
    const double lo = std::min(a.theta_start, a.theta_end);
    const double hi = std::max(a.theta_start, a.theta_end);
    std::vector<double> inner;
    for (double k = std::ceil((lo - pi / 2) / pi); pi / 2 + k * pi < hi; k += 1.0) {
      const double th = pi / 2 + k * pi;
      if (th > lo) inner.push_back(th);
    }
    if (a.theta_end < a.theta_start) std::reverse(inner.begin(), inner.end());
    cuts.insert(cuts.end(), inner.begin(), inner.end());
    cuts.push_back(a.theta_end);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Curve piece = Arc{a.center, a.radius, cuts[i], cuts[i + 1]};
      count += crossing(on_circle(a.center, a.radius, cuts[i]),
                        on_circle(a.center, a.radius, cuts[i + 1]), p, &piece);
    }
  }
  return (count % 2) == 1;
}

bool contains(const DomainSpec& spec, Vec2 p) {
  if (!chain_contains(spec.outer, p)) return false;
  for (const auto& h : spec.holes) {
    if (chain_contains(h, p)) return false;
  }
  return true;
}

Vec2 RigidMotion::apply(Vec2 p) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
}

namespace {

Curve transform_curve(const Curve& c, const RigidMotion& m) {
  return std::visit(
      Overloaded{[&](const Segment& s) -> Curve { return Segment{m.apply(s.a), m.apply(s.b)}; },
                 [&](const Arc& a) -> Curve {
                   return Arc{m.apply(a.center), a.radius, a.theta_start + m.angle,
                              a.theta_end + m.angle};
                 }},
      c);
}

Chain transform_chain(const Chain& chain, const RigidMotion& m) {
  Chain out;
  for (const auto& c : chain.pieces) out.pieces.push_back(transform_curve(c, m));
  return out;
}

}  // namespace

DomainSpec transformed(const DomainSpec& spec, const RigidMotion& m) {
  DomainSpec out;
  out.name = spec.name;
  out.outer = transform_chain(spec.outer, m);
  for (const auto& h : spec.holes) out.holes.push_back(transform_chain(h, m));
  for (const auto& piece : spec.dirichlet) {
    out.dirichlet.push_back(std::visit(
        Overloaded{[&](const ClosedDisk& d) -> DirichletPiece {
                     return ClosedDisk{m.apply(d.center), d.radius};
                   },
                   [&](const InteriorSegment& s) -> DirichletPiece {
                     return InteriorSegment{m.apply(s.a), m.apply(s.b)};
                   },
                   [](const auto& other) -> DirichletPiece { return other; }},
        piece));
  }
  for (const auto& s : spec.seeds) out.seeds.push_back(m.apply(s));
  return out;
}

namespace {

struct Interval {
  double lo;
  double hi;
};

// Dirichlet parameter intervals per chain, normalized into [0, n].
std::vector<std::vector<Interval>> dirichlet_intervals(const DomainSpec& spec) {
  const auto all = chains(spec);
  std::vector<std::vector<Interval>> out(all.size());
  auto add = [&](int chain, double from, double to) {
    const double n = static_cast<double>(all[chain]->pieces.size());
    if (to > from) {
      if (to <= n) {
        out[chain].push_back({from, to});
      } else {
        out[chain].push_back({from, n});
        out[chain].push_back({0.0, to - n});
      }
    } else {
      out[chain].push_back({from, n});
      out[chain].push_back({0.0, to});
    }
  };
  for (const auto& piece : spec.dirichlet) {
    if (const auto* a = std::get_if<BoundaryArc>(&piece)) {
      add(a->chain, a->from, a->to);
    } else if (const auto* e = std::get_if<PolygonEdge>(&piece)) {
      add(0, e->index, e->index + 1.0);
    }
  }
  return out;
}

}  // namespace

std::vector<TaggedCurve> tagged_boundary(const DomainSpec& spec) {
  const auto all = chains(spec);
  const auto intervals = dirichlet_intervals(spec);
  std::vector<TaggedCurve> out;
  for (std::size_t ci = 0; ci < all.size(); ++ci) {
    const auto& pieces = all[ci]->pieces;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      std::vector<double> cuts{0.0, 1.0};
      for (const auto& iv : intervals[ci]) {
        for (double v : {iv.lo, iv.hi}) {
          const double f = v - static_cast<double>(k);
          if (f > 1e-12 && f < 1.0 - 1e-12) cuts.push_back(f);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = static_cast<double>(k) + 0.5 * (cuts[i] + cuts[i + 1]);
        const bool dir = std::any_of(intervals[ci].begin(), intervals[ci].end(),
                                     [mid](const Interval& iv) { return mid > iv.lo && mid < iv.hi; });
        Curve piece = (cuts[i] == 0.0 && cuts[i + 1] == 1.0)
                          ? pieces[k]
                          : sub_curve(pieces[k], cuts[i], cuts[i + 1]);
        out.push_back({std::move(piece), static_cast<int>(ci), dir});
      }
    }
  }
  return out;
}

std::vector<Curve> dirichlet_curves(const DomainSpec& spec) {
  std::vector<Curve> out;
  for (const auto& t : tagged_boundary(spec)) {
    if (t.dirichlet) out.push_back(t.curve);
  }
  for (const auto& piece : spec.dirichlet) {
    if (const auto* d = std::get_if<ClosedDisk>(&piece)) {
      out.push_back(Arc{d->center, d->radius, 0.0, 2.0 * pi});
    } else if (const auto* s = std::get_if<InteriorSegment>(&piece)) {
      out.push_back(Segment{s->a, s->b});
    }
  }
  return out;
}

double distance_to_boundary_or_dirichlet(const DomainSpec& spec, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Chain* ch : chains(spec)) {
    for (const auto& c : ch->pieces) best = std::min(best, detail::distance_to_curve(c, p));
  }
  for (const auto& c : dirichlet_curves(spec)) best = std::min(best, detail::distance_to_curve(c, p));
  return best;
}

namespace {

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = orient(a, b, c);
  const double d2 = orient(a, b, d);
  const double d3 = orient(c, d, a);
  const double d4 = orient(c, d, b);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

struct PolyEdge {
  Vec2 a;
  Vec2 b;
  int chain;
  int piece;
};

}  // namespace

void validate(const DomainSpec& spec) {
  if (spec.outer.pieces.empty()) throw GeometryError("domain '" + spec.name + "': empty outer boundary");
  if (!spec.mirrors.empty()) {
    const bool ok = spec.fundamental.size() == 1 && spec.mirrors.size() <= 2 &&
                    (spec.mirrors.size() == 1 || spec.mirrors[0].axis != spec.mirrors[1].axis) &&
                    std::all_of(spec.mirrors.begin(), spec.mirrors.end(), [](const Mirror& m) {
                      return (m.axis == 0 || m.axis == 1) && std::isfinite(m.offset);
                    });
    if (!ok) throw GeometryError("domain '" + spec.name + "': mirrors need one or two distinct axes and a fundamental piece");
    if (!spec.fundamental[0].mirrors.empty()) throw GeometryError("domain '" + spec.name + "': nested mirrors");
  }
  const double scale = detail::quick_diameter(spec);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw GeometryError("domain '" + spec.name + "': degenerate outer boundary");
  }
  const double tol = 1e-9 * scale;
  const auto all = chains(spec);
  for (std::size_t ci = 0; ci < all.size(); ++ci) {
    const auto& pieces = all[ci]->pieces;
    if (pieces.empty()) throw GeometryError("domain '" + spec.name + "': empty hole chain");
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      if (length(pieces[k]) <= tol) {
        throw GeometryError("domain '" + spec.name + "': zero-length boundary piece");
      }
      if (const auto* a = std::get_if<Arc>(&pieces[k]); a && !(a->radius > 0.0)) {
        throw GeometryError("domain '" + spec.name + "': arc with non-positive radius");
      }
      const Vec2 e = end_point(pieces[k]);
      const Vec2 s = start_point(pieces[(k + 1) % pieces.size()]);
      if (distance(e, s) > tol) {
        throw GeometryError("domain '" + spec.name + "': boundary chain is not closed");
      }
    }
    const double area = signed_area(*all[ci]);
    if (ci == 0 && !(area > 0.0)) {
      throw GeometryError("domain '" + spec.name + "': outer boundary must run counterclockwise");
    }
    if (ci > 0 && !(area < 0.0)) {
      throw GeometryError("domain '" + spec.name + "': holes must run clockwise");
    }
  }

  // Simplicity: no two non-adjacent polygonized edges cross.
  std::vector<PolyEdge> edges;
  for (std::size_t ci = 0; ci < all.size(); ++ci) {
    const auto& pieces = all[ci]->pieces;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const double step = std::holds_alternative<Arc>(pieces[k]) ? length(pieces[k]) / 48.0
                                                                 : length(pieces[k]);
      const auto pts = sample_curve(pieces[k], step);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        edges.push_back({pts[i], pts[i + 1], static_cast<int>(ci), static_cast<int>(k)});
      }
    }
  }
  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (edges[i].chain != edges[j].chain) return false;
    if (j == i + 1) return true;
    return i == 0 || edges[i - 1].chain != edges[i].chain ? (j + 1 == edges.size() || edges[j + 1].chain != edges[j].chain)
                                                          : false;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (adjacent(i, j)) continue;
      if (segments_cross(edges[i].a, edges[i].b, edges[j].a, edges[j].b)) {
        throw GeometryError("domain '" + spec.name + "': boundary is self-intersecting");
      }
    }
  }
  for (std::size_t ci = 1; ci < all.size(); ++ci) {
    if (!chain_contains(spec.outer, point_at(all[ci]->pieces.front(), 0.37))) {
      throw GeometryError("domain '" + spec.name + "': hole outside the outer boundary");
    }
  }

  auto boundary_distance = [&](Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Chain* ch : all) {
      for (const auto& c : ch->pieces) best = std::min(best, detail::distance_to_curve(c, p));
    }
    return best;
  };

  for (const auto& piece : spec.dirichlet) {
    std::visit(
        Overloaded{
            [&](const BoundaryArc& a) {
              if (a.chain < 0 || a.chain >= static_cast<int>(all.size())) {
                throw GeometryError("domain '" + spec.name + "': boundary arc on unknown chain");
              }
              const double n = static_cast<double>(all[a.chain]->pieces.size());
              if (a.from < 0 || a.from > n || a.to < 0 || a.to > 2 * n || a.from == a.to) {
                throw GeometryError("domain '" + spec.name + "': boundary arc parameters out of range");
              }
            },
            [&](const ClosedDisk& d) {
              if (!(d.radius > 0.0)) {
                throw GeometryError("domain '" + spec.name + "': Dirichlet disk with non-positive radius");
              }
              if (!contains(spec, d.center) || boundary_distance(d.center) < d.radius - tol) {
                throw GeometryError("domain '" + spec.name + "': Dirichlet disk not contained in the domain");
              }
            },
            [&](const InteriorSegment& s) {
              if (distance(s.a, s.b) <= tol) {
                throw GeometryError("domain '" + spec.name + "': degenerate Dirichlet segment");
              }
              for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const Vec2 q = lerp(s.a, s.b, t);
                const bool end = t == 0.0 || t == 1.0;
                if (!contains(spec, q) && !(end && boundary_distance(q) <= tol)) {
                  throw GeometryError("domain '" + spec.name + "': Dirichlet segment leaves the domain");
                }
              }
              for (const auto& e : edges) {
                if (segments_cross(s.a, s.b, e.a, e.b)) {
                  throw GeometryError("domain '" + spec.name + "': Dirichlet segment crosses the boundary");
                }
              }
            },
            [&](const PolygonEdge& e) {
              if (e.index < 0 || e.index >= static_cast<int>(spec.outer.pieces.size()) ||
                  !std::holds_alternative<Segment>(spec.outer.pieces[e.index])) {
                throw GeometryError("domain '" + spec.name + "': polygon edge index invalid");
              }
            }},
        piece);
  }
  for (const auto& s : spec.seeds) {
    if (!contains(spec, s)) throw GeometryError("domain '" + spec.name + "': seed point outside the domain");
  }
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_set_diameter(std::span<const Vec2> points) {
  const auto hull = convex_hull(std::vector<Vec2>(points.begin(), points.end()));
  const std::size_t n = hull.size();
  if (n == 0) return 0.0;
  if (n == 1) return 0.0;
  if (n == 2) return distance(hull[0], hull[1]);
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = hull[i];
    const Vec2 b = hull[(i + 1) % n];
    while (std::fabs(orient(a, b, hull[(j + 1) % n])) > std::fabs(orient(a, b, hull[j]))) {
      j = (j + 1) % n;
    }
    best = std::max({best, distance(a, hull[j]), distance(b, hull[j])});
  }
  return best;
}

namespace {

double blob_diameter(std::span<const Vec2> points, std::span<const Blob> disks) {
  double best = point_set_diameter(points);
  const auto hull = convex_hull(std::vector<Vec2>(points.begin(), points.end()));
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i; j < disks.size(); ++j) {
      best = std::max(best, distance(disks[i].center, disks[j].center) + disks[i].radius + disks[j].radius);
    }
    for (const auto& p : hull) best = std::max(best, distance(p, disks[i].center) + disks[i].radius);
  }
  return best;
}

}  // namespace

GeometrySummary summarize(const DomainSpec& input, const SummaryOptions& options) {
  validate(input);
  const DomainSpec spec = transformed(input, options.placement);
  GeometrySummary out;

  const double rough = detail::quick_diameter(spec);
  const double step = options.boundary_resolution * rough;
  const auto samples = detail::polygonize(spec.outer, step);
  out.diameter = point_set_diameter(samples);

  for (const Chain* ch : chains(spec)) out.area += signed_area(*ch);
  out.free_area = out.area;
  for (const auto& piece : spec.dirichlet) {
    if (const auto* d = std::get_if<ClosedDisk>(&piece)) out.free_area -= pi * d->radius * d->radius;
  }

  const BBox box = detail::chain_bbox(spec.outer);
  out.projection_length = box.hi.y - box.lo.y;

  // Dirichlet set: diameter, bounding box, placement predicates.
  const auto dcurves = dirichlet_curves(spec);
  out.has_dirichlet = !dcurves.empty();
  const double tol = 1e-12 * out.diameter;
  if (out.has_dirichlet) {
    std::vector<Vec2> pts;
    std::vector<Blob> disks;
    BBox dbox;
    for (const auto& piece : spec.dirichlet) {
      if (const auto* d = std::get_if<ClosedDisk>(&piece)) disks.push_back({d->center, d->radius});
    }
    for (const auto& piece : spec.dirichlet) {
      if (const auto* s = std::get_if<InteriorSegment>(&piece)) {
        pts.push_back(s->a);
        pts.push_back(s->b);
      }
    }
    for (const auto& t : tagged_boundary(spec)) {
      if (!t.dirichlet) continue;
      if (std::holds_alternative<Segment>(t.curve)) {
        pts.push_back(start_point(t.curve));
        pts.push_back(end_point(t.curve));
      } else {
        auto s = sample_curve(t.curve, step);
        pts.insert(pts.end(), s.begin(), s.end());
      }
    }
    for (const auto& c : dcurves) dbox.merge(detail::curve_bbox(c));
    out.dirichlet_diameter = blob_diameter(pts, disks);
    out.dirichlet_center = 0.5 * (dbox.lo + dbox.hi);
    out.miyamoto_placement = box.lo.y >= -tol && dbox.hi.x <= tol && dbox.lo.y >= -tol;
    const double inside = area_in_disk(spec, out.dirichlet_center, out.dirichlet_diameter, step);
    out.omega_plus_area = out.area - inside;
    out.r2 = std::sqrt(out.dirichlet_diameter * out.dirichlet_diameter + out.omega_plus_area / pi);
  } else {
    out.omega_plus_area = out.area;
    out.r2 = std::sqrt(out.area / pi);
  }

  if (box.lo.y >= -tol) {
    out.quadrant_area = area_right_half_plane(spec);
  } else {
    out.quadrant_area = detail::area_in_quadrant_polygonal(spec, step);
  }

  if (options.require_miyamoto && !out.miyamoto_placement) {
    throw GeometryError("domain '" + spec.name +
                        "': placement does not put the domain in {y >= 0} with D in the closed second quadrant");
  }
  return out;
}

namespace {

// Support function over a convex polygon (counterclockwise) by binary search
// on its outward edge-normal angles.
class SupportFunction {
 public:
  explicit SupportFunction(std::vector<Vec2> hull) : hull_(std::move(hull)) {
    const std::size_t n = hull_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = hull_[(i + 1) % n] - hull_[i];
      angles_.push_back(std::atan2(-e.x, e.y));
    }
    // Rotate so the angles increase from the smallest.
    start_ = static_cast<std::size_t>(std::min_element(angles_.begin(), angles_.end()) - angles_.begin());
    unwrapped_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double a = angles_[(start_ + k) % n];
      if (k > 0) {
        while (a < unwrapped_[k - 1]) a += 2.0 * pi;
      }
      unwrapped_[k] = a;
    }
  }

  /// Returns the maximizing hull vertex of x·nu.
  Vec2 argmax(Vec2 nu) const {
    const std::size_t n = hull_.size();
    if (n < 3) {
      return *std::max_element(hull_.begin(), hull_.end(),
                               [nu](Vec2 a, Vec2 b) { return dot(a, nu) < dot(b, nu); });
    }
    double th = std::atan2(nu.y, nu.x);
    while (th < unwrapped_.front()) th += 2.0 * pi;
    while (th >= unwrapped_.front() + 2.0 * pi) th -= 2.0 * pi;
    const auto it = std::lower_bound(unwrapped_.begin(), unwrapped_.end(), th);
    const std::size_t k = static_cast<std::size_t>(it - unwrapped_.begin()) % n;
    const std::size_t edge = (start_ + k) % n;
    Vec2 best = hull_[edge];
    for (std::size_t off : {n - 1, std::size_t{1}, std::size_t{2}, n - 2}) {
      const Vec2 cand = hull_[(edge + off) % n];
      if (dot(cand, nu) > dot(best, nu)) best = cand;
    }
    return best;
  }

 private:
  std::vector<Vec2> hull_;
  std::vector<double> angles_;
  std::vector<double> unwrapped_;
  std::size_t start_ = 0;
};

bool inside_dirichlet_disk(const DomainSpec& spec, Vec2 p) {
  for (const auto& piece : spec.dirichlet) {
    if (const auto* d = std::get_if<ClosedDisk>(&piece)) {
      if (distance(p, d->center) < d->radius) return true;
    }
  }
  return false;
}

}  // namespace

ConvexityVerdict neumann_convexity_check(const DomainSpec& spec, const ConvexityOptions& options) {
  const double rough = detail::quick_diameter(spec);
  const double step = options.boundary_resolution * rough;
  std::vector<Vec2> xs = detail::boundary_samples(spec, step);
  for (const auto& c : dirichlet_curves(spec)) {
    auto s = sample_curve(c, step);
    xs.insert(xs.end(), s.begin(), s.end());
  }
  const BBox box = detail::chain_bbox(spec.outer);
  const double grid = options.interior_resolution * rough;
  for (double y = box.lo.y + 0.5 * grid; y < box.hi.y; y += grid) {
    for (double x = box.lo.x + 0.5 * grid; x < box.hi.x; x += grid) {
      const Vec2 p{x, y};
      if (contains(spec, p) && !inside_dirichlet_disk(spec, p)) xs.push_back(p);
    }
  }
  const double d = point_set_diameter(xs);
  const SupportFunction support(convex_hull(xs));

  ConvexityVerdict out;
  out.worst = std::numeric_limits<double>::infinity();
  auto consider = [&](Vec2 y, Vec2 nu, const Curve* seg) {
    const Vec2 x = support.argmax(nu);
    const double value = dot(y - x, nu) / d;
    if (value < out.worst) {
      out.worst = value;
      Vec2 wy = y;
      if (seg != nullptr) {
        const Vec2 a = start_point(*seg);
        const Vec2 b = end_point(*seg);
        wy = distance(a, x) <= distance(b, x) ? a : b;
      }
      out.witness_boundary = wy;
      out.witness_interior = x;
    }
  };
  for (const auto& t : tagged_boundary(spec)) {
    if (t.dirichlet) continue;
    if (std::holds_alternative<Segment>(t.curve)) {
      const Vec2 tan = tangent_at(t.curve, 0.5);
      consider(point_at(t.curve, 0.5), Vec2{tan.y, -tan.x}, &t.curve);
    } else {
      const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil(length(t.curve) / step)));
      for (std::size_t i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n);
        const Vec2 tan = tangent_at(t.curve, s);
        consider(point_at(t.curve, s), Vec2{tan.y, -tan.x}, nullptr);
      }
    }
  }
  if (!std::isfinite(out.worst)) out.worst = 0.0;
  out.pass = out.worst >= -options.tol;
  return out;
}

ConnectednessReport connectedness_check(const DomainSpec& spec) {
  const double rough = detail::quick_diameter(spec);
  const double step = 1e-3 * rough;
  std::vector<std::vector<Blob>> pieces;
  for (const auto& piece : spec.dirichlet) {
    std::vector<Blob> blobs;
    if (const auto* d = std::get_if<ClosedDisk>(&piece)) {
      blobs.push_back({d->center, d->radius});
    } else if (const auto* s = std::get_if<InteriorSegment>(&piece)) {
      for (const auto& p : sample_curve(Segment{s->a, s->b}, step)) blobs.push_back({p, 0.0});
    } else {
      DomainSpec single = spec;
      single.dirichlet = {piece};
      for (const auto& t : tagged_boundary(single)) {
        if (!t.dirichlet) continue;
        for (const auto& p : sample_curve(t.curve, step)) blobs.push_back({p, 0.0});
      }
    }
    pieces.push_back(std::move(blobs));
  }
  const std::size_t n = pieces.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double tol = 1e-9 * rough + step;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool touch = false;
      for (const auto& a : pieces[i]) {
        for (const auto& b : pieces[j]) {
          if (distance(a.center, b.center) - a.radius - b.radius <= tol) {
            touch = true;
            break;
          }
        }
        if (touch) break;
      }
      if (touch) parent[find(i)] = find(j);
    }
  }
  ConnectednessReport out;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) == i) ++out.dirichlet_components;
  }
  out.dirichlet_connected = out.dirichlet_components == 1;
  return out;
}

double epsilon_threshold(const GeometrySummary& s) {
  if (!(s.area > 0.0) || !(s.diameter > 0.0)) {
    throw GeometryError("epsilon_threshold: diameter and area must be positive");
  }
  const double j0 = bessel::j0_first_zero();
  return std::sqrt(s.area / pi) * std::exp(-(4.0 * pi / (j0 * j0)) * s.diameter * s.diameter / s.area);
}

}  // namespace hotspots::geometry
