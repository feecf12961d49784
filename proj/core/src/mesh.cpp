#include "hotspots/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "delaunay.hpp"
#include "geometry_internal.hpp"
#include "hotspots/error.hpp"

namespace hotspots::mesh {

using geometry::Arc;
using geometry::Curve;
using geometry::Segment;
using std::numbers::pi;

const char* tag_name(Tag tag) noexcept { return tag == Tag::Dirichlet ? "DIRICHLET" : "NEUMANN"; }

namespace {

struct Feature {
  Curve curve;
  double diameter = 0.0;
};

double curve_diameter(const Curve& c) {
  if (const auto* s = std::get_if<Segment>(&c)) return distance(s->a, s->b);
  const Arc& a = std::get<Arc>(c);
  const double sweep = std::fabs(a.theta_end - a.theta_start);
  if (sweep >= pi) return 2.0 * a.radius;
  return 2.0 * a.radius * std::sin(0.5 * sweep);
}

class SizeField {
 public:
  SizeField(const geometry::DomainSpec& spec, const MeshOptions& o) : h_(o.h), g_(o.grading) {
    if (!g_.enabled) return;
    for (const auto& c : geometry::dirichlet_curves(spec)) {
      const double d = curve_diameter(c);
      if (d > 0.0 && g_.near_fraction * d < h_) features_.push_back({c, d});
    }
  }

  double operator()(Vec2 p) const {
    double s = h_;
    for (const auto& f : features_) {
      const double dist = geometry::detail::distance_to_curve(f.curve, p);
      const double near = g_.near_fraction * f.diameter;
      s = std::min(s, near + g_.growth * std::max(0.0, dist - g_.reach * f.diameter));
    }
    return std::max(s, h_ / 64.0);
  }

 private:
  double h_;
  Grading g_;
  std::vector<Feature> features_;
};

int circle_index(std::vector<CircleRef>& circles, Vec2 c, double r) {
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (circles[i].center == c && circles[i].radius == r) return static_cast<int>(i);
  }
  circles.push_back({c, r});
  return static_cast<int>(circles.size()) - 1;
}

// Parameters 0 = t_0 < ... < t_n = 1 spaced so each piece is about one local size long.
std::vector<double> spacing(const Curve& c, const SizeField& size, int min_pieces) {
  const double len = geometry::length(c);
  double smin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) smin = std::min(smin, size(geometry::point_at(c, i / 256.0)));
  const int samples = static_cast<int>(std::clamp(std::ceil(8.0 * len / smin), 64.0, 400000.0));
  std::vector<double> measure(samples + 1, 0.0);
  double prev = 1.0 / size(geometry::point_at(c, 0.0));
  for (int i = 1; i <= samples; ++i) {
    const double cur = 1.0 / size(geometry::point_at(c, static_cast<double>(i) / samples));
    measure[i] = measure[i - 1] + 0.5 * (prev + cur) * len / samples;
    prev = cur;
  }
  const int n = std::max(min_pieces, static_cast<int>(std::ceil(measure.back() - 1e-9)));
  std::vector<double> t{0.0};
  int j = 0;
  for (int k = 1; k < n; ++k) {
    const double target = measure.back() * k / n;
    while (j < samples && measure[j + 1] < target) ++j;
    const double span = measure[j + 1] - measure[j];
    const double frac = span > 0.0 ? (target - measure[j]) / span : 0.0;
    t.push_back((j + frac) / samples);
  }
  t.push_back(1.0);
  return t;
}

int min_pieces(const Curve& c) {
  if (const auto* a = std::get_if<Arc>(&c)) {
    return std::max(1, static_cast<int>(std::ceil(std::fabs(a->theta_end - a->theta_start) / (pi / 6.0))));
  }
  return 1;
}

Mesh triangulate_piece(const geometry::DomainSpec& spec, const SizeField& size, const MeshOptions& options) {
  Mesh out;
  geometry::detail::BBox box = geometry::detail::chain_bbox(spec.outer);

  struct PendingSeg {
    int a, b;
    detail::SegInfo info;
  };
  std::vector<Vec2> points;
  std::vector<char> corner;
  std::vector<PendingSeg> segs;
  auto add_point = [&](Vec2 p, bool is_corner) {
    points.push_back(p);
    corner.push_back(is_corner ? 1 : 0);
    return static_cast<int>(points.size()) - 1;
  };

  // Boundary chains, split at the ends of Dirichlet pieces.
  const auto tagged = geometry::tagged_boundary(spec);
  for (std::size_t i = 0; i < tagged.size();) {
    std::size_t j = i;
    while (j < tagged.size() && tagged[j].chain == tagged[i].chain) ++j;
    const int first = static_cast<int>(points.size());
    std::vector<std::pair<int, detail::SegInfo>> chain_points;
    for (std::size_t k = i; k < j; ++k) {
      const Curve& c = tagged[k].curve;
      detail::SegInfo info;
      info.kind = tagged[k].dirichlet ? detail::SegKind::Dirichlet : detail::SegKind::Neumann;
      if (const auto* a = std::get_if<Arc>(&c)) info.curve = circle_index(out.circles, a->center, a->radius);
      const auto ts = spacing(c, size, min_pieces(c));
      for (std::size_t q = 0; q + 1 < ts.size(); ++q) {
        chain_points.push_back({add_point(geometry::point_at(c, ts[q]), q == 0), info});
      }
    }
    for (std::size_t q = 0; q < chain_points.size(); ++q) {
      const int a = chain_points[q].first;
      const int b = q + 1 < chain_points.size() ? chain_points[q + 1].first : first;
      segs.push_back({a, b, chain_points[q].second});
    }
    i = j;
  }

  // Dirichlet disks become holes, interior segments become constrained edges.
  std::vector<geometry::ClosedDisk> disks;
  for (const auto& piece : spec.dirichlet) {
    if (const auto* d = std::get_if<geometry::ClosedDisk>(&piece)) {
      disks.push_back(*d);
      const Curve circle = Arc{d->center, d->radius, 0.0, 2.0 * pi};
      detail::SegInfo info{detail::SegKind::Dirichlet, circle_index(out.circles, d->center, d->radius)};
      const auto ts = spacing(circle, size, 1);
      const int n = static_cast<int>(ts.size()) - 1;
      if (n < 8) {
        throw MeshError("h too large to resolve a Dirichlet disk (" + std::to_string(n) +
                        " segments, need at least 8)");
      }
      const int first = static_cast<int>(points.size());
      for (int q = 0; q < n; ++q) add_point(geometry::point_at(circle, static_cast<double>(q) / n), false);
      for (int q = 0; q < n; ++q) segs.push_back({first + q, first + (q + 1) % n, info});
    } else if (const auto* s = std::get_if<geometry::InteriorSegment>(&piece)) {
      const Curve c = Segment{s->a, s->b};
      const auto ts = spacing(c, size, 1);
      int prev = add_point(s->a, true);
      for (std::size_t q = 1; q < ts.size(); ++q) {
        const int cur = add_point(q + 1 == ts.size() ? s->b : geometry::point_at(c, ts[q]), q + 1 == ts.size());
        segs.push_back({prev, cur, {detail::SegKind::InteriorDirichlet, -1}});
        prev = cur;
      }
    }
  }

  // Seeds with a symmetric rosette of soft edges around them.
  std::vector<Curve> obstacles;
  for (const auto& t : tagged) obstacles.push_back(t.curve);
  for (const auto& c : geometry::dirichlet_curves(spec)) obstacles.push_back(c);
  for (const auto& seed : spec.seeds) {
    const int centre = add_point(seed, true);
    const double rho = 0.5 * size(seed);
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& c : obstacles) clearance = std::min(clearance, geometry::detail::distance_to_curve(c, seed));
    if (clearance <= 3.0 * rho) continue;
    int ring[6];
    for (int k = 0; k < 6; ++k) {
      const double th = pi / 6.0 + k * pi / 3.0;
      ring[k] = add_point(seed + rho * Vec2{std::cos(th), std::sin(th)}, false);
    }
    for (int k = 0; k < 6; ++k) {
      segs.push_back({centre, ring[k], {detail::SegKind::Soft, -1}});
      segs.push_back({ring[k], ring[(k + 1) % 6], {detail::SegKind::Soft, -1}});
    }
  }

  for (const auto& p : points) box.add(p);
  std::vector<detail::Circle> circles;
  for (const auto& c : out.circles) circles.push_back({c.center, c.radius});
  detail::Cdt cdt(box.lo, box.hi, circles);
  std::vector<int> index(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) index[i] = cdt.add_vertex(points[i], corner[i] != 0);
  for (const auto& s : segs) cdt.add_segment(index[s.a], index[s.b], s.info);
  cdt.recover_segments();
  cdt.label_regions([&](Vec2 p) {
    if (!geometry::contains(spec, p)) return false;
    for (const auto& d : disks) {
      if (distance(p, d.center) <= d.radius) return false;
    }
    return true;
  });
  detail::RefineOptions ro;
  ro.size = [&size](Vec2 p) { return size(p); };
  ro.min_angle_deg = options.min_angle_deg;
  ro.max_vertices = options.max_vertices;
  cdt.refine(ro);

  // Extract interior triangles with compact vertex numbering.
  const auto& pts = cdt.points();
  const auto& tris = cdt.triangles();
  const auto& segmap = cdt.segments();
  std::vector<int> remap(pts.size(), -1);
  for (const auto& T : tris) {
    if (!T.alive || T.region != 1) continue;
    for (int v : T.v) remap[v] = 0;
  }
  for (std::size_t v = 0; v < pts.size(); ++v) {
    if (remap[v] == 0) {
      remap[v] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(pts[v]);
    }
  }
  std::vector<std::uint64_t> slit_seen;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& T = tris[t];
    if (!T.alive || T.region != 1) continue;
    out.triangles.push_back({remap[T.v[0]], remap[T.v[1]], remap[T.v[2]]});
    for (int e = 0; e < 3; ++e) {
      if (!T.fixed[e]) continue;
      const int a = T.v[(e + 1) % 3];
      const int b = T.v[(e + 2) % 3];
      const auto it = segmap.find(detail::edge_key(a, b));
      if (it == segmap.end()) continue;
      const auto& info = it->second;
      if (info.kind == detail::SegKind::Soft) continue;
      const bool other_inside = T.nbr[e] >= 0 && tris[T.nbr[e]].region == 1;
      if (info.kind == detail::SegKind::InteriorDirichlet && other_inside) {
        if (static_cast<int>(t) < T.nbr[e]) out.constrained_edges.push_back({remap[a], remap[b]});
        continue;
      }
      if (other_inside) continue;
      BoundaryEdge be;
      be.v = {remap[a], remap[b]};
      be.tag = info.kind == detail::SegKind::Neumann ? Tag::Neumann : Tag::Dirichlet;
      be.curve = info.curve;
      out.boundary_edges.push_back(be);
    }
  }
  if (out.triangles.empty()) throw MeshError("triangulation produced no interior triangles");

  const std::size_t nv = out.vertices.size();
  out.lineage.assign(nv, {-1, -1});
  out.dirichlet.assign(nv, 0);
  out.boundary.assign(nv, 0);
  for (const auto& e : out.boundary_edges) {
    for (int v : e.v) {
      out.boundary[v] = 1;
      if (e.tag == Tag::Dirichlet) out.dirichlet[v] = 1;
    }
  }
  for (const auto& e : out.constrained_edges) {
    for (int v : e) out.dirichlet[v] = 1;
  }
  out.h = options.h;
  out.level = 0;
  return out;
}

// Images of the fundamental mesh under every product of the mirrors. Points
// on a mirror line are fixed exactly, so shared vertices match by value.
Mesh unfold(const Mesh& piece, const std::vector<geometry::Mirror>& mirrors) {
  Mesh out;
  out.h = piece.h;
  std::map<std::pair<double, double>, int> index;
  const int group = 1 << mirrors.size();
  auto image = [&](Vec2 p, int g) {
    for (std::size_t k = 0; k < mirrors.size(); ++k) {
      if (g & (1 << k)) p = mirrors[k].apply(p);
    }
    return p;
  };
  auto on_mirror = [&](const BoundaryEdge& e) {
    for (const auto& m : mirrors) {
      if (m.fixes(piece.vertices[e.v[0]]) && m.fixes(piece.vertices[e.v[1]])) return true;
    }
    return false;
  };
  for (int g = 0; g < group; ++g) {
    const bool flip = std::popcount(static_cast<unsigned>(g)) % 2 == 1;
    std::vector<int> map(piece.vertices.size());
    for (std::size_t v = 0; v < piece.vertices.size(); ++v) {
      const Vec2 p = image(piece.vertices[v], g);
      const auto [it, fresh] = index.emplace(std::make_pair(p.x, p.y), static_cast<int>(out.vertices.size()));
      if (fresh) out.vertices.push_back(p);
      map[v] = it->second;
    }
    for (const auto& t : piece.triangles) {
      out.triangles.push_back(flip ? std::array<int, 3>{map[t[0]], map[t[2]], map[t[1]]}
                                   : std::array<int, 3>{map[t[0]], map[t[1]], map[t[2]]});
    }
    for (const auto& e : piece.boundary_edges) {
      if (on_mirror(e)) continue;
      BoundaryEdge be = e;
      be.v = flip ? std::array<int, 2>{map[e.v[1]], map[e.v[0]]} : std::array<int, 2>{map[e.v[0]], map[e.v[1]]};
      if (e.curve >= 0) {
        const auto& c = piece.circles[e.curve];
        be.curve = circle_index(out.circles, image(c.center, g), c.radius);
      }
      out.boundary_edges.push_back(be);
    }
    for (const auto& e : piece.constrained_edges) out.constrained_edges.push_back({map[e[0]], map[e[1]]});
  }
  const std::size_t nv = out.vertices.size();
  out.lineage.assign(nv, {-1, -1});
  out.dirichlet.assign(nv, 0);
  out.boundary.assign(nv, 0);
  for (const auto& e : out.boundary_edges) {
    for (int v : e.v) {
      out.boundary[v] = 1;
      if (e.tag == Tag::Dirichlet) out.dirichlet[v] = 1;
    }
  }
  for (const auto& e : out.constrained_edges) {
    for (int v : e) out.dirichlet[v] = 1;
  }
  return out;
}

}  // namespace

Mesh triangulate(const geometry::DomainSpec& spec, const MeshOptions& options) {
  if (!(options.h > 0.0) || !std::isfinite(options.h)) throw MeshError("mesh size h must be positive");
  geometry::validate(spec);
  const SizeField size(spec, options);
  if (spec.mirrors.empty()) return triangulate_piece(spec, size, options);
  return unfold(triangulate_piece(spec.fundamental.front(), size, options), spec.mirrors);
}

Mesh refine(const Mesh& mesh) {
  Mesh out;
  out.vertices = mesh.vertices;
  out.circles = mesh.circles;
  out.h = 0.5 * mesh.h;
  out.level = mesh.level + 1;
  const std::size_t n0 = mesh.vertices.size();
  out.lineage.resize(n0);
  for (std::size_t i = 0; i < n0; ++i) out.lineage[i] = {static_cast<int>(i), static_cast<int>(i)};

  std::unordered_map<std::uint64_t, int> curve_of;
  for (const auto& e : mesh.boundary_edges) curve_of[detail::edge_key(e.v[0], e.v[1])] = e.curve;

  std::unordered_map<std::uint64_t, int> mid;
  mid.reserve(3 * mesh.triangles.size());
  auto midpoint = [&](int a, int b) {
    const std::uint64_t key = detail::edge_key(a, b);
    const auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    Vec2 m = 0.5 * (out.vertices[a] + out.vertices[b]);
    const auto c = curve_of.find(key);
    if (c != curve_of.end() && c->second >= 0) {
      const CircleRef& circle = out.circles[c->second];
      const Vec2 d = m - circle.center;
      m = circle.center + (circle.radius / norm(d)) * d;
    }
    const int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back(m);
    out.lineage.push_back({std::min(a, b), std::max(a, b)});
    mid.emplace(key, id);
    return id;
  };

  out.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const int m0 = midpoint(t[1], t[2]);
    const int m1 = midpoint(t[2], t[0]);
    const int m2 = midpoint(t[0], t[1]);
    out.triangles.push_back({t[0], m2, m1});
    out.triangles.push_back({m2, t[1], m0});
    out.triangles.push_back({m1, m0, t[2]});
    out.triangles.push_back({m0, m1, m2});
  }
  for (const auto& e : mesh.boundary_edges) {
    const int m = mid.at(detail::edge_key(e.v[0], e.v[1]));
    out.boundary_edges.push_back({{e.v[0], m}, e.tag, e.curve});
    out.boundary_edges.push_back({{m, e.v[1]}, e.tag, e.curve});
  }
  for (const auto& e : mesh.constrained_edges) {
    const int m = mid.at(detail::edge_key(e[0], e[1]));
    out.constrained_edges.push_back({e[0], m});
    out.constrained_edges.push_back({m, e[1]});
  }
  const std::size_t nv = out.vertices.size();
  out.dirichlet.assign(nv, 0);
  out.boundary.assign(nv, 0);
  for (const auto& e : out.boundary_edges) {
    for (int v : e.v) {
      out.boundary[v] = 1;
      if (e.tag == Tag::Dirichlet) out.dirichlet[v] = 1;
    }
  }
  for (const auto& e : out.constrained_edges) {
    for (int v : e) out.dirichlet[v] = 1;
  }
  return out;
}

int connectivity(const Mesh& mesh) {
  const int nt = static_cast<int>(mesh.triangles.size());
  if (nt == 0) return 0;
  std::vector<int> parent(nt);
  for (int i = 0; i < nt; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<std::uint64_t, char> slit;
  for (const auto& e : mesh.constrained_edges) slit[detail::edge_key(e[0], e[1])] = 1;
  std::unordered_map<std::uint64_t, int> owner;
  owner.reserve(3 * nt);
  for (int t = 0; t < nt; ++t) {
    const auto& T = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const std::uint64_t key = detail::edge_key(T[(e + 1) % 3], T[(e + 2) % 3]);
      if (slit.count(key)) continue;
      const auto [it, fresh] = owner.emplace(key, t);
      if (!fresh) parent[find(t)] = find(it->second);
    }
  }
  int count = 0;
  for (int i = 0; i < nt; ++i) count += find(i) == i ? 1 : 0;
  return count;
}

double total_area(const Mesh& mesh) {
  double a = 0.0;
  for (const auto& t : mesh.triangles) {
    a += 0.5 * orient(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
  }
  return a;
}

double min_angle_deg(const Mesh& mesh) {
  double best = 180.0;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = mesh.vertices[t[k]];
      const Vec2 u = mesh.vertices[t[(k + 1) % 3]] - p;
      const Vec2 v = mesh.vertices[t[(k + 2) % 3]] - p;
      best = std::min(best, std::atan2(std::fabs(cross(u, v)), dot(u, v)) * 180.0 / pi);
    }
  }
  return best;
}

void write_off(const Mesh& mesh, std::ostream& off, std::ostream& tags) {
  char buf[96];
  off << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  for (const auto& p : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x, p.y);
    off << buf;
  }
  for (const auto& t : mesh.triangles) off << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  tags << "# edge v0 v1 tag\n";
  std::size_t i = 0;
  for (const auto& e : mesh.boundary_edges) {
    tags << i++ << ' ' << e.v[0] << ' ' << e.v[1] << ' ' << tag_name(e.tag) << '\n';
  }
  for (const auto& e : mesh.constrained_edges) tags << i++ << ' ' << e[0] << ' ' << e[1] << " DIRICHLET\n";
}

}  // namespace hotspots::mesh
