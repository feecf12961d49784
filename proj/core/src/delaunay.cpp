#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hotspots/error.hpp"

namespace hotspots::mesh::detail {

namespace {

constexpr std::uint64_t kNoEdge = std::numeric_limits<std::uint64_t>::max();

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double ab2 = norm2(ab);
  const double ac2 = norm2(ac);
  return a + Vec2{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
}

}  // namespace

Cdt::Cdt(Vec2 lo, Vec2 hi, std::vector<Circle> circles) : circles_(std::move(circles)) {
  const Vec2 c = 0.5 * (lo + hi);
  const double m = std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
  scale_ = m;
  pts_ = {{c.x - 30.0 * m, c.y - 30.0 * m}, {c.x + 30.0 * m, c.y - 30.0 * m}, {c.x, c.y + 30.0 * m}};
  vtri_ = {0, 0, 0};
  corner_ = {0, 0, 0};
  Tri t;
  t.v = {0, 1, 2};
  tris_.push_back(t);
  mark_.push_back(0);
}

double Cdt::incircle(int t, Vec2 p) const {
  const Tri& T = tris_[t];
  const Vec2 a = pts_[T.v[0]] - p;
  const Vec2 b = pts_[T.v[1]] - p;
  const Vec2 c = pts_[T.v[2]] - p;
  return norm2(a) * cross(b, c) + norm2(b) * cross(c, a) + norm2(c) * cross(a, b);
}

int Cdt::locate(Vec2 p, int hint) const {
  int t = (hint >= 0 && hint < static_cast<int>(tris_.size()) && tris_[hint].alive) ? hint : last_;
  if (!tris_[t].alive) t = -1;
  int rot = 0;
  const std::size_t limit = 4 * tris_.size() + 100;
  for (std::size_t step = 0; t >= 0 && step < limit; ++step) {
    const Tri& T = tris_[t];
    bool moved = false;
    for (int k = 0; k < 3; ++k) {
      const int i = (k + rot) % 3;
      const Vec2 a = pts_[T.v[(i + 1) % 3]];
      const Vec2 b = pts_[T.v[(i + 2) % 3]];
      if (orient(a, b, p) < 0.0) {
        t = T.nbr[i];
        moved = true;
        break;
      }
    }
    rot = (rot + 1) % 3;
    if (!moved) return t;
  }
  for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
    const Tri& T = tris_[i];
    if (!T.alive) continue;
    if (orient(pts_[T.v[0]], pts_[T.v[1]], p) >= 0.0 && orient(pts_[T.v[1]], pts_[T.v[2]], p) >= 0.0 &&
        orient(pts_[T.v[2]], pts_[T.v[0]], p) >= 0.0) {
      return i;
    }
  }
  return -1;
}

std::optional<std::pair<int, int>> Cdt::find_edge(int a, int b) const {
  const int start = vtri_[a];
  int t = start;
  if (start >= 0) {
    do {
      const Tri& T = tris_[t];
      int k = 0;
      while (k < 3 && T.v[k] != a) ++k;
      if (k == 3) break;
      if (T.v[(k + 1) % 3] == b) return std::make_pair(t, (k + 2) % 3);
      if (T.v[(k + 2) % 3] == b) return std::make_pair(t, (k + 1) % 3);
      t = T.nbr[(k + 1) % 3];
    } while (t >= 0 && t != start);
    if (t == start) return std::nullopt;
  }
  for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
    const Tri& T = tris_[i];
    if (!T.alive) continue;
    for (int k = 0; k < 3; ++k) {
      if (T.v[(k + 1) % 3] == a && T.v[(k + 2) % 3] == b) return std::make_pair(i, k);
      if (T.v[(k + 1) % 3] == b && T.v[(k + 2) % 3] == a) return std::make_pair(i, k);
    }
  }
  return std::nullopt;
}

bool Cdt::build_cavity(Vec2 p, const std::vector<int>& seeds, std::uint64_t allowed, std::vector<int>& cavity) {
  if (mark_.size() < tris_.size()) mark_.resize(tris_.size(), 0);
  ++stamp_;
  cavity.clear();
  for (int s : seeds) {
    if (s >= 0 && mark_[s] != stamp_) {
      mark_[s] = stamp_;
      cavity.push_back(s);
    }
  }
  for (std::size_t i = 0; i < cavity.size(); ++i) {
    const Tri& T = tris_[cavity[i]];
    for (int e = 0; e < 3; ++e) {
      const int nb = T.nbr[e];
      if (nb < 0 || mark_[nb] == stamp_) continue;
      if (T.fixed[e] && edge_key(T.v[(e + 1) % 3], T.v[(e + 2) % 3]) != allowed) continue;
      if (incircle(nb, p) > 0.0) {
        mark_[nb] = stamp_;
        cavity.push_back(nb);
      }
    }
  }

  // Keep the cavity star-shaped with respect to p.
  const int out = stamp_ - 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int t : cavity) {
      if (mark_[t] != stamp_) continue;
      const Tri& T = tris_[t];
      for (int e = 0; e < 3; ++e) {
        const int nb = T.nbr[e];
        if (nb >= 0 && mark_[nb] == stamp_) continue;
        if (orient(pts_[T.v[(e + 1) % 3]], pts_[T.v[(e + 2) % 3]], p) > 0.0) continue;
        if (std::find(seeds.begin(), seeds.end(), t) != seeds.end()) return false;
        mark_[t] = out;
        changed = true;
        break;
      }
    }
    if (!changed) break;
    // Drop pieces no longer connected to a seed.
    std::vector<int> reach;
    ++stamp_;
    const int keep = stamp_;
    for (int s : seeds) {
      if (s >= 0 && mark_[s] == keep - 1) {
        mark_[s] = keep;
        reach.push_back(s);
      }
    }
    for (std::size_t i = 0; i < reach.size(); ++i) {
      const Tri& T = tris_[reach[i]];
      for (int e = 0; e < 3; ++e) {
        const int nb = T.nbr[e];
        if (nb >= 0 && mark_[nb] == keep - 1) {
          mark_[nb] = keep;
          reach.push_back(nb);
        }
      }
    }
    cavity = std::move(reach);
  }
  return true;
}

int Cdt::commit(Vec2 p, const std::vector<int>& cavity, std::optional<std::pair<int, int>> split) {
  const int np = static_cast<int>(pts_.size());
  pts_.push_back(p);
  vtri_.push_back(-1);
  corner_.push_back(0);

  struct Rim {
    int a, b, outer, owner;
    std::uint8_t fixed;
  };
  std::vector<Rim> rim;
  for (int t : cavity) {
    const Tri& T = tris_[t];
    for (int e = 0; e < 3; ++e) {
      const int nb = T.nbr[e];
      if (nb >= 0 && mark_[nb] == stamp_) continue;
      rim.push_back({T.v[(e + 1) % 3], T.v[(e + 2) % 3], nb, t, T.fixed[e]});
    }
  }

  const int base = static_cast<int>(tris_.size());
  std::unordered_map<int, int> by_start;
  std::unordered_map<int, int> by_end;
  for (std::size_t k = 0; k < rim.size(); ++k) {
    by_start[rim[k].a] = base + static_cast<int>(k);
    by_end[rim[k].b] = base + static_cast<int>(k);
  }
  for (std::size_t k = 0; k < rim.size(); ++k) {
    const Rim& r = rim[k];
    Tri T;
    T.v = {np, r.a, r.b};
    T.nbr[0] = r.outer;
    T.fixed[0] = r.fixed;
    T.nbr[1] = by_start.at(r.b);
    T.nbr[2] = by_end.at(r.a);
    T.region = tris_[r.owner].region;
    if (split) {
      const auto [sa, sb] = *split;
      if (r.a == sa || r.a == sb) T.fixed[2] = 1;
      if (r.b == sa || r.b == sb) T.fixed[1] = 1;
    }
    tris_.push_back(T);
    const int id = base + static_cast<int>(k);
    if (r.outer >= 0) {
      Tri& O = tris_[r.outer];
      for (int j = 0; j < 3; ++j) {
        if (O.nbr[j] == r.owner && O.v[(j + 1) % 3] == r.b && O.v[(j + 2) % 3] == r.a) O.nbr[j] = id;
      }
    }
    vtri_[r.a] = id;
    vtri_[r.b] = id;
  }
  for (int t : cavity) tris_[t].alive = false;
  vtri_[np] = base;
  last_ = base;
  mark_.resize(tris_.size(), 0);
  if (split) {
    const auto [sa, sb] = *split;
    const std::uint64_t key = edge_key(sa, sb);
    const SegInfo info = segs_.at(key);
    segs_.erase(key);
    segs_[edge_key(sa, np)] = info;
    segs_[edge_key(np, sb)] = info;
  }
  return np;
}

int Cdt::insert_free(Vec2 p, int hint) {
  const int t = locate(p, hint);
  if (t < 0) throw MeshError("point outside the triangulation");
  const Tri& T = tris_[t];
  const double tol2 = (1e-13 * scale_) * (1e-13 * scale_);
  for (int k = 0; k < 3; ++k) {
    if (norm2(pts_[T.v[k]] - p) <= tol2) return T.v[k];
  }
  std::vector<int> seeds{t};
  for (int e = 0; e < 3; ++e) {
    if (T.nbr[e] >= 0 && !T.fixed[e] &&
        orient(pts_[T.v[(e + 1) % 3]], pts_[T.v[(e + 2) % 3]], p) == 0.0) {
      seeds.push_back(T.nbr[e]);
    }
  }
  std::vector<int> cavity;
  if (!build_cavity(p, seeds, kNoEdge, cavity)) throw MeshError("vertex insertion failed (degenerate cavity)");
  return commit(p, cavity, std::nullopt);
}

int Cdt::add_vertex(Vec2 p, bool input_corner) {
  const int v = insert_free(p, last_);
  if (input_corner) corner_[v] = 1;
  return v;
}

void Cdt::add_segment(int a, int b, SegInfo info) { pending_.push_back({{a, b}, info}); }

Vec2 Cdt::split_point(int a, int b, const SegInfo& info) const {
  const Vec2 pa = pts_[a];
  const Vec2 pb = pts_[b];
  if (info.curve >= 0) {
    const Circle& c = circles_[info.curve];
    const double ta = std::atan2(pa.y - c.center.y, pa.x - c.center.x);
    const double tb = std::atan2(pb.y - c.center.y, pb.x - c.center.x);
    const double d = std::remainder(tb - ta, 2.0 * std::numbers::pi);
    const double tm = ta + 0.5 * d;
    return {c.center.x + c.radius * std::cos(tm), c.center.y + c.radius * std::sin(tm)};
  }
  if (info.kind != SegKind::Soft && (corner_[a] != 0) != (corner_[b] != 0)) {
    // Concentric shells around input corners.
    const Vec2 from = corner_[a] ? pa : pb;
    const Vec2 to = corner_[a] ? pb : pa;
    const double len = distance(from, to);
    const double d = std::exp2(std::round(std::log2(0.5 * len)));
    return from + (d / len) * (to - from);
  }
  return 0.5 * (pa + pb);
}

void Cdt::set_fixed(int a, int b) {
  const auto e = find_edge(a, b);
  if (!e) return;
  Tri& T = tris_[e->first];
  T.fixed[e->second] = 1;
  const int nb = T.nbr[e->second];
  if (nb >= 0) {
    Tri& N = tris_[nb];
    for (int j = 0; j < 3; ++j) {
      if (N.nbr[j] == e->first) N.fixed[j] = 1;
    }
  }
}

void Cdt::recover_segments() {
  std::vector<std::pair<std::pair<int, int>, SegInfo>> stack(pending_.rbegin(), pending_.rend());
  pending_.clear();
  std::size_t guard = 0;
  while (!stack.empty()) {
    if (++guard > 50'000'000) throw MeshError("segment recovery did not terminate");
    const auto [ab, info] = stack.back();
    stack.pop_back();
    const auto [a, b] = ab;
    if (a == b) continue;
    if (find_edge(a, b)) {
      set_fixed(a, b);
      segs_[edge_key(a, b)] = info;
      continue;
    }
    const Vec2 m = split_point(a, b, info);
    const int v = insert_free(m, vtri_[a]);
    if (v == a || v == b) throw MeshError("segment recovery stalled (segments too close)");
    stack.push_back({{v, b}, info});
    stack.push_back({{a, v}, info});
  }
}

void Cdt::label_regions(const std::function<bool(Vec2)>& inside) {
  for (auto& T : tris_) T.region = -1;
  std::vector<int> comp;
  for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
    if (!tris_[s].alive || tris_[s].region != -1) continue;
    comp.assign(1, s);
    tris_[s].region = -2;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const Tri& T = tris_[comp[i]];
      for (int e = 0; e < 3; ++e) {
        const int nb = T.nbr[e];
        if (nb < 0 || tris_[nb].region != -1) continue;
        if (T.fixed[e]) {
          const auto it = segs_.find(edge_key(T.v[(e + 1) % 3], T.v[(e + 2) % 3]));
          if (it != segs_.end() && it->second.kind != SegKind::Soft) continue;
        }
        tris_[nb].region = -2;
        comp.push_back(nb);
      }
    }
    bool touches_super = false;
    int best = comp.front();
    double best_area = -1.0;
    for (int t : comp) {
      const Tri& T = tris_[t];
      if (is_super(T.v[0]) || is_super(T.v[1]) || is_super(T.v[2])) touches_super = true;
      const double ar = orient(pts_[T.v[0]], pts_[T.v[1]], pts_[T.v[2]]);
      if (ar > best_area) {
        best_area = ar;
        best = t;
      }
    }
    int region = 0;
    if (!touches_super) {
      const Tri& B = tris_[best];
      const Vec2 c = (pts_[B.v[0]] + pts_[B.v[1]] + pts_[B.v[2]]) / 3.0;
      region = inside(c) ? 1 : 0;
    }
    for (int t : comp) tris_[t].region = region;
  }
}

bool Cdt::is_bad(int t) const {
  const Tri& T = tris_[t];
  if (!T.alive || T.region != 1) return false;
  const Vec2 p0 = pts_[T.v[0]], p1 = pts_[T.v[1]], p2 = pts_[T.v[2]];
  const double l[3] = {distance(p1, p2), distance(p2, p0), distance(p0, p1)};
  const double area2 = orient(p0, p1, p2);
  if (area2 <= 0.0) return false;
  const double r = l[0] * l[1] * l[2] / (2.0 * area2);
  const double s = refine_->size((p0 + p1 + p2) / 3.0);
  if (r * std::sqrt(3.0) > s) return true;
  int k = 0;
  if (l[1] < l[k]) k = 1;
  if (l[2] < l[k]) k = 2;
  const double sin_min = l[k] / (2.0 * r);
  if (sin_min >= std::sin(refine_->min_angle_deg * std::numbers::pi / 180.0)) return false;
  // Angles between two segments cannot be improved.
  if (T.fixed[(k + 1) % 3] && T.fixed[(k + 2) % 3]) return false;
  return true;
}

bool Cdt::encroached(std::uint64_t key) const {
  const auto it = segs_.find(key);
  if (it == segs_.end() || it->second.kind == SegKind::Soft) return false;
  const int a = static_cast<int>(key & 0xffffffffu);
  const int b = static_cast<int>(key >> 32);
  const auto e = find_edge(a, b);
  if (!e) return false;
  const Vec2 pa = pts_[a], pb = pts_[b];
  auto check = [&](int t) {
    if (t < 0 || tris_[t].region != 1) return false;
    const Tri& T = tris_[t];
    for (int k = 0; k < 3; ++k) {
      const int v = T.v[k];
      if (v == a || v == b) continue;
      if (dot(pa - pts_[v], pb - pts_[v]) < 0.0) return true;
    }
    return false;
  };
  return check(e->first) || check(tris_[e->first].nbr[e->second]);
}

int Cdt::split_segment(int a, int b) {
  const std::uint64_t key = edge_key(a, b);
  const SegInfo info = segs_.at(key);
  const Vec2 m = split_point(a, b, info);
  const auto e = find_edge(a, b);
  if (!e) throw MeshError("lost a boundary segment during refinement");
  std::vector<int> seeds{e->first};
  if (tris_[e->first].nbr[e->second] >= 0) seeds.push_back(tris_[e->first].nbr[e->second]);
  std::vector<int> cavity;
  if (!build_cavity(m, seeds, key, cavity)) throw MeshError("segment split failed (degenerate cavity)");
  return commit(m, cavity, std::make_pair(a, b));
}

void Cdt::after_insert(int v) {
  const int start = vtri_[v];
  int t = start;
  do {
    const Tri& T = tris_[t];
    if (T.region == 1) {
      if (is_bad(t)) tri_queue_.push_back({t, T.v});
      for (int e = 0; e < 3; ++e) {
        if (!T.fixed[e]) continue;
        const std::uint64_t key = edge_key(T.v[(e + 1) % 3], T.v[(e + 2) % 3]);
        if (encroached(key)) seg_queue_.push_back(key);
      }
    }
    int k = 0;
    while (T.v[k] != v) ++k;
    t = T.nbr[(k + 1) % 3];
  } while (t >= 0 && t != start);
}

Cdt::Walk Cdt::walk_to(int t, Vec2 target, int& end_tri, std::pair<int, int>& hit) const {
  const Tri& S = tris_[t];
  const Vec2 o = (pts_[S.v[0]] + pts_[S.v[1]] + pts_[S.v[2]]) / 3.0;
  int cur = t;
  int from = -1;
  for (int step = 0; step < 100000; ++step) {
    const Tri& T = tris_[cur];
    int exit = -1;
    bool inside = true;
    for (int e = 0; e < 3; ++e) {
      const Vec2 a = pts_[T.v[(e + 1) % 3]];
      const Vec2 b = pts_[T.v[(e + 2) % 3]];
      if (orient(a, b, target) < 0.0) {
        inside = false;
        if (T.nbr[e] == from && from >= 0) continue;
        if (orient(o, target, a) * orient(o, target, b) <= 0.0 && exit < 0) exit = e;
      }
    }
    if (inside) {
      end_tri = cur;
      return Walk::Reached;
    }
    if (exit < 0) {
      for (int e = 0; e < 3 && exit < 0; ++e) {
        if (orient(pts_[T.v[(e + 1) % 3]], pts_[T.v[(e + 2) % 3]], target) < 0.0) exit = e;
      }
    }
    const int a = T.v[(exit + 1) % 3];
    const int b = T.v[(exit + 2) % 3];
    if (T.fixed[exit]) {
      const auto it = segs_.find(edge_key(a, b));
      if (it == segs_.end() || it->second.kind == SegKind::Soft) return Walk::Blocked;
      hit = {a, b};
      return Walk::HitSegment;
    }
    if (T.nbr[exit] < 0) return Walk::Blocked;
    from = cur;
    cur = T.nbr[exit];
  }
  return Walk::Blocked;
}

void Cdt::refine(const RefineOptions& options) {
  refine_ = &options;
  seg_queue_.clear();
  tri_queue_.clear();
  std::vector<std::uint64_t> keys;
  keys.reserve(segs_.size());
  for (const auto& [key, info] : segs_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  for (auto key : keys) {
    if (encroached(key)) seg_queue_.push_back(key);
  }
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
    if (is_bad(t)) tri_queue_.push_back({t, tris_[t].v});
  }
  const double tol2 = (1e-13 * scale_) * (1e-13 * scale_);
  std::vector<int> cavity;
  while (true) {
    if (pts_.size() > options.max_vertices) {
      throw MeshError("mesh refinement exceeded the vertex budget of " + std::to_string(options.max_vertices));
    }
    if (!seg_queue_.empty()) {
      const std::uint64_t key = seg_queue_.front();
      seg_queue_.pop_front();
      if (!segs_.count(key) || !encroached(key)) continue;
      const int v = split_segment(static_cast<int>(key & 0xffffffffu), static_cast<int>(key >> 32));
      after_insert(v);
      continue;
    }
    if (tri_queue_.empty()) break;
    const auto [t, verts] = tri_queue_.front();
    tri_queue_.pop_front();
    if (!tris_[t].alive || tris_[t].v != verts || !is_bad(t)) continue;
    const Tri& T = tris_[t];
    const Vec2 c = circumcenter(pts_[T.v[0]], pts_[T.v[1]], pts_[T.v[2]]);
    int end = -1;
    std::pair<int, int> hit;
    const Walk w = walk_to(t, c, end, hit);
    if (w == Walk::Blocked) continue;
    if (w == Walk::HitSegment) {
      if (segs_.count(edge_key(hit.first, hit.second))) {
        after_insert(split_segment(hit.first, hit.second));
      }
      if (tris_[t].alive) tri_queue_.push_back({t, verts});
      continue;
    }
    const Tri& E = tris_[end];
    bool duplicate = false;
    for (int k = 0; k < 3; ++k) duplicate = duplicate || norm2(pts_[E.v[k]] - c) <= tol2;
    if (duplicate) continue;
    if (!build_cavity(c, {end}, kNoEdge, cavity)) continue;
    std::vector<std::pair<int, int>> hits;
    for (int ct : cavity) {
      const Tri& C = tris_[ct];
      for (int e = 0; e < 3; ++e) {
        if (!C.fixed[e]) continue;
        const int a = C.v[(e + 1) % 3];
        const int b = C.v[(e + 2) % 3];
        const auto it = segs_.find(edge_key(a, b));
        if (it == segs_.end() || it->second.kind == SegKind::Soft) continue;
        if (dot(pts_[a] - c, pts_[b] - c) < 0.0) hits.push_back({a, b});
      }
    }
    if (!hits.empty()) {
      for (const auto& [a, b] : hits) {
        if (segs_.count(edge_key(a, b))) after_insert(split_segment(a, b));
      }
      if (tris_[t].alive) tri_queue_.push_back({t, verts});
      continue;
    }
    after_insert(commit(c, cavity, std::nullopt));
  }
  refine_ = nullptr;
}

}  // namespace hotspots::mesh::detail
