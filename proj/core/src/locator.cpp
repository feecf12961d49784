#include "hotspots/locator.hpp"

#include <algorithm>
#include <cmath>

namespace hotspots::mesh {

Locator::Locator(const Mesh& mesh) : mesh_(&mesh) {
  Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
  for (const auto& p : mesh.vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double w = std::max(hi.x - lo.x, 1e-300), h = std::max(hi.y - lo.y, 1e-300);
  const double nt = std::max<double>(1.0, static_cast<double>(mesh.triangles.size()));
  cell_ = std::sqrt(w * h / nt) * 2.0;
  if (!(cell_ > 0.0)) cell_ = std::max(w, h);
  nx_ = std::max(1, static_cast<int>(std::ceil(w / cell_)));
  ny_ = std::max(1, static_cast<int>(std::ceil(h / cell_)));
  lo_ = lo;
  std::vector<int> count(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  auto range = [&](std::size_t t, int& i0, int& i1, int& j0, int& j1) {
    const auto& tri = mesh.triangles[t];
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = mesh.vertices[tri[k]];
      x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    i0 = std::clamp(static_cast<int>((x0 - lo_.x) / cell_), 0, nx_ - 1);
    i1 = std::clamp(static_cast<int>((x1 - lo_.x) / cell_), 0, nx_ - 1);
    j0 = std::clamp(static_cast<int>((y0 - lo_.y) / cell_), 0, ny_ - 1);
    j1 = std::clamp(static_cast<int>((y1 - lo_.y) / cell_), 0, ny_ - 1);
  };
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    int i0, i1, j0, j1;
    range(t, i0, i1, j0, j1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) ++count[j * nx_ + i + 1];
  }
  for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
  start_ = count;
  items_.assign(count.back(), 0);
  std::vector<int> fill(count.begin(), count.end() - 1);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    int i0, i1, j0, j1;
    range(t, i0, i1, j0, j1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) items_[fill[j * nx_ + i]++] = static_cast<int>(t);
  }
}

Locator::Hit Locator::probe(int t, Vec2 p) const {
  const auto& tri = mesh_->triangles[t];
  const Vec2 a = mesh_->vertices[tri[0]], b = mesh_->vertices[tri[1]], c = mesh_->vertices[tri[2]];
  const double area = orient(a, b, c);
  Hit h;
  h.triangle = t;
  h.bary = {orient(p, b, c) / area, orient(a, p, c) / area, orient(a, b, p) / area};
  if (h.bary[0] >= 0 && h.bary[1] >= 0 && h.bary[2] >= 0) return h;
  h.outside = std::min({distance_to_segment(p, a, b), distance_to_segment(p, b, c), distance_to_segment(p, c, a)});
  for (auto& l : h.bary) l = std::max(l, 0.0);
  const double s = h.bary[0] + h.bary[1] + h.bary[2];
  for (auto& l : h.bary) l /= s;
  return h;
}

std::optional<Locator::Hit> Locator::locate(Vec2 p, double tol) const {
  const int ci = static_cast<int>(std::floor((p.x - lo_.x) / cell_));
  const int cj = static_cast<int>(std::floor((p.y - lo_.y) / cell_));
  const int reach = tol > 0.0 ? static_cast<int>(std::ceil(tol / cell_)) : 0;
  std::optional<Hit> best;
  for (int j = cj - reach; j <= cj + reach; ++j) {
    if (j < 0 || j >= ny_) continue;
    for (int i = ci - reach; i <= ci + reach; ++i) {
      if (i < 0 || i >= nx_) continue;
      for (int k = start_[j * nx_ + i]; k < start_[j * nx_ + i + 1]; ++k) {
        const Hit h = probe(items_[k], p);
        if (h.outside == 0.0) return h;
        if (h.outside <= tol && (!best || h.outside < best->outside)) best = h;
      }
    }
  }
  return best;
}

std::optional<double> Locator::interpolate(const Eigen::VectorXd& field, Vec2 p, double tol) const {
  const auto h = locate(p, tol);
  if (!h) return std::nullopt;
  const auto& tri = mesh_->triangles[h->triangle];
  return h->bary[0] * field(tri[0]) + h->bary[1] * field(tri[1]) + h->bary[2] * field(tri[2]);
}

}  // namespace hotspots::mesh
