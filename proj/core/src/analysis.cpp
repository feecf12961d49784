#include "hotspots/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "geometry_internal.hpp"
#include "hotspots/bessel.hpp"
#include "hotspots/error.hpp"
#include "hotspots/locator.hpp"

namespace hotspots::analysis {

const char* extremum_name(Extremum e) noexcept {
  switch (e) {
    case Extremum::SaddleLike: return "saddle-like";
    case Extremum::LocalMax: return "local-max";
    case Extremum::LocalMin: return "local-min";
    case Extremum::Unresolved: return "unresolved";
  }
  return "unresolved";
}

const char* verdict_name(CriticalVerdict v) noexcept {
  switch (v) {
    case CriticalVerdict::NoInteriorCriticalPoints: return "NO_INTERIOR_CRITICAL_POINTS";
    case CriticalVerdict::CriticalPointsFound: return "CRITICAL_POINTS_FOUND";
    case CriticalVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::vector<Vec2> recover_gradient(const mesh::Mesh& m, const Eigen::VectorXd& u) {
  std::vector<Vec2> g(m.vertices.size());
  std::vector<double> w(m.vertices.size(), 0.0);
  for (const auto& tri : m.triangles) {
    const Vec2 p[3] = {m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]};
    const double area2 = orient(p[0], p[1], p[2]);
    Vec2 grad;
    for (int i = 0; i < 3; ++i) {
      const Vec2 e = p[(i + 2) % 3] - p[(i + 1) % 3];
      grad = grad + u(tri[i]) * Vec2{-e.y, e.x} / area2;
    }
    for (int i = 0; i < 3; ++i) {
      g[tri[i]] = g[tri[i]] + 0.5 * area2 * grad;
      w[tri[i]] += 0.5 * area2;
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (w[v] > 0.0) g[v] = g[v] / w[v];
  }
  return g;
}

std::vector<std::vector<int>> vertex_neighbors(const mesh::Mesh& m) {
  std::vector<std::vector<int>> adj(m.vertices.size());
  for (const auto& tri : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      adj[tri[i]].push_back(tri[(i + 1) % 3]);
      adj[tri[i]].push_back(tri[(i + 2) % 3]);
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

std::vector<int> ring(const std::vector<std::vector<int>>& adj, int v, int rings) {
  std::vector<int> out{v};
  std::vector<int> depth{0};
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (depth[k] == rings) continue;
    for (int w : adj[out[k]]) {
      if (std::find(out.begin(), out.end(), w) == out.end()) {
        out.push_back(w);
        depth.push_back(depth[k] + 1);
      }
    }
  }
  out.erase(out.begin());
  return out;
}

namespace {

// Complex cos 2θ / sin 2θ coefficient of u on the circle |x - p| = r, divided
// by J2(√λ r), and the value at p.
bool mode_two(const mesh::Mesh& m, const Eigen::VectorXd& u, double lambda, Vec2 p, double r,
              std::complex<double>& a2, double& u0) {
  const mesh::Locator loc(m);
  const auto centre = loc.interpolate(u, p);
  if (!centre) return false;
  u0 = *centre;
  constexpr int n = 128;
  std::complex<double> acc;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    const auto val = loc.interpolate(u, p + r * Vec2{std::cos(th), std::sin(th)});
    if (!val) return false;
    acc += *val * std::polar(1.0, -2.0 * th);
  }
  const double z = std::sqrt(lambda) * r;
  a2 = acc * (2.0 / n) / (2.0 * bessel::j1(z) / z - bessel::j0(z));
  return true;
}

}  // namespace

Classification classify_critical_point(std::span<const fem::EigenSolution> levels, int field, Vec2 p, double r) {
  Classification out;
  const std::size_t first = levels.size() >= 2 ? levels.size() - 2 : 0;
  std::vector<std::complex<double>> a2;
  std::vector<double> u0;
  for (std::size_t l = first; l < levels.size(); ++l) {
    std::complex<double> a;
    double c = 0.0;
    const double lambda = levels[l].eigenvalues[field];
    if (!(lambda > 0.0) || !mode_two(*levels[l].mesh, levels[l].fields[field], lambda, p, r, a, c)) return out;
    a2.push_back(a);
    u0.push_back(c);
  }
  std::complex<double> a = a2.back();
  double c = u0.back();
  if (a2.size() == 2) {
    a = (4.0 * a2[1] - a2[0]) / 3.0;
    c = (4.0 * u0[1] - u0[0]) / 3.0;
  }
  if (c == 0.0) return out;
  out.mode_ratio = std::abs(a) / (2.0 * std::fabs(c));
  if (out.mode_ratio < 0.9) {
    out.kind = c > 0.0 ? Extremum::LocalMax : Extremum::LocalMin;
  } else if (out.mode_ratio > 1.1) {
    out.kind = Extremum::SaddleLike;
  }
  return out;
}

namespace {

std::vector<double> vertex_distances(const geometry::DomainSpec& spec, const mesh::Mesh& m) {
  std::vector<geometry::Curve> curves;
  for (const auto* ch : geometry::chains(spec)) curves.insert(curves.end(), ch->pieces.begin(), ch->pieces.end());
  for (const auto& c : geometry::dirichlet_curves(spec)) curves.push_back(c);
  std::vector<double> dist(m.vertices.size(), std::numeric_limits<double>::infinity());
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    for (const auto& c : curves) dist[v] = std::min(dist[v], geometry::detail::distance_to_curve(c, m.vertices[v]));
  }
  return dist;
}

struct LevelData {
  std::vector<double> ratio;  // NaN for ineligible vertices
  std::vector<double> gradient;
  double max_gradient = 0.0;
};

LevelData level_ratios(const geometry::DomainSpec& spec, const mesh::Mesh& m, const Eigen::VectorXd& u,
                       double delta) {
  const auto g = recover_gradient(m, u);
  const auto dist = vertex_distances(spec, m);
  LevelData out;
  out.ratio.assign(m.vertices.size(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& gv : g) out.gradient.push_back(norm(gv));
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (m.boundary[v] || m.dirichlet[v] || dist[v] < delta) continue;
    out.max_gradient = std::max(out.max_gradient, norm(g[v]));
  }
  if (out.max_gradient == 0.0) return out;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (m.boundary[v] || m.dirichlet[v] || dist[v] < delta) continue;
    out.ratio[v] = norm(g[v]) / out.max_gradient;
  }
  return out;
}

}  // namespace

CriticalPointReport find_critical_points(const geometry::DomainSpec& spec,
                                         std::span<const fem::EigenSolution> levels, int field,
                                         const CriticalPointOptions& options) {
  if (levels.empty()) throw AnalysisError("no solution levels given");
  for (const auto& s : levels) {
    if (!s.mesh) throw AnalysisError("solution without a mesh");
    if (field < 0 || field >= static_cast<int>(s.fields.size())) throw AnalysisError("field index out of range");
  }
  const double area0 = mesh::total_area(*levels.front().mesh);
  for (const auto& s : levels) {
    if (std::fabs(mesh::total_area(*s.mesh) - area0) > 1e-2 * area0) {
      throw AnalysisError("solution levels do not share the same domain");
    }
  }

  CriticalPointReport rep;
  rep.tau = options.tau;
  rep.delta = options.delta > 0.0 ? options.delta : 2.0 * levels.back().mesh->h;
  rep.field = field;
  const double d = geometry::summarize(spec).diameter;

  std::vector<LevelData> data;
  for (const auto& s : levels) {
    data.push_back(level_ratios(spec, *s.mesh, s.fields[field], rep.delta));
    rep.max_gradient.push_back(data.back().max_gradient);
  }

  const auto& fine = *levels.back().mesh;
  const auto& fr = data.back().ratio;
  const auto adj = vertex_neighbors(fine);
  const auto& coarse = *levels.front().mesh;
  const auto coarse_adj = vertex_neighbors(coarse);
  std::vector<int> picks;
  for (std::size_t v = 0; v < fine.vertices.size(); ++v) {
    if (!(fr[v] <= options.tau)) continue;
    // Compared against every neighbour, including those inside the margin, so
    // that minima pushed against the margin by a boundary critical point drop out.
    const auto& fg = data.back().gradient;
    bool local_min = true;
    for (int w : adj[v]) {
      if (fg[w] < fg[v] || (fg[w] == fg[v] && w < static_cast<int>(v))) local_min = false;
    }
    if (local_min) picks.push_back(static_cast<int>(v));
  }
  std::sort(picks.begin(), picks.end(), [&](int a, int b) { return fr[a] < fr[b] || (fr[a] == fr[b] && a < b); });

  const double reach_fine = options.persistence * fine.h;
  auto dist = vertex_distances(spec, fine);
  bool any_confirmed = false;
  for (int v : picks) {
    const Vec2 p = fine.vertices[v];
    bool merged = false;
    for (const auto& c : rep.candidates) {
      if (distance(c.location, p) <= reach_fine) merged = true;
    }
    if (merged) continue;
    Candidate c;
    c.location = p;
    c.distance_over_d = dist[v] / d;
    {
      std::size_t near = 0;
      for (std::size_t w = 1; w < coarse.vertices.size(); ++w) {
        if (distance(coarse.vertices[w], p) < distance(coarse.vertices[near], p)) near = w;
      }
      double r = 0.0;
      for (int w : coarse_adj[near]) r += distance(coarse.vertices[near], coarse.vertices[w]);
      r /= std::max<std::size_t>(1, coarse_adj[near].size());
      const auto cls = classify_critical_point(levels, field, p, r);
      c.classification = cls.kind;
      c.mode_ratio = cls.mode_ratio;
    }
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
      const auto& m = *levels[l].mesh;
      const double reach = options.persistence * m.h;
      double best = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t w = 0; w < m.vertices.size(); ++w) {
        const double r = data[l].ratio[w];
        if (!std::isnan(r) && distance(m.vertices[w], p) <= reach && !(best <= r)) best = r;
      }
      c.ratios.push_back(best);
    }
    c.ratios.push_back(fr[v]);
    bool ok = true;
    for (std::size_t l = 0; l < c.ratios.size(); ++l) {
      const double r = c.ratios[l];
      if (!(r <= options.tau)) ok = false;
      if (l > 0 && ok) {
        const double prev = c.ratios[l - 1];
        if (r > prev / options.decrease && r > options.noise_floor) ok = false;
      }
    }
    const double last = c.ratios.back();
    if (last > 0.5 * options.tau && last < options.tau) ok = false;
    c.confirmed = ok;
    any_confirmed = any_confirmed || ok;
    rep.candidates.push_back(std::move(c));
  }

  if (rep.candidates.empty()) {
    rep.verdict = CriticalVerdict::NoInteriorCriticalPoints;
  } else if (any_confirmed) {
    rep.verdict = CriticalVerdict::CriticalPointsFound;
  } else {
    rep.verdict = CriticalVerdict::Inconclusive;
  }
  return rep;
}

ComparisonField comparison_field(const fem::EigenSolution& s, Vec2 p, int field) {
  if (!s.mesh) throw AnalysisError("solution without a mesh");
  if (field < 0 || field >= static_cast<int>(s.fields.size())) throw AnalysisError("field index out of range");
  const auto& m = *s.mesh;
  const auto& u = s.fields[field];
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const double dd = distance(m.vertices[v], p);
    if (dd < bd) bd = dd, best = static_cast<int>(v);
  }
  if (best < 0 || m.boundary[best] || m.dirichlet[best]) {
    throw AnalysisError("comparison point lies on the boundary");
  }
  ComparisonField out;
  out.vertex = best;
  const double k = std::sqrt(std::max(0.0, s.eigenvalues[field]));
  const Vec2 c = m.vertices[best];
  out.values.resize(u.size());
  for (Eigen::Index v = 0; v < u.size(); ++v) {
    out.values(v) = u(best) * bessel::j0(k * distance(m.vertices[v], c)) - u(v);
  }
  out.min_on_dirichlet = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (m.dirichlet[v]) out.min_on_dirichlet = std::min(out.min_on_dirichlet, out.values(v));
  }

  const auto adj = vertex_neighbors(m);
  const auto near = ring(adj, best, 3);
  const double tol = 1e-14 * u.cwiseAbs().maxCoeff();
  auto sgn = [&](int v) { return out.values(v) > tol ? 1 : (out.values(v) < -tol ? -1 : 0); };
  std::vector<int> label(near.size(), -1);
  for (std::size_t i = 0; i < near.size(); ++i) {
    if (label[i] >= 0 || sgn(near[i]) == 0) continue;
    const int s0 = sgn(near[i]);
    label[i] = out.sign_components++;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (int w : adj[near[a]]) {
        const auto it = std::find(near.begin(), near.end(), w);
        if (it == near.end()) continue;
        const auto j = static_cast<std::size_t>(it - near.begin());
        if (label[j] < 0 && sgn(w) == s0) {
          label[j] = label[i];
          stack.push_back(j);
        }
      }
    }
  }
  return out;
}

}  // namespace hotspots::analysis
