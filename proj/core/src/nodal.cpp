#include <algorithm>
#include <cmath>
#include <map>

#include "hotspots/analysis.hpp"
#include "hotspots/error.hpp"
#include "hotspots/locator.hpp"

namespace hotspots::analysis {

NodalSet nodal_set(const mesh::Mesh& m, const Eigen::VectorXd& u) {
  NodalSet out;
  const std::size_t n = m.vertices.size();
  out.sign.assign(n, 0);
  out.component.assign(n, -1);
  bool pos = false, neg = false;
  for (std::size_t v = 0; v < n; ++v) {
    out.sign[v] = u(v) > 0.0 ? 1 : (u(v) < 0.0 ? -1 : 0);
    if (m.dirichlet[v]) out.sign[v] = 0;
    pos = pos || out.sign[v] > 0;
    neg = neg || out.sign[v] < 0;
  }
  if (!(pos && neg)) throw AnalysisError("field does not change sign");

  const auto adj = vertex_neighbors(m);
  for (std::size_t v = 0; v < n; ++v) {
    if (out.component[v] >= 0 || out.sign[v] == 0) continue;
    const int s = out.sign[v];
    const int id = s > 0 ? out.positive_domains++ : out.negative_domains++;
    out.component[v] = id;
    std::vector<int> stack{static_cast<int>(v)};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int w : adj[a]) {
        if (out.component[w] < 0 && out.sign[w] == s) {
          out.component[w] = id;
          stack.push_back(w);
        }
      }
    }
  }

  // Zero crossings: nonnegative values count as positive so every mixed
  // triangle contributes exactly one segment.
  auto up = [&](int v) { return u(v) >= 0.0; };
  auto cross_point = [&](int a, int b) {
    const double t = u(a) / (u(a) - u(b));
    return lerp(m.vertices[a], m.vertices[b], t);
  };
  std::map<std::uint64_t, std::vector<std::uint64_t>> links;
  std::map<std::uint64_t, Vec2> where;
  auto key = [](int a, int b) {
    const auto lo = static_cast<std::uint32_t>(std::min(a, b)), hi = static_cast<std::uint32_t>(std::max(a, b));
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
  };
  for (const auto& tri : m.triangles) {
    std::vector<std::uint64_t> ends;
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      if (up(a) != up(b)) {
        ends.push_back(key(a, b));
        where[key(a, b)] = cross_point(a, b);
      }
    }
    if (ends.size() == 2) {
      links[ends[0]].push_back(ends[1]);
      links[ends[1]].push_back(ends[0]);
    }
  }
  std::map<std::uint64_t, bool> used;
  auto walk = [&](std::uint64_t start) {
    std::vector<Vec2> line{where[start]};
    used[start] = true;
    std::uint64_t cur = start;
    for (;;) {
      std::uint64_t next = 0;
      bool found = false;
      for (auto k : links[cur]) {
        if (!used[k]) {
          next = k;
          found = true;
          break;
        }
      }
      if (!found) break;
      used[next] = true;
      line.push_back(where[next]);
      cur = next;
    }
    return line;
  };
  // Open chains start at crossings with a single link (boundary ends).
  for (const auto& [k, l] : links) {
    if (l.size() == 1 && !used[k]) out.polylines.push_back(walk(k));
  }
  for (const auto& [k, l] : links) {
    if (!used[k]) {
      auto line = walk(k);
      line.push_back(line.front());
      out.polylines.push_back(std::move(line));
    }
  }
  return out;
}

Isometry Isometry::reflection(Vec2 point, Vec2 direction) {
  const Vec2 e = direction / norm(direction);
  Isometry s;
  s.a11 = 2 * e.x * e.x - 1;
  s.a12 = 2 * e.x * e.y;
  s.a21 = s.a12;
  s.a22 = 2 * e.y * e.y - 1;
  s.b = point - Vec2{s.a11 * point.x + s.a12 * point.y, s.a21 * point.x + s.a22 * point.y};
  return s;
}

Isometry Isometry::rotation(Vec2 center, double angle) {
  Isometry s;
  s.a11 = std::cos(angle);
  s.a12 = -std::sin(angle);
  s.a21 = std::sin(angle);
  s.a22 = std::cos(angle);
  s.b = center - Vec2{s.a11 * center.x + s.a12 * center.y, s.a21 * center.x + s.a22 * center.y};
  return s;
}

const char* parity_name(Parity p) noexcept {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Neither: return "neither";
  }
  return "neither";
}

SymmetryReport symmetry_check(const mesh::Mesh& m, const Eigen::VectorXd& u, const Isometry& sigma, double tol) {
  const mesh::Locator loc(m);
  const double reach = 0.1 * m.h;
  const double umax = u.cwiseAbs().maxCoeff();
  SymmetryReport r;
  if (umax == 0.0) {
    r.parity = Parity::Even;
    return r;
  }
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const auto image = loc.interpolate(u, sigma.apply(m.vertices[v]), reach);
    if (!image) throw AnalysisError("isometry is not a symmetry of the domain");
    r.even_deviation = std::max(r.even_deviation, std::fabs(*image - u(v)));
    r.odd_deviation = std::max(r.odd_deviation, std::fabs(*image + u(v)));
  }
  r.even_deviation /= umax;
  r.odd_deviation /= umax;
  if (r.even_deviation <= tol && r.even_deviation <= r.odd_deviation) {
    r.parity = Parity::Even;
  } else if (r.odd_deviation <= tol) {
    r.parity = Parity::Odd;
  }
  return r;
}

const char* hypothesis_name(NodalHypothesis h) noexcept {
  switch (h) {
    case NodalHypothesis::Holds: return "HYPOTHESIS_HOLDS";
    case NodalHypothesis::False: return "HYPOTHESIS_FALSE";
    case NodalHypothesis::Degenerate: return "DEGENERATE";
  }
  return "DEGENERATE";
}

NodalDomainReport nodal_domain_report(const geometry::DomainSpec& spec, std::span<const fem::EigenSolution> levels) {
  if (!spec.dirichlet.empty()) throw AnalysisError("nodal domain check needs D empty");
  if (levels.size() < 2) throw AnalysisError("nodal domain check needs two solution levels");
  const auto& fine = levels.back();
  const auto& coarse = levels[levels.size() - 2];
  if (fine.eigenvalues.size() < 3 || coarse.eigenvalues.size() < 3) {
    throw AnalysisError("nodal domain check needs three eigenpairs");
  }
  const auto ex = fem::extrapolate(coarse, fine);
  NodalDomainReport rep;
  rep.mu2 = ex.value[1];
  rep.mu3 = ex.value[2];
  rep.diameter = geometry::summarize(spec).diameter;
  if (rep.mu3 - rep.mu2 <= 10.0 * (ex.est_error[1] + ex.est_error[2])) {
    rep.hypothesis = NodalHypothesis::Degenerate;
    return rep;
  }
  const auto& m = *fine.mesh;
  const auto& u = fine.fields[1];
  const auto ns = nodal_set(m, u);
  rep.domains = ns.domains();
  std::vector<Vec2> plus, minus;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (ns.sign[v] > 0) plus.push_back(m.vertices[v]);
    if (ns.sign[v] < 0) minus.push_back(m.vertices[v]);
  }
  for (const auto& line : ns.polylines) {
    plus.insert(plus.end(), line.begin(), line.end());
    minus.insert(minus.end(), line.begin(), line.end());
  }
  rep.diameter_plus = geometry::point_set_diameter(plus);
  rep.diameter_minus = geometry::point_set_diameter(minus);
  const bool holds = rep.domains == 2 && rep.diameter_plus <= 0.5 * rep.diameter &&
                     rep.diameter_minus <= 0.5 * rep.diameter;
  rep.hypothesis = holds ? NodalHypothesis::Holds : NodalHypothesis::False;
  if (holds) rep.critical_points = find_critical_points(spec, levels, 1);
  return rep;
}

}  // namespace hotspots::analysis
