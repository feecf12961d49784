#include "hotspots/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "hotspots/error.hpp"

namespace hotspots::fem {

namespace {

using Triplet = Eigen::Triplet<double>;

void element(const mesh::Mesh& m, std::size_t t, std::vector<Triplet>& k, std::vector<Triplet>& mm) {
  const auto& tri = m.triangles[t];
  const Vec2 p[3] = {m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]};
  const double area = 0.5 * orient(p[0], p[1], p[2]);
  if (!(area > 0.0)) throw FemError("degenerate or inverted triangle " + std::to_string(t));
  Vec2 g[3];
  for (int i = 0; i < 3; ++i) {
    const Vec2 e = p[(i + 2) % 3] - p[(i + 1) % 3];
    g[i] = Vec2{-e.y, e.x} / (2.0 * area);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      k.emplace_back(tri[i], tri[j], area * dot(g[i], g[j]));
      mm.emplace_back(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
    }
  }
}

}  // namespace

System assemble(const mesh::Mesh& mesh, int threads) {
  const std::size_t nt = mesh.triangles.size();
  const int n = static_cast<int>(mesh.vertices.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(nt / 2048) + 1));
  std::vector<std::vector<Triplet>> kparts(workers), mparts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      const std::size_t lo = nt * w / workers;
      const std::size_t hi = nt * (w + 1) / workers;
      kparts[w].reserve(9 * (hi - lo));
      mparts[w].reserve(9 * (hi - lo));
      for (std::size_t t = lo; t < hi; ++t) element(mesh, t, kparts[w], mparts[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Triplet> kall, mall;
  kall.reserve(9 * nt);
  mall.reserve(9 * nt);
  for (int w = 0; w < workers; ++w) {
    kall.insert(kall.end(), kparts[w].begin(), kparts[w].end());
    mall.insert(mall.end(), mparts[w].begin(), mparts[w].end());
  }
  System s;
  s.stiffness.resize(n, n);
  s.mass.resize(n, n);
  s.stiffness.setFromTriplets(kall.begin(), kall.end());
  s.mass.setFromTriplets(mall.begin(), mall.end());
  s.dirichlet = mesh.dirichlet;
  s.dirichlet.resize(n, 0);
  return s;
}

namespace {

struct TriRule {
  double l0, l1, l2, w;
};

// Degree-5 seven-point rule on the reference triangle (weights sum to 1).
constexpr TriRule kTri7[7] = {
    {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225},
    {0.059715871789770, 0.470142064105115, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.059715871789770, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.470142064105115, 0.059715871789770, 0.132394152788506},
    {0.797426985353087, 0.101286507323456, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.797426985353087, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.101286507323456, 0.797426985353087, 0.125939180544827},
};

// Five-point Gauss-Legendre on [0, 1].
constexpr double kGx[5] = {0.5, 0.5 - 0.2692346550528416, 0.5 + 0.2692346550528416, 0.5 - 0.4530899229693320,
                           0.5 + 0.4530899229693320};
constexpr double kGw[5] = {0.2844444444444444, 0.2393143352496833, 0.2393143352496833, 0.1184634425280946,
                           0.1184634425280946};

}  // namespace

QuotientParts rayleigh_parts(const mesh::Mesh& m, const TestFunction& f) {
  QuotientParts q;
  for (const auto& tri : m.triangles) {
    const Vec2 a = m.vertices[tri[0]], b = m.vertices[tri[1]], c = m.vertices[tri[2]];
    const double area = 0.5 * orient(a, b, c);
    for (const auto& r : kTri7) {
      const Vec2 p = r.l0 * a + r.l1 * b + r.l2 * c;
      const double v = f.value(p);
      q.numerator += area * r.w * norm2(f.gradient(p));
      q.denominator += area * r.w * v * v;
    }
  }
  // Caps between curved edges and their chords, signed by which side the arc bulges.
  for (const auto& e : m.boundary_edges) {
    if (e.curve < 0) continue;
    const auto& circle = m.circles[e.curve];
    const Vec2 a = m.vertices[e.v[0]], b = m.vertices[e.v[1]];
    const double ta = std::atan2(a.y - circle.center.y, a.x - circle.center.x);
    const double tb = std::atan2(b.y - circle.center.y, b.x - circle.center.x);
    const double dt = std::remainder(tb - ta, 2.0 * std::numbers::pi);
    for (int i = 0; i < 5; ++i) {
      const double t = kGx[i];
      const double th = ta + t * dt;
      const Vec2 arc = circle.center + circle.radius * Vec2{std::cos(th), std::sin(th)};
      const Vec2 darc = circle.radius * dt * Vec2{-std::sin(th), std::cos(th)};
      const Vec2 chord = lerp(a, b, t);
      for (int j = 0; j < 5; ++j) {
        const double s = kGx[j];
        const Vec2 p = (1.0 - s) * chord + s * arc;
        const double det = cross((1.0 - s) * (b - a) + s * darc, arc - chord);
        const double w = kGw[i] * kGw[j] * det;
        const double v = f.value(p);
        q.numerator -= w * norm2(f.gradient(p));
        q.denominator -= w * v * v;
      }
    }
  }
  return q;
}

double rayleigh_quotient(const mesh::Mesh& m, const TestFunction& f) {
  double fmax = 0.0;
  for (const auto& p : m.vertices) fmax = std::max(fmax, std::fabs(f.value(p)));
  if (fmax == 0.0) throw FemError("test function vanishes identically");
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (m.dirichlet[v] && std::fabs(f.value(m.vertices[v])) > 1e-8 * fmax) {
      throw FemError("test function does not vanish on the Dirichlet set");
    }
  }
  const auto q = rayleigh_parts(m, f);
  if (!(q.denominator > 0.0)) throw FemError("test function vanishes identically");
  return q.value();
}

double rayleigh_quotient(const System& s, const Eigen::VectorXd& x) {
  const double den = x.dot(s.mass * x);
  if (!(den > 0.0)) throw FemError("field vanishes identically");
  return x.dot(s.stiffness * x) / den;
}

}  // namespace hotspots::fem
