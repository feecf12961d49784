#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hotspots/error.hpp"
#include "hotspots/lab.hpp"

namespace hotspots::lab {

namespace {

constexpr int kBands = 10;
constexpr double kSize = 600.0;

// Blue (negative) through white to red (positive).
std::string band_color(int band) {
  const double t = (band + 0.5) / kBands * 2.0 - 1.0;
  int r = 255, g = 255, b = 255;
  if (t < 0) {
    r = g = static_cast<int>(std::lround(255 * (1 + t)));
  } else {
    g = b = static_cast<int>(std::lround(255 * (1 - t)));
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

struct Frame {
  double x0, y1, scale;
  std::string pt(Vec2 p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", (p.x - x0) * scale + 10.0, (y1 - p.y) * scale + 10.0);
    return buf;
  }
};

std::string polyline(const Frame& f, const std::vector<Vec2>& pts, const char* style) {
  std::string s = "<polyline fill=\"none\" " + std::string(style) + " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += f.pt(pts[i]);
  }
  return s + "\"/>\n";
}

}  // namespace

std::string render_svg(const CaseReport& report) {
  if (report.solutions.empty()) throw LabError("report carries no eigenfields to draw");
  const auto& coarse = report.solutions.front();
  const auto& m = *coarse.mesh;
  const int field = report.critical.field;
  const Eigen::VectorXd& u = coarse.fields.at(field);

  double x0 = m.vertices[0].x, x1 = x0, y0 = m.vertices[0].y, y1 = y0;
  for (const auto& v : m.vertices) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  const Frame f{x0, y1, kSize / std::max(x1 - x0, y1 - y0)};
  const double umax = std::max(u.cwiseAbs().maxCoeff(), 1e-300);

  char head[256];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n",
                (x1 - x0) * f.scale + 20.0, (y1 - y0) * f.scale + 20.0);
  std::string s = head;
  s += "<g stroke=\"none\">\n";
  for (const auto& t : m.triangles) {
    const double mean = (u(t[0]) + u(t[1]) + u(t[2])) / (3.0 * umax);
    const int band = std::clamp(static_cast<int>(std::floor((mean + 1.0) / 2.0 * kBands)), 0, kBands - 1);
    s += "<polygon fill=\"" + band_color(band) + "\" points=\"" + f.pt(m.vertices[t[0]]) + ' ' +
         f.pt(m.vertices[t[1]]) + ' ' + f.pt(m.vertices[t[2]]) + "\"/>\n";
  }
  s += "</g>\n";

  for (const auto& e : m.boundary_edges) {
    const bool d = m.dirichlet[e.v[0]] && m.dirichlet[e.v[1]];
    s += polyline(f, {m.vertices[e.v[0]], m.vertices[e.v[1]]},
                  d ? "stroke=\"#c00000\" stroke-width=\"4\"" : "stroke=\"black\" stroke-width=\"1.5\"");
  }

  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (m.dirichlet[i]) continue;
    pos = pos || u(i) > 0;
    neg = neg || u(i) < 0;
  }
  if (pos && neg) {
    for (const auto& line : analysis::nodal_set(m, u).polylines) {
      s += polyline(f, line, "stroke=\"#006000\" stroke-width=\"2\"");
    }
  }

  for (const auto& c : report.critical.candidates) {
    char buf[160];
    const auto p = f.pt(c.location);
    const auto comma = p.find(',');
    std::snprintf(buf, sizeof buf, "<circle cx=\"%s\" cy=\"%s\" r=\"5\" fill=\"%s\" stroke=\"black\"/>\n",
                  p.substr(0, comma).c_str(), p.substr(comma + 1).c_str(), c.confirmed ? "yellow" : "none");
    s += buf;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace hotspots::lab
