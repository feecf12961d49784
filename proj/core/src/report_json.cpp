#include <cmath>
#include <cstdio>
#include <limits>

#include "hotspots/error.hpp"
#include "hotspots/lab.hpp"

namespace hotspots::lab {

using nlohmann::json;

namespace {

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double get_num(const json& j) { return j.is_number() ? j.get<double>() : nan(); }

double get_num(const json& j, const char* key) {
  return j.contains(key) ? get_num(j.at(key)) : nan();
}

json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::vector<double> get_nums(const json& j) {
  std::vector<double> v;
  if (j.is_array()) {
    for (const auto& x : j) v.push_back(get_num(x));
  }
  return v;
}

json opt(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

json summary_to_json(const geometry::GeometrySummary& s) {
  return {{"diameter", num(s.diameter)},
          {"area", num(s.area)},
          {"free_area", num(s.free_area)},
          {"projection_length", num(s.projection_length)},
          {"quadrant_area", num(s.quadrant_area)},
          {"miyamoto_placement", s.miyamoto_placement},
          {"has_dirichlet", s.has_dirichlet},
          {"dirichlet_diameter", num(s.dirichlet_diameter)},
          {"dirichlet_center", {num(s.dirichlet_center.x), num(s.dirichlet_center.y)}},
          {"omega_plus_area", num(s.omega_plus_area)},
          {"r2", num(s.r2)}};
}

namespace {

geometry::GeometrySummary summary_from(const json& j) {
  geometry::GeometrySummary s;
  s.diameter = get_num(j, "diameter");
  s.area = get_num(j, "area");
  s.free_area = get_num(j, "free_area");
  s.projection_length = get_num(j, "projection_length");
  s.quadrant_area = get_num(j, "quadrant_area");
  s.miyamoto_placement = j.value("miyamoto_placement", false);
  s.has_dirichlet = j.value("has_dirichlet", false);
  s.dirichlet_diameter = get_num(j, "dirichlet_diameter");
  if (j.contains("dirichlet_center")) {
    s.dirichlet_center = {get_num(j.at("dirichlet_center").at(0)), get_num(j.at("dirichlet_center").at(1))};
  }
  s.omega_plus_area = get_num(j, "omega_plus_area");
  s.r2 = get_num(j, "r2");
  return s;
}

bounds::Verdict bound_verdict_from(const std::string& s) {
  if (s == "HOLDS") return bounds::Verdict::Holds;
  if (s == "VIOLATED") return bounds::Verdict::Violated;
  return bounds::Verdict::NotApplicable;
}

}  // namespace

json bounds_to_json(const bounds::BoundReport& b) {
  json checks = json::array();
  for (const auto& c : b.checks) {
    checks.push_back({{"name", c.name},
                      {"value", num(c.value)},
                      {"bound", num(c.bound)},
                      {"slack", num(c.slack)},
                      {"verdict", bounds::verdict_name(c.verdict)},
                      {"note", c.note}});
  }
  return {{"lambda1_fem", opt(b.lambda1)},
          {"mu2_fem", opt(b.mu2)},
          {"est_error", num(b.est_error)},
          {"hotspots_threshold", num(b.hotspots_threshold)},
          {"miyamoto_bound", num(b.miyamoto_bound)},
          {"miyamoto_ratio", num(b.miyamoto_ratio)},
          {"miyamoto_limit", num(b.miyamoto_limit)},
          {"miyamoto_applicable", b.miyamoto_applicable},
          {"annulus_applicable", b.annulus_applicable},
          {"bracket_applicable", b.bracket_applicable},
          {"annulus_lambda", num(b.annulus_lambda)},
          {"annulus_upper", num(b.annulus_upper)},
          {"annulus_lower", num(b.annulus_lower)},
          {"epsilon", num(b.epsilon)},
          {"kroger_bound", num(b.kroger_bound)},
          {"checks", checks}};
}

namespace {

bounds::BoundReport bounds_from(const json& j) {
  bounds::BoundReport b;
  b.lambda1 = get_opt(j, "lambda1_fem");
  b.mu2 = get_opt(j, "mu2_fem");
  b.est_error = get_num(j, "est_error");
  b.hotspots_threshold = get_num(j, "hotspots_threshold");
  b.miyamoto_bound = get_num(j, "miyamoto_bound");
  b.miyamoto_ratio = get_num(j, "miyamoto_ratio");
  b.miyamoto_limit = get_num(j, "miyamoto_limit");
  b.miyamoto_applicable = j.value("miyamoto_applicable", false);
  b.annulus_applicable = j.value("annulus_applicable", false);
  b.bracket_applicable = j.value("bracket_applicable", false);
  b.annulus_lambda = get_num(j, "annulus_lambda");
  b.annulus_upper = get_num(j, "annulus_upper");
  b.annulus_lower = get_num(j, "annulus_lower");
  b.epsilon = get_num(j, "epsilon");
  b.kroger_bound = get_num(j, "kroger_bound");
  for (const auto& c : j.value("checks", json::array())) {
    bounds::Check k;
    k.name = c.value("name", "");
    k.value = get_num(c, "value");
    k.bound = get_num(c, "bound");
    k.slack = get_num(c, "slack");
    k.verdict = bound_verdict_from(c.value("verdict", ""));
    k.note = c.value("note", "");
    b.checks.push_back(k);
  }
  return b;
}

analysis::Extremum extremum_from(const std::string& s) {
  for (auto e : {analysis::Extremum::SaddleLike, analysis::Extremum::LocalMax, analysis::Extremum::LocalMin}) {
    if (s == analysis::extremum_name(e)) return e;
  }
  return analysis::Extremum::Unresolved;
}

analysis::CriticalVerdict critical_verdict_from(const std::string& s) {
  for (auto v : {analysis::CriticalVerdict::NoInteriorCriticalPoints, analysis::CriticalVerdict::CriticalPointsFound}) {
    if (s == analysis::verdict_name(v)) return v;
  }
  return analysis::CriticalVerdict::Inconclusive;
}

json critical_json(const analysis::CriticalPointReport& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"location", {num(c.location.x), num(c.location.y)}},
                     {"ratios", nums(c.ratios)},
                     {"distance_over_d", num(c.distance_over_d)},
                     {"classification", analysis::extremum_name(c.classification)},
                     {"mode_ratio", num(c.mode_ratio)},
                     {"confirmed", c.confirmed}});
  }
  return {{"tau", num(r.tau)},
          {"delta", num(r.delta)},
          {"field", r.field},
          {"max_gradient", nums(r.max_gradient)},
          {"verdict", analysis::verdict_name(r.verdict)},
          {"candidates", cands}};
}

analysis::CriticalPointReport critical_from(const json& j) {
  analysis::CriticalPointReport r;
  r.tau = get_num(j, "tau");
  r.delta = get_num(j, "delta");
  r.field = j.value("field", 0);
  r.max_gradient = get_nums(j.value("max_gradient", json::array()));
  r.verdict = critical_verdict_from(j.value("verdict", ""));
  for (const auto& c : j.value("candidates", json::array())) {
    analysis::Candidate k;
    k.location = {get_num(c.at("location").at(0)), get_num(c.at("location").at(1))};
    k.ratios = get_nums(c.at("ratios"));
    k.distance_over_d = get_num(c, "distance_over_d");
    k.classification = extremum_from(c.value("classification", ""));
    k.mode_ratio = get_num(c, "mode_ratio");
    k.confirmed = c.value("confirmed", false);
    r.candidates.push_back(k);
  }
  return r;
}

void write(const json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + "  " + json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& x : j) scalars = scalars && !x.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad + "  ";
        write(j[i], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& doc) {
  std::string out;
  write(doc, out, 0);
  out += "\n";
  return out;
}

json report_to_json(const CaseReport& r, bool include_wall_time) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"h", num(l.h)},
                      {"vertices", l.vertices},
                      {"triangles", l.triangles},
                      {"min_angle_deg", num(l.min_angle)},
                      {"eigenvalues", nums(l.eigenvalues)},
                      {"residuals", nums(l.residuals)},
                      {"iterations", l.iterations}});
  }
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back({{"kind", c.kind}, {"pass", c.pass}, {"detail", c.detail}});
  json monotone = json::array();
  for (bool m : r.monotone) monotone.push_back(m);
  json doc = {{"schema_version", r.schema_version},
              {"tool_version", r.tool_version},
              {"name", r.name},
              {"claim", r.claim},
              {"spec", r.spec},
              {"parameters", r.parameters},
              {"summary", summary_to_json(r.summary)},
              {"bounds", bounds_to_json(r.bounds)},
              {"levels", levels},
              {"eigenvalues", nums(r.eigenvalues)},
              {"est_error", nums(r.est_error)},
              {"rel_error", nums(r.rel_error)},
              {"monotone", monotone},
              {"critical_points", critical_json(r.critical)},
              {"claims", claims},
              {"passed", r.passed()}};
  if (include_wall_time) doc["wall_time_s"] = num(r.wall_time);
  return doc;
}

CaseReport report_from_json(const json& j) {
  try {
    CaseReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw LabError("unsupported schema_version " + std::to_string(r.schema_version));
    }
    r.tool_version = j.at("tool_version").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.claim = j.value("claim", "");
    r.spec = j.at("spec");
    r.parameters = j.value("parameters", json::object());
    r.summary = summary_from(j.at("summary"));
    r.bounds = bounds_from(j.at("bounds"));
    for (const auto& l : j.at("levels")) {
      LevelInfo info;
      info.h = get_num(l, "h");
      info.vertices = l.value("vertices", std::size_t{0});
      info.triangles = l.value("triangles", std::size_t{0});
      info.min_angle = get_num(l, "min_angle_deg");
      info.eigenvalues = get_nums(l.at("eigenvalues"));
      info.residuals = get_nums(l.value("residuals", json::array()));
      info.iterations = l.value("iterations", 0);
      r.levels.push_back(info);
    }
    r.eigenvalues = get_nums(j.at("eigenvalues"));
    r.est_error = get_nums(j.at("est_error"));
    r.rel_error = get_nums(j.value("rel_error", json::array()));
    for (const auto& m : j.value("monotone", json::array())) r.monotone.push_back(m.get<bool>());
    r.critical = critical_from(j.at("critical_points"));
    for (const auto& c : j.value("claims", json::array())) {
      r.claims.push_back({c.value("kind", ""), c.value("pass", false), c.value("detail", "")});
    }
    r.wall_time = get_num(j, "wall_time_s");
    return r;
  } catch (const json::exception& e) {
    throw LabError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace hotspots::lab
