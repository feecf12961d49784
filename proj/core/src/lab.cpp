#include "hotspots/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "hotspots/domain_json.hpp"
#include "hotspots/error.hpp"
#include "hotspots/mesh.hpp"

namespace hotspots::lab {

using nlohmann::json;

const char* registry_manifest() noexcept;

const char* version() noexcept { return HOTSPOTS_VERSION; }

bool CaseReport::passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

CaseDefinition case_from_json(const json& j) {
  try {
    CaseDefinition c;
    c.name = j.at("name").get<std::string>();
    c.example = j.value("example", "");
    if (j.contains("params")) c.params = j.at("params").get<std::vector<double>>();
    if (j.contains("spec")) c.spec = j.at("spec");
    if (c.example.empty() && !c.spec) throw LabError("case '" + c.name + "' names neither an example nor a spec");
    c.claim = j.value("claim", "");
    c.h = j.value("h", c.h);
    c.levels = j.value("levels", c.levels);
    c.eigenpairs = j.value("eigenpairs", c.eigenpairs);
    c.field = j.value("field", c.field);
    c.tau = j.value("tau", c.tau);
    c.delta = j.value("delta", c.delta);
    c.grading = j.value("grading", c.grading);
    c.profiles = j.value("profiles", std::vector<std::string>{});
    c.claims = j.value("claims", json::array());
    return c;
  } catch (const json::exception& e) {
    throw LabError(std::string("malformed case definition: ") + e.what());
  }
}

const std::vector<CaseDefinition>& registry() {
  static const std::vector<CaseDefinition> cases = [] {
    std::vector<CaseDefinition> out;
    const json doc = json::parse(registry_manifest());
    for (const auto& c : doc.at("cases")) out.push_back(case_from_json(c));
    return out;
  }();
  return cases;
}

const CaseDefinition& find_case(const std::string& name) {
  for (const auto& c : registry()) {
    if (c.name == name) return c;
  }
  throw LabError("unknown case '" + name + "'");
}

CaseDefinition case_from_spec(const json& doc) {
  CaseDefinition c;
  if (doc.contains("example")) {
    c.example = doc.at("example").get<std::string>();
    if (doc.contains("params")) c.params = doc.at("params").get<std::vector<double>>();
    c.name = c.example;
  } else {
    c.spec = doc;
    c.name = doc.value("name", "spec");
  }
  const auto probe = geometry::domain_from_json(doc);
  if (probe.dirichlet.empty()) {
    c.eigenpairs = 3;
    c.field = 1;
  }
  return c;
}

namespace {

CaseDefinition apply_overrides(CaseDefinition c, const std::map<std::string, double>& o) {
  for (const auto& [key, value] : o) {
    if (key == "h") {
      c.h = value;
    } else if (key == "levels") {
      c.levels = static_cast<int>(value);
    } else if (key == "eigenpairs") {
      c.eigenpairs = static_cast<int>(value);
    } else if (key == "field") {
      c.field = static_cast<int>(value);
    } else if (key == "tau") {
      c.tau = value;
    } else if (key == "delta") {
      c.delta = value;
    } else if (key == "grading") {
      c.grading = value != 0.0;
    } else if (key.size() > 1 && key[0] == 'p' && std::all_of(key.begin() + 1, key.end(), ::isdigit)) {
      const auto i = static_cast<std::size_t>(std::stoul(key.substr(1)));
      if (i >= c.params.size()) c.params.resize(i + 1, 0.0);
      c.params[i] = value;
    } else {
      throw LabError("unknown override '" + key + "'");
    }
  }
  if (c.levels < 2) throw LabError("at least two refinement levels are needed for extrapolation");
  if (!(c.h > 0.0)) throw LabError("mesh size h must be positive");
  if (c.field < 0 || c.field >= c.eigenpairs) throw LabError("analysed field index exceeds the eigenpair count");
  return c;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Vec2 vec(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

CaseReport run_case(const CaseDefinition& definition, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const CaseDefinition def = apply_overrides(definition, options.overrides);
  CaseReport r;
  r.tool_version = version();
  r.name = def.name;
  r.claim = def.claim;
  if (def.spec) {
    r.domain = geometry::domain_from_json(*def.spec);
  } else {
    r.domain = geometry::make_example(def.example, def.params);
  }
  r.spec = geometry::domain_to_json(r.domain);
  r.parameters = {{"example", def.example},
                  {"params", def.params},
                  {"h", def.h},
                  {"levels", def.levels},
                  {"eigenpairs", def.eigenpairs},
                  {"field", def.field},
                  {"tau", def.tau},
                  {"delta", def.delta},
                  {"grading", def.grading}};
  r.summary = geometry::summarize(r.domain);

  mesh::MeshOptions mo;
  mo.h = def.h;
  mo.grading.enabled = def.grading;
  mesh::Mesh m = mesh::triangulate(r.domain, mo);
  fem::SolveOptions so;
  so.count = def.eigenpairs;
  for (int l = 0; l < def.levels; ++l) {
    if (l > 0) m = mesh::refine(m);
    auto shared = std::make_shared<const mesh::Mesh>(m);
    const auto system = fem::assemble(*shared, options.threads);
    r.solutions.push_back(fem::solve_lowest(system, shared, so));
    const auto& s = r.solutions.back();
    r.levels.push_back({m.h, m.vertices.size(), m.triangles.size(), mesh::min_angle_deg(m), s.eigenvalues,
                        s.residuals, s.iterations});
  }
  const auto ex = fem::extrapolate(r.solutions[r.solutions.size() - 2], r.solutions.back());
  r.eigenvalues = ex.value;
  r.est_error = ex.est_error;
  r.rel_error = ex.rel_error;
  r.monotone = ex.monotone;
  r.solutions.back().est_error = ex.est_error;

  analysis::CriticalPointOptions co;
  co.tau = def.tau;
  co.delta = def.delta;
  r.critical = analysis::find_critical_points(r.domain, r.solutions, def.field, co);

  bounds::BoundInputs bi;
  if (r.summary.has_dirichlet) {
    bi.lambda1 = r.eigenvalues[0];
    bi.est_error = r.est_error[0];
  } else if (r.eigenvalues.size() >= 2) {
    bi.mu2 = r.eigenvalues[1];
    bi.est_error = r.est_error[1];
  }
  r.bounds = bounds::evaluate_bounds(r.summary, bi);

  for (const auto& c : def.claims) r.claims.push_back(check_claim(r, c));
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ClaimResult check_claim(const CaseReport& r, const json& claim) {
  ClaimResult out;
  try {
    out.kind = claim.at("kind").get<std::string>();
    const auto& k = out.kind;
    auto need_fields = [&] {
      if (r.solutions.empty()) throw LabError("eigenfields are not available in this report");
    };
    if (k == "eigenvalue") {
      const int i = claim.value("index", 0);
      const double expect = claim.at("value").get<double>();
      const double tol = claim.at("rel_tol").get<double>();
      const double got = r.eigenvalues.at(i);
      const double rel = std::fabs(got - expect) / std::fabs(expect);
      out.pass = rel <= tol;
      out.detail = fmt("lambda[%g] = %.10g, relative deviation %.3g", i, got, rel) + fmt(" (tolerance %.3g)", tol);
    } else if (k == "eigenvalue_below") {
      const int i = claim.value("index", 0);
      const double bound = claim.at("value").get<double>();
      const double margin = claim.value("margin_errors", 3.0) * r.est_error.at(i);
      const double got = r.eigenvalues.at(i);
      out.pass = got < bound - margin;
      out.detail = fmt("lambda = %.10g, bound %.10g, required margin %.3g", got, bound, margin);
    } else if (k == "annulus_radial") {
      const double r1 = claim.at("r1").get<double>(), r2 = claim.at("r2").get<double>();
      const double radial = bounds::annulus_lambda1(r1, r2);
      const double rel = std::fabs(r.eigenvalues.at(0) - radial) / radial;
      const double tol = claim.at("rel_tol").get<double>();
      const double lo = bounds::annulus_lower(r1, r2), hi = bounds::annulus_upper(r1, r2);
      out.pass = rel <= tol && lo <= radial && radial <= hi;
      out.detail = fmt("FEM %.10g vs radial %.10g, relative deviation %.3g", r.eigenvalues.at(0), radial, rel) +
                   fmt(", bracket [%.6g, %.6g]", lo, hi);
    } else if (k == "simple") {
      const int i = claim.value("index", 1);
      const double factor = claim.value("factor", 10.0);
      const double gap = (r.eigenvalues.at(i + 1) - r.eigenvalues.at(i)) / r.eigenvalues.at(i);
      out.pass = gap > factor * r.rel_error.at(i);
      out.detail = fmt("relative gap %.4g vs %g x relative error %.3g", gap, factor, r.rel_error.at(i));
    } else if (k == "bound") {
      const auto name = claim.at("name").get<std::string>();
      const auto expect = claim.value("expect", std::string("HOLDS"));
      const auto* c = r.bounds.find(name);
      if (!c) throw LabError("no bound named '" + name + "'");
      out.pass = expect == bounds::verdict_name(c->verdict);
      out.detail = name + ": " + fmt("value %.10g, bound %.10g, slack %.3g", c->value, c->bound, c->slack) + " -> " +
                   bounds::verdict_name(c->verdict);
    } else if (k == "critical_verdict") {
      const auto expect = claim.at("expect").get<std::string>();
      out.pass = expect == analysis::verdict_name(r.critical.verdict);
      out.detail = std::string(analysis::verdict_name(r.critical.verdict)) + fmt(" with %g candidates", r.critical.candidates.size());
    } else if (k == "critical_point") {
      const Vec2 at = vec(claim.at("at"));
      const double radius = claim.value("radius", 1e-9);
      const double max_ratio = claim.value("max_ratio", r.critical.tau);
      std::vector<std::string> classes = claim.value("classes", std::vector<std::string>{});
      out.detail = "no confirmed candidate near the point";
      for (const auto& c : r.critical.candidates) {
        if (!c.confirmed || distance(c.location, at) > radius) continue;
        const std::string cls = analysis::extremum_name(c.classification);
        const bool class_ok = classes.empty() || std::find(classes.begin(), classes.end(), cls) != classes.end();
        const double last = c.ratios.back();
        out.pass = last <= max_ratio && class_ok;
        out.detail = fmt("candidate (%.6g, %.6g) ratio %.3g", c.location.x, c.location.y, last) + ", " + cls +
                     fmt(" (mode ratio %.3g)", c.mode_ratio);
        break;
      }
    } else if (k == "symmetry") {
      need_fields();
      const auto& s = r.solutions.back();
      const int f = claim.value("field", 0);
      const auto iso = analysis::Isometry::reflection(vec(claim.at("point")), vec(claim.at("direction")));
      const double tol = claim.at("tol").get<double>();
      const auto rep = analysis::symmetry_check(*s.mesh, s.fields.at(f), iso, tol);
      const auto expect = claim.at("expect").get<std::string>();
      out.pass = expect == analysis::parity_name(rep.parity);
      out.detail = fmt("even deviation %.3g, odd deviation %.3g", rep.even_deviation, rep.odd_deviation) + " -> " +
                   analysis::parity_name(rep.parity);
    } else if (k == "nodal_line") {
      need_fields();
      const auto& s = r.solutions.back();
      const int f = claim.value("field", 1);
      const Vec2 a = vec(claim.at("a")), b = vec(claim.at("b"));
      const double cells = claim.value("cells", 1.0);
      const auto ns = analysis::nodal_set(*s.mesh, s.fields.at(f));
      double worst = 0.0;
      for (const auto& line : ns.polylines) {
        for (const auto& p : line) worst = std::max(worst, distance_to_segment(p, a, b));
      }
      out.pass = ns.domains() == 2 && worst <= cells * s.mesh->h;
      out.detail = fmt("%g nodal domains, farthest nodal point %.3g from the segment (h = %.3g)", ns.domains(), worst,
                       s.mesh->h);
    } else if (k == "nodal_hypothesis") {
      need_fields();
      const auto rep = analysis::nodal_domain_report(r.domain, r.solutions);
      const auto expect = claim.at("expect").get<std::string>();
      out.pass = expect == analysis::hypothesis_name(rep.hypothesis);
      out.detail = std::string(analysis::hypothesis_name(rep.hypothesis)) +
                   fmt(": d+ = %.6g, d- = %.6g, d = %.6g", rep.diameter_plus, rep.diameter_minus, rep.diameter);
    } else if (k == "epsilon_admissible") {
      const double eps = geometry::epsilon_threshold(r.summary);
      out.pass = r.summary.has_dirichlet && r.summary.dirichlet_diameter <= eps;
      out.detail = fmt("diam D = %.10g, epsilon = %.10g", r.summary.dirichlet_diameter, eps);
    } else if (k == "monotone") {
      const int i = claim.value("index", 0);
      out.pass = r.monotone.at(i);
      out.detail = out.pass ? "eigenvalue decreases under refinement" : "eigenvalue increased under refinement";
    } else {
      throw LabError("unknown claim kind '" + k + "'");
    }
  } catch (const Error& e) {
    out.pass = false;
    out.detail = std::string(stage_name(e.stage())) + ": " + e.what();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = e.what();
  }
  return out;
}

VerifyResult verify_all(const VerifyOptions& options) {
  std::vector<CaseDefinition> cases;
  if (options.cases) {
    cases = *options.cases;
  } else {
    for (const auto& c : registry()) {
      if (options.profile == "full" ||
          std::find(c.profiles.begin(), c.profiles.end(), options.profile) != c.profiles.end()) {
        cases.push_back(c);
      }
    }
  }
  if (options.tau > 0.0) {
    for (auto& c : cases) c.tau = options.tau;
  }
  VerifyResult result;
  result.rows.resize(cases.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      auto& row = result.rows[i];
      row.name = cases[i].name;
      try {
        const auto rep = run_case(cases[i]);
        row.claims = rep.claims;
        row.wall_time = rep.wall_time;
        row.pass = rep.passed();
      } catch (const Error& e) {
        row.error = std::string(stage_name(e.stage())) + ": " + e.what();
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(cases.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& row : result.rows) result.success = result.success && row.pass;
  return result;
}

}  // namespace hotspots::lab
