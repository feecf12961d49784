#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hotspots/domain_json.hpp"
#include "hotspots/error.hpp"
#include "hotspots/lab.hpp"

namespace {

using nlohmann::json;
namespace lab = hotspots::lab;

int env_threads() {
  const char* v = std::getenv("HOTSPOTS_THREADS");
  if (!v || !*v) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hotspots::LabError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw hotspots::GeometryError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw hotspots::LabError("cannot write " + path);
  out << text;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, double> out;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw hotspots::LabError("--param expects key=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw hotspots::LabError("--param value is not a number: '" + item + "'");
    }
  }
  return out;
}

void print_summary(const lab::CaseReport& r) {
  std::printf("%s: %s\n", r.name.c_str(), r.claim.c_str());
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    std::printf("  lambda[%zu] = %.10g +- %.2g\n", i, r.eigenvalues[i], r.est_error[i]);
  }
  std::printf("  critical points: %s\n", hotspots::analysis::verdict_name(r.critical.verdict));
  for (const auto& c : r.claims) {
    std::printf("  [%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.kind.c_str(), c.detail.c_str());
  }
}

int emit(const lab::CaseReport& r, const std::string& out, const std::string& svg) {
  if (!out.empty()) write_file(out, lab::dump(lab::report_to_json(r)));
  if (!svg.empty()) write_file(svg, lab::render_svg(r));
  if (out.empty()) {
    print_summary(r);
  }
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed Dirichlet-Neumann eigenpairs, bounds and hot spot certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lab::version());

  std::string spec_path, case_name, out, svg, profile = "fast";
  std::vector<std::string> params;
  double tau = 0.0;

  auto* solve = app.add_subcommand("solve", "Run the pipeline on a domain spec file");
  solve->add_option("spec", spec_path, "DomainSpec JSON")->required();
  solve->add_option("--param", params, "Override key=value (h, levels, eigenpairs, field, tau, delta)");
  solve->add_option("--out", out, "Write the JSON report here");
  solve->add_option("--svg", svg, "Write an SVG figure here");

  auto* run = app.add_subcommand("case", "Run a registry case");
  run->add_option("name", case_name, "Case name (see list)")->required();
  run->add_option("--param", params, "Override key=value (h, levels, ..., p0, p1 for example parameters)");
  run->add_option("--out", out, "Write the JSON report here");
  run->add_option("--svg", svg, "Write an SVG figure here");

  auto* verify = app.add_subcommand("verify", "Run the registry and check every claim");
  verify->add_option("--profile", profile, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--tau", tau, "Gradient ratio threshold for every case");

  auto* bnd = app.add_subcommand("bounds", "Geometry summary and closed-form thresholds for a spec file");
  bnd->add_option("spec", spec_path, "DomainSpec JSON")->required();

  auto* list = app.add_subcommand("list", "List registry cases");

  CLI11_PARSE(app, argc, argv);

  try {
    lab::RunOptions ro;
    ro.threads = env_threads();
    if (*solve) {
      ro.overrides = parse_params(params);
      return emit(lab::run_case(lab::case_from_spec(read_json(spec_path)), ro), out, svg);
    }
    if (*run) {
      ro.overrides = parse_params(params);
      return emit(lab::run_case(lab::find_case(case_name), ro), out, svg);
    }
    if (*verify) {
      lab::VerifyOptions vo;
      vo.profile = profile;
      vo.threads = env_threads();
      vo.tau = tau;
      const auto res = lab::verify_all(vo);
      for (const auto& row : res.rows) {
        std::printf("%-22s %s %8.2fs", row.name.c_str(), row.pass ? "PASS" : "FAIL", row.wall_time);
        if (!row.error.empty()) std::printf("  %s", row.error.c_str());
        std::printf("\n");
        for (const auto& c : row.claims) {
          if (!c.pass) std::printf("    %s: %s\n", c.kind.c_str(), c.detail.c_str());
        }
      }
      std::printf("%zu cases, %s\n", res.rows.size(), res.success ? "all pass" : "FAILURES");
      return res.success ? 0 : 1;
    }
    if (*bnd) {
      const auto spec = hotspots::geometry::domain_from_json(read_json(spec_path));
      const auto summary = hotspots::geometry::summarize(spec);
      const json doc{{"summary", lab::summary_to_json(summary)},
                     {"bounds", lab::bounds_to_json(hotspots::bounds::evaluate_bounds(summary))}};
      std::cout << lab::dump(doc);
      return 0;
    }
    if (*list) {
      for (const auto& c : lab::registry()) std::printf("%-22s %s\n", c.name.c_str(), c.claim.c_str());
      return 0;
    }
  } catch (const hotspots::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", hotspots::stage_name(e.stage()), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
