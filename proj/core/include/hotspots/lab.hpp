#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hotspots/analysis.hpp"
#include "hotspots/bounds.hpp"
#include "hotspots/fem.hpp"
#include "hotspots/geometry.hpp"

namespace hotspots::lab {

inline constexpr int kSchemaVersion = 1;

const char* version() noexcept;

/// One registry entry. Claims are JSON objects {"kind": ..., ...} checked
/// against the finished report; see check_claim for the supported kinds.
struct CaseDefinition {
  std::string name;
  std::string example;            ///< make_example name; empty when `spec` is set
  std::vector<double> params;
  std::optional<nlohmann::json> spec;  ///< inline DomainSpec document
  std::string claim;              ///< the statement the case reproduces
  double h = 0.05;
  int levels = 3;
  int eigenpairs = 1;
  int field = 0;                  ///< field handed to the critical-point search
  double tau = 0.02;
  double delta = 0.0;             ///< <= 0: 2 h of the finest level
  bool grading = true;
  std::vector<std::string> profiles;
  nlohmann::json claims = nlohmann::json::array();
};

/// Cases compiled in from the version-pinned manifest.
const std::vector<CaseDefinition>& registry();
const CaseDefinition& find_case(const std::string& name);
CaseDefinition case_from_json(const nlohmann::json& doc);

/// A DomainSpec document (or {"example", "params"}) wrapped as an ad hoc case.
CaseDefinition case_from_spec(const nlohmann::json& doc);

struct RunOptions {
  int threads = 1;
  /// Overrides by key: h, levels, eigenpairs, field, tau, delta, p0, p1, ...
  std::map<std::string, double> overrides;
};

struct LevelInfo {
  double h = 0.0;
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  double min_angle = 0.0;
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  int iterations = 0;
};

struct ClaimResult {
  std::string kind;
  bool pass = false;
  std::string detail;
};

struct CaseReport {
  int schema_version = kSchemaVersion;
  std::string tool_version;
  std::string name;
  std::string claim;
  nlohmann::json spec;
  nlohmann::json parameters;  ///< mesh and analysis parameters actually used
  geometry::GeometrySummary summary;
  bounds::BoundReport bounds;
  std::vector<LevelInfo> levels;
  std::vector<double> eigenvalues;  ///< extrapolated
  std::vector<double> est_error;    ///< absolute
  std::vector<double> rel_error;
  std::vector<bool> monotone;
  analysis::CriticalPointReport critical;
  std::vector<ClaimResult> claims;
  double wall_time = 0.0;

  // In-memory only: used for figures and further analysis, never serialized.
  geometry::DomainSpec domain;
  std::vector<fem::EigenSolution> solutions;

  bool passed() const;
};

/// geometry -> mesh (levels) -> solve -> extrapolate -> analysis -> bounds -> claims.
/// Errors from any stage propagate as hotspots::Error carrying the stage.
CaseReport run_case(const CaseDefinition& definition, const RunOptions& options = {});

/// Evaluates one claim against a finished report.
ClaimResult check_claim(const CaseReport& report, const nlohmann::json& claim);

nlohmann::json report_to_json(const CaseReport& report, bool include_wall_time = true);
CaseReport report_from_json(const nlohmann::json& doc);

nlohmann::json summary_to_json(const geometry::GeometrySummary& summary);
nlohmann::json bounds_to_json(const bounds::BoundReport& bounds);

/// Serialized with every double at 17 significant digits.
std::string dump(const nlohmann::json& doc);

struct VerifyRow {
  std::string name;
  bool pass = false;
  double wall_time = 0.0;
  std::string error;  ///< "stage: message" when the pipeline failed
  std::vector<ClaimResult> claims;
};

struct VerifyResult {
  std::vector<VerifyRow> rows;
  bool success = true;
};

struct VerifyOptions {
  std::string profile = "fast";
  int threads = 1;  ///< cases run concurrently
  double tau = 0.0; ///< > 0 overrides every case
  /// Replaces the compiled-in registry when set.
  std::optional<std::vector<CaseDefinition>> cases;
};

VerifyResult verify_all(const VerifyOptions& options = {});

/// Filled contour of the analysed field (10 bands) on the coarsest mesh,
/// Dirichlet pieces, nodal polylines and critical-point markers.
std::string render_svg(const CaseReport& report);

}  // namespace hotspots::lab
