#include <gtest/gtest.h>

#include <set>

#include "hotspots/error.hpp"
#include "hotspots/lab.hpp"

namespace lab = hotspots::lab;

namespace {

lab::RunOptions quick() {
  lab::RunOptions o;
  o.overrides = {{"h", 0.2}, {"levels", 2}};
  return o;
}

}  // namespace

TEST(Lab, RegistryNamesAreUniqueAndClaimed) {
  std::set<std::string> names;
  for (const auto& c : lab::registry()) {
    EXPECT_TRUE(names.insert(c.name).second) << c.name;
    EXPECT_FALSE(c.claim.empty()) << c.name;
    EXPECT_FALSE(c.claims.empty()) << c.name;
  }
  EXPECT_GE(names.size(), 20u);
  EXPECT_THROW(lab::find_case("no_such_case"), hotspots::LabError);
}

TEST(Lab, OverridesAreValidated) {
  auto o = quick();
  o.overrides["bogus"] = 1.0;
  EXPECT_THROW(lab::run_case(lab::find_case("rectangle_miyamoto"), o), hotspots::LabError);
  o = quick();
  o.overrides["levels"] = 1;
  EXPECT_THROW(lab::run_case(lab::find_case("rectangle_miyamoto"), o), hotspots::LabError);
}

TEST(Lab, ParameterOverrideReachesExample) {
  auto o = quick();
  o.overrides["p0"] = 0.5;
  const auto rep = lab::run_case(lab::find_case("annulus"), o);
  EXPECT_EQ(rep.parameters["params"][0].get<double>(), 0.5);
}

TEST(Lab, StageIsReportedForGeometryErrors) {
  auto o = quick();
  o.overrides["p0"] = 2.0;
  try {
    lab::run_case(lab::find_case("annulus"), o);
    FAIL();
  } catch (const hotspots::Error& e) {
    EXPECT_EQ(e.stage(), hotspots::Stage::Geometry);
  }
}

TEST(Lab, ReportRoundTripsLosslessly) {
  const auto rep = lab::run_case(lab::find_case("rectangle_miyamoto"), quick());
  const auto doc = lab::report_to_json(rep);
  EXPECT_EQ(doc["schema_version"].get<int>(), lab::kSchemaVersion);
  const auto back = lab::report_from_json(nlohmann::json::parse(lab::dump(doc)));
  EXPECT_EQ(lab::dump(lab::report_to_json(back)), lab::dump(doc));
  EXPECT_EQ(back.eigenvalues, rep.eigenvalues);
}

TEST(Lab, SchemaVersionIsChecked) {
  auto doc = lab::report_to_json(lab::run_case(lab::find_case("rectangle_miyamoto"), quick()));
  doc["schema_version"] = 99;
  EXPECT_THROW(lab::report_from_json(doc), hotspots::LabError);
}

TEST(Lab, RunsAreDeterministic) {
  const auto a = lab::run_case(lab::find_case("disk_arc_1.9"), quick());
  const auto b = lab::run_case(lab::find_case("disk_arc_1.9"), quick());
  EXPECT_EQ(lab::dump(lab::report_to_json(a, false)), lab::dump(lab::report_to_json(b, false)));
  EXPECT_EQ(lab::render_svg(a), lab::render_svg(b));
}

TEST(Lab, DumpUsesSeventeenDigits) {
  EXPECT_EQ(lab::dump(nlohmann::json{{"x", 0.1}}), "{\n  \"x\": 0.10000000000000001\n}\n");
}

TEST(Lab, SvgMarksDirichletAndCriticalPoints) {
  lab::RunOptions o;
  o.overrides = {{"h", 0.04}, {"levels", 2}};
  const auto rep = lab::run_case(lab::find_case("square2disks"), o);
  const auto svg = lab::render_svg(rep);
  EXPECT_NE(svg.find("#c00000"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  const auto plain = lab::run_case(lab::find_case("rectangle_miyamoto"), quick());
  EXPECT_EQ(lab::render_svg(plain).find("<circle"), std::string::npos);
}

TEST(Lab, UnknownClaimKindFails) {
  const auto rep = lab::run_case(lab::find_case("rectangle_miyamoto"), quick());
  const auto r = lab::check_claim(rep, {{"kind", "nonsense"}});
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.detail.find("lab"), std::string::npos);
}

TEST(Lab, EmptyRegistryOverrideSucceeds) {
  lab::VerifyOptions o;
  o.cases = std::vector<lab::CaseDefinition>{};
  const auto res = lab::verify_all(o);
  EXPECT_TRUE(res.rows.empty());
  EXPECT_TRUE(res.success);
}

TEST(Lab, VerifyReportsFailuresAsData) {
  auto bad = lab::find_case("rectangle_miyamoto");
  bad.h = 0.2;
  bad.levels = 2;
  bad.claims = nlohmann::json::array({{{"kind", "eigenvalue"}, {"index", 0}, {"value", 100.0}, {"rel_tol", 0.01}}});
  auto broken = bad;
  broken.name = "broken";
  broken.params = {-1.0, 1.0};
  lab::VerifyOptions o;
  o.threads = 2;
  o.cases = std::vector<lab::CaseDefinition>{bad, broken};
  const auto res = lab::verify_all(o);
  ASSERT_EQ(res.rows.size(), 2u);
  EXPECT_FALSE(res.success);
  EXPECT_FALSE(res.rows[0].pass);
  EXPECT_TRUE(res.rows[0].error.empty());
  EXPECT_NE(res.rows[1].error.find("geometry"), std::string::npos);
}

TEST(Lab, TinyTauStillFindsSymmetryForcedPoint) {
  auto c = lab::find_case("square2disks");
  c.tau = 1e-6;
  c.h = 0.04;
  c.levels = 2;
  const auto rep = lab::run_case(c);
  EXPECT_EQ(rep.critical.verdict, hotspots::analysis::CriticalVerdict::CriticalPointsFound);
}

TEST(Lab, InlineDomainsRunAsCases) {
  const auto c = lab::case_from_spec(nlohmann::json{{"example", "square_neumann"}, {"params", {1.0}}});
  EXPECT_EQ(c.eigenpairs, 3);
  EXPECT_EQ(c.field, 1);
}
