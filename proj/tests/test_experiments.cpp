#include <doctest.h>
#include <sstream>

#include "donsa/config.hpp"
#include "donsa/errors.hpp"
#include "donsa/report.hpp"
#include "support.hpp"

using namespace donsa;
using namespace donsa::testsupport;

namespace {

ScenarioSpec small_scenario() {
  ScenarioSpec spec;
  spec.id = "custom";
  spec.n_machines = 30;
  spec.sweep_variable = SweepVariable::NSources;
  spec.sweep_points = {5, 10, 15};
  spec.runs = 4;
  spec.algorithms = resolve_algorithms({"donsa_wbz_lmn", "ditosa_l"});
  spec.base_seed = 123;
  spec.jobs = 1;
  return spec;
}

}  // namespace

TEST_CASE("adr averages over every source, unmatched included") {
  AssignmentResult result;
  Decision matched;
  matched.kind = DecisionKind::Direct;
  matched.rate_bps = 1e6;
  result.decisions = {matched, Decision{}};
  CHECK(compute_adr(result, 2) == 5e5);
  result.decisions.assign(3, Decision{});
  CHECK(compute_adr(result, 3) == 0.0);
  CHECK_THROWS_AS(compute_adr(result, 0), InvalidArgument);
}

TEST_CASE("adr times n_sources equals the objective") {
  const Topology topo = generate_cell(9, 4, 1, 400.0, 200e3, 3);
  const auto catalog = default_catalog();
  const RateTable table = build_rate_table(topo, catalog, ChannelModel{}, 3);
  const AssignmentResult result = run_donsa(topo, table, catalog);
  CHECK(compute_adr(result, 9) * 9 == doctest::Approx(result.objective_bps).epsilon(1e-15));
}

TEST_CASE("seed schedule is keyed by sweep value, not position") {
  CHECK(run_seed(1, 5.0, 0) == run_seed(1, 5.0, 0));
  CHECK(run_seed(1, 5.0, 0) != run_seed(1, 5.0, 1));
  CHECK(run_seed(1, 5.0, 0) != run_seed(1, 10.0, 0));
  CHECK(run_seed(1, 5.0, 0) != run_seed(2, 5.0, 0));
}

TEST_CASE("scenario reports are deterministic and stable under added points") {
  const auto catalog = default_catalog();
  ScenarioSpec spec = small_scenario();
  const MetricsReport a = run_scenario(spec, catalog, ChannelModel{});
  const MetricsReport b = run_scenario(spec, catalog, ChannelModel{});
  REQUIRE(a.raw.size() == b.raw.size());
  for (std::size_t p = 0; p < a.raw.size(); ++p)
    for (std::size_t alg = 0; alg < a.raw[p].size(); ++alg)
      for (std::size_t r = 0; r < a.raw[p][alg].size(); ++r) {
        CHECK(a.raw[p][alg][r].objective_bps == b.raw[p][alg][r].objective_bps);
        CHECK(a.raw[p][alg][r].nus == b.raw[p][alg][r].nus);
      }

  // inserting a sweep point must not disturb the existing points' draws
  ScenarioSpec wider = spec;
  wider.sweep_points = {5, 8, 10, 15};
  const MetricsReport c = run_scenario(wider, catalog, ChannelModel{});
  CHECK(c.raw[0][0][0].objective_bps == a.raw[0][0][0].objective_bps);   // point 5
  CHECK(c.raw[2][0][2].objective_bps == a.raw[1][0][2].objective_bps);   // point 10
  CHECK(c.raw[3][1][3].objective_bps == a.raw[2][1][3].objective_bps);   // point 15
}

TEST_CASE("parallel and serial sweeps produce identical metrics") {
  const auto catalog = default_catalog();
  ScenarioSpec serial = small_scenario();
  ScenarioSpec parallel = small_scenario();
  parallel.jobs = 0;  // all cores
  const MetricsReport a = run_scenario(serial, catalog, ChannelModel{});
  const MetricsReport b = run_scenario(parallel, catalog, ChannelModel{});
  for (std::size_t p = 0; p < a.raw.size(); ++p)
    for (std::size_t alg = 0; alg < a.raw[p].size(); ++alg)
      for (std::size_t r = 0; r < a.raw[p][alg].size(); ++r) {
        CHECK(a.raw[p][alg][r].objective_bps == b.raw[p][alg][r].objective_bps);
        CHECK(a.raw[p][alg][r].nus == b.raw[p][alg][r].nus);
      }
  CHECK(adr_csv(a) == adr_csv(b));
  CHECK(nus_csv(a) == nus_csv(b));
}

TEST_CASE("paired dominance holds in every run of a sweep") {
  const auto catalog = default_catalog();
  ScenarioSpec spec = small_scenario();
  spec.algorithms = resolve_algorithms({"donsa_wbz_lmn", "dorsa_wbz_l", "sorsa_w_l", "ditosa_l"});
  const MetricsReport report = run_scenario(spec, catalog, ChannelModel{});
  for (std::size_t p = 0; p < report.raw.size(); ++p)
    for (int r = 0; r < spec.runs; ++r) {
      const double full = report.raw[p][0][r].objective_bps;
      const double dorsa = report.raw[p][1][r].objective_bps;
      const double sorsa = report.raw[p][2][r].objective_bps;
      const double ditosa = report.raw[p][3][r].objective_bps;
      CHECK(full >= dorsa * (1.0 - 1e-12));
      CHECK(dorsa >= sorsa * (1.0 - 1e-12));
      CHECK(full >= ditosa * (1.0 - 1e-12));
    }
}

TEST_CASE("single-run sweeps report no confidence interval") {
  const auto catalog = default_catalog();
  ScenarioSpec spec = small_scenario();
  spec.runs = 1;
  const MetricsReport report = run_scenario(spec, catalog, ChannelModel{});
  CHECK_FALSE(report.cells[0][0].ci_defined);
  const std::string csv = adr_csv(report);
  // ci columns exist but are empty
  CHECK(csv.find("_ci_pct") != std::string::npos);
}

TEST_CASE("csv values round-trip exactly") {
  const auto catalog = default_catalog();
  const MetricsReport report = run_scenario(small_scenario(), catalog, ChannelModel{});
  const std::string csv = adr_csv(report);
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  for (std::size_t p = 0; p < report.sweep_values.size(); ++p) {
    REQUIRE(std::getline(in, line));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    CHECK(std::stod(field) == report.sweep_values[p]);
    for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
      REQUIRE(std::getline(fields, field, ','));
      CHECK(std::stod(field) == report.cells[p][a].adr_bps);
    }
  }
}

TEST_CASE("empty-point reports still emit headers") {
  MetricsReport report;
  report.sweep_name = "n_sources";
  report.algorithms = {"donsa_wbz_lmn"};
  const std::string csv = nus_csv(report);
  CHECK(csv == "n_sources,donsa_wbz_lmn_count\r\n");
}

TEST_CASE("scenario validation rejects broken sweeps") {
  const auto catalog = default_catalog();
  ScenarioSpec spec = small_scenario();
  spec.sweep_points = {5, 5, 10};
  CHECK_THROWS_AS(run_scenario(spec, catalog, ChannelModel{}), ConfigError);
  spec = small_scenario();
  spec.runs = 0;
  CHECK_THROWS_AS(run_scenario(spec, catalog, ChannelModel{}), ConfigError);
  spec = small_scenario();
  spec.sweep_points = {5, 10, 40};  // exceeds n_machines
  CHECK_THROWS_AS(run_scenario(spec, catalog, ChannelModel{}), ConfigError);
  spec = small_scenario();
  spec.algorithms.clear();
  CHECK_THROWS_AS(run_scenario(spec, catalog, ChannelModel{}), ConfigError);
}

TEST_CASE("aet is measured and positive") {
  const auto catalog = default_catalog();
  const MetricsReport report = run_scenario(small_scenario(), catalog, ChannelModel{});
  for (const auto& point : report.cells)
    for (const auto& cell : point) CHECK(cell.aet_ms > 0.0);
}
