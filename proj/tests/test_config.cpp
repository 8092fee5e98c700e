#include <doctest.h>

#include "donsa/config.hpp"
#include "donsa/errors.hpp"

using namespace donsa;
using nlohmann::json;

TEST_CASE("default catalog satisfies the interface invariants") {
  const auto catalog = default_catalog();
  CHECK(catalog.size() == 6);
  for (const RfInterface& rf : catalog) CHECK_NOTHROW(validate(rf));
  const CatalogSplit split = split_catalog(catalog);
  CHECK(split.m2m.size() == 3);
  CHECK(split.m2b.size() == 3);
  // wider channels support higher caps in both classes
  CHECK(catalog[split.m2m[0]].channel_bw_hz < catalog[split.m2m[2]].channel_bw_hz);
  CHECK(catalog[split.m2b[0]].max_rate_bps < catalog[split.m2b[2]].max_rate_bps);
}

TEST_CASE("scenario presets carry the documented parameters") {
  const ScenarioSpec s1 = scenario_preset("s1");
  CHECK(s1.n_machines == 300);
  CHECK(s1.requested_bw_hz == 200e3);
  CHECK(s1.cell_radius_m == 500.0);
  CHECK(s1.sweep_variable == SweepVariable::NSources);
  CHECK(s1.runs == 200);
  CHECK(s1.algorithms.size() == 4);

  const ScenarioSpec s2 = scenario_preset("s2");
  CHECK(s2.n_sources == 150);
  CHECK(s2.n_relays == 150);
  CHECK(s2.sweep_variable == SweepVariable::CellRadius);

  const ScenarioSpec s3 = scenario_preset("s3");
  CHECK(s3.sweep_variable == SweepVariable::RequestedBw);
  CHECK(s3.sweep_points.front() == 20e3);
  CHECK(s3.sweep_points.back() == 20e6);
  CHECK(s3.cell_radius_m == 500.0);

  CHECK_THROWS_AS(scenario_preset("s9"), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
  json doc = {{"output_dir", "x"}, {"no_such_key", 1}};
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  json doc2 = {{"channel_model", {{"path_loss_exponent", 4.0}, {"typo", 1}}}};
  CHECK_THROWS_AS(parse_config(doc2), ConfigError);
  json doc3 = {{"scenario", {{"id", "s1"}, {"bogus", 2}}}};
  CHECK_THROWS_AS(parse_config(doc3), ConfigError);
  json doc4 = {{"rf_catalog",
                json::array({{{"id", "x"}, {"class", "m2m"}, {"channel_bw_hz", 1e6},
                              {"oops", 3}}})}};
  CHECK_THROWS_AS(parse_config(doc4), ConfigError);
}

TEST_CASE("config echo parses back to the same config") {
  Config cfg = default_config();
  cfg.scenario = scenario_preset("s2");
  cfg.has_scenario = true;
  cfg.scenario.runs = 17;
  cfg.scenario.base_seed = 99;
  cfg.output_dir = "results";
  cfg.jobs = 3;

  const nlohmann::ordered_json echo = config_to_json(cfg);
  const Config back = parse_config(json::parse(echo.dump()));
  CHECK(back.output_dir == "results");
  CHECK(back.jobs == 3);
  CHECK(back.scenario.runs == 17);
  CHECK(back.scenario.base_seed == 99);
  CHECK(back.scenario.sweep_points == cfg.scenario.sweep_points);
  CHECK(back.rf_catalog.size() == cfg.rf_catalog.size());
  for (std::size_t i = 0; i < cfg.rf_catalog.size(); ++i) {
    CHECK(back.rf_catalog[i].id == cfg.rf_catalog[i].id);
    CHECK(back.rf_catalog[i].channel_bw_hz == cfg.rf_catalog[i].channel_bw_hz);
    CHECK(back.rf_catalog[i].max_rate_bps == cfg.rf_catalog[i].max_rate_bps);
    CHECK(back.rf_catalog[i].bs_conn_cap == cfg.rf_catalog[i].bs_conn_cap);
  }
  // and the echo of the parsed config is byte-identical (fixed point)
  CHECK(config_to_json(back).dump(2) == echo.dump(2));
}

TEST_CASE("manifest documents are accepted as configs") {
  Config cfg = default_config();
  json manifest;
  manifest["meta"] = {{"tool", "donsa"}, {"version", "x"}, {"schema", 1}};
  manifest["config"] = json::parse(config_to_json(cfg).dump());
  const Config back = parse_config(manifest);
  CHECK(back.rf_catalog.size() == cfg.rf_catalog.size());
}

TEST_CASE("scenario overrides layer onto presets") {
  json doc = {{"scenario",
               {{"id", "s1"}, {"runs", 5}, {"base_seed", 42},
                {"algorithms", json::array({"donsa_wbz_lmn", "ditosa_l"})}}}};
  const Config cfg = parse_config(doc);
  REQUIRE(cfg.has_scenario);
  CHECK(cfg.scenario.runs == 5);
  CHECK(cfg.scenario.base_seed == 42);
  CHECK(cfg.scenario.n_machines == 300);  // preset value survives
  CHECK(cfg.scenario.algorithms.size() == 2);
}

TEST_CASE("algorithm overrides flip route toggles") {
  json doc = {{"scenario",
               {{"id", "s1"},
                {"algorithms", json::array({"sorsa_w_l"})},
                {"algorithm_overrides", {{"sorsa_w_l", {{"direct_enabled", true}}}}}}}};
  const Config cfg = parse_config(doc);
  REQUIRE(cfg.scenario.algorithms.size() == 1);
  CHECK(cfg.scenario.algorithms[0].direct_enabled);
  CHECK(cfg.scenario.algorithms[0].relays_enabled);
}

TEST_CASE("bad interface definitions are caught at load") {
  json doc = {{"rf_catalog", json::array({{{"id", "x"}, {"class", "m2m"},
                                           {"channel_bw_hz", 1e6}, {"num_channels", 2}}})}};
  CHECK_THROWS_AS(parse_config(doc), InvalidArgument);
  json doc2 = {{"rf_catalog", json::array({{{"id", "x"}, {"class", "cable"},
                                            {"channel_bw_hz", 1e6}}})}};
  CHECK_THROWS_AS(parse_config(doc2), ConfigError);
}
