#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "donsa/experiments.hpp"

namespace donsa {

// Everything a run needs, as loaded from the JSON configuration document.
// Flags layer on top of this (flags > file > defaults).
struct Config {
  std::vector<RfInterface> rf_catalog;
  ChannelModel channel_model;
  ScenarioSpec scenario;
  bool has_scenario = false;
  std::string output_dir = "out";
  bool repair_conflicts = false;
  bool truncate_channels_to_sources = true;
  int jobs = 0;

  DonsaConfig pipeline() const {
    return DonsaConfig{truncate_channels_to_sources, repair_conflicts};
  }
};

// Catalog defaults. The interface parameters are engineering choices kept in
// configuration, not measured values; the ordering (wider-band interfaces
// support higher caps) is what matters.
std::vector<RfInterface> default_catalog();
ChannelModel default_channel_model();

// Built-in scenario presets:
//   s1: 300 machines, sweep the source count, 500 m cell, 200 kHz requests
//   s2: 150 sources + 150 relays, sweep the cell radius, 200 kHz requests
//   s3: 150 sources + 150 relays, 500 m cell, sweep the requested bandwidth
// Each runs 200 Monte-Carlo repetitions by default.
ScenarioSpec scenario_preset(const std::string& id);

Config default_config();

// Strict parser: unknown keys are rejected, every value is validated.
// Accepts either a bare config document or an emitted run manifest (the
// manifest wraps the config under its "config" key).
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::string& path);

// Full echo of a config, defaults included, as placed in the run manifest.
nlohmann::ordered_json config_to_json(const Config& cfg);

// Resolves scenario algorithm names (with optional per-name overrides) into
// specs. Called by parse_config; exposed for the CLI flag path.
std::vector<AlgorithmSpec> resolve_algorithms(const std::vector<std::string>& names,
                                              const nlohmann::json* overrides = nullptr);

}  // namespace donsa
