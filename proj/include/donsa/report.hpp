#pragma once

#include <string>

#include <json.hpp>

#include "donsa/experiments.hpp"

namespace donsa {

// Shortest round-trip decimal form of a double (locale independent).
std::string format_double(double value);

// CSV bodies for each metric; exposed separately so tests can check
// round-trips without touching the filesystem. Headers carry the unit.
std::string adr_csv(const MetricsReport& report);
std::string nus_csv(const MetricsReport& report);
std::string aet_csv(const MetricsReport& report);

// Simple line-chart renderer used for the ADR and NUS figures.
std::string svg_chart(const MetricsReport& report, const std::string& metric);

// gnuplot companion script for the emitted CSVs.
std::string plot_script(const MetricsReport& report);

// Writes adr.csv, nus.csv, aet.csv, manifest.json, plot.gp, adr.svg and
// nus.svg into out_dir. manifest_config is the full config echo; the
// manifest can be fed back through --config to reproduce the run.
// Everything except aet.csv (wall-clock measurements) is byte-deterministic
// for a given config and seed.
void emit_results(const MetricsReport& report, const std::string& out_dir,
                  const nlohmann::ordered_json& manifest_config);

}  // namespace donsa
