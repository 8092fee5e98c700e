#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "donsa/baselines.hpp"
#include "donsa/stats.hpp"

namespace donsa {

enum class SweepVariable { NSources, CellRadius, RequestedBw };

const char* sweep_variable_name(SweepVariable v);  // CSV column name with unit
SweepVariable sweep_variable_from_name(const std::string& name);

// One scenario sweep: a fixed network shape, one swept parameter, and a set
// of algorithms run on identical per-run topologies (paired design).
struct ScenarioSpec {
  std::string id = "custom";          // s1, s2, s3 or custom
  int n_machines = 0;                 // used when sweeping n_sources
  int n_sources = 0;
  int n_relays = 0;
  int n_bs = 1;
  double cell_radius_m = 500.0;
  double requested_bw_hz = 200e3;
  SweepVariable sweep_variable = SweepVariable::NSources;
  std::vector<double> sweep_points;
  int runs = 200;
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t base_seed = 1;
  int jobs = 0;  // 0 = all cores, 1 = serial reference path
};

void validate(const ScenarioSpec& spec);

// Resolved per-point instance parameters.
struct PointParams {
  int n_sources = 0;
  int n_relays = 0;
  int n_bs = 1;
  double cell_radius_m = 0.0;
  double requested_bw_hz = 0.0;
};
PointParams point_params(const ScenarioSpec& spec, double sweep_value);

// Seed for (sweep value, run index). Keyed by the sweep VALUE, not its
// position, so adding or removing sweep points never perturbs other points.
std::uint64_t run_seed(std::uint64_t base_seed, double sweep_value, int run_index);

struct RunMetrics {
  double objective_bps = 0.0;
  double adr_bps = 0.0;
  int nus = 0;
  double aet_ms = 0.0;
};

struct AlgoPointMetrics {
  double adr_bps = 0.0;
  double nus = 0.0;
  double aet_ms = 0.0;
  double adr_ci_pct = 0.0;
  bool ci_defined = false;  // false when runs < 2
};

struct MetricsReport {
  std::string scenario_id;
  std::string sweep_name;
  std::vector<double> sweep_values;
  std::vector<int> n_sources_at_point;
  std::vector<std::string> algorithms;
  int runs = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::vector<AlgoPointMetrics>> cells;       // [point][alg]
  std::vector<std::vector<std::vector<RunMetrics>>> raw;  // [point][alg][run]
};

// Executes the sweep. Monte-Carlo runs are independent and execute in
// parallel when jobs != 1; aggregation order is fixed by (point, run), so
// the report is bit-identical whatever the thread count. A failing run
// aborts the whole sweep.
MetricsReport run_scenario(const ScenarioSpec& spec, const std::vector<RfInterface>& catalog,
                           const ChannelModel& cm, const DonsaConfig& cfg = {});

// Mean achieved rate over ALL sources; unmatched sources contribute zero.
double compute_adr(const AssignmentResult& result, int n_sources);

}  // namespace donsa
