#include "donsa/experiments.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "donsa/errors.hpp"

namespace donsa {

namespace {
constexpr std::uint64_t kRunSalt = 0x72756e5f73656564ULL;
constexpr std::uint64_t kTableSalt = 0x726174655f746162ULL;
}  // namespace

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::NSources: return "n_sources";
    case SweepVariable::CellRadius: return "cell_radius_m";
    default: return "requested_bw_hz";
  }
}

SweepVariable sweep_variable_from_name(const std::string& name) {
  if (name == "n_sources") return SweepVariable::NSources;
  if (name == "cell_radius_m") return SweepVariable::CellRadius;
  if (name == "requested_bw_hz") return SweepVariable::RequestedBw;
  throw ConfigError("unknown sweep_variable '" + name + "'");
}

void validate(const ScenarioSpec& spec) {
  if (spec.runs < 1) throw ConfigError("scenario runs must be >= 1");
  if (spec.sweep_points.empty()) throw ConfigError("scenario needs at least one sweep point");
  bool increasing = true, decreasing = true;
  for (std::size_t i = 1; i < spec.sweep_points.size(); ++i) {
    if (!(spec.sweep_points[i] > spec.sweep_points[i - 1])) increasing = false;
    if (!(spec.sweep_points[i] < spec.sweep_points[i - 1])) decreasing = false;
  }
  if (!increasing && !decreasing)
    throw ConfigError("sweep_points must be strictly monotone");
  if (spec.algorithms.empty()) throw ConfigError("scenario needs at least one algorithm");
  if (spec.n_bs < 1) throw ConfigError("scenario needs at least one base station");
  for (double p : spec.sweep_points) point_params(spec, p);  // validates ranges
}

PointParams point_params(const ScenarioSpec& spec, double sweep_value) {
  PointParams params;
  params.n_sources = spec.n_sources;
  params.n_relays = spec.n_relays;
  params.n_bs = spec.n_bs;
  params.cell_radius_m = spec.cell_radius_m;
  params.requested_bw_hz = spec.requested_bw_hz;
  switch (spec.sweep_variable) {
    case SweepVariable::NSources: {
      const int n_sources = static_cast<int>(std::llround(sweep_value));
      if (n_sources < 0 || n_sources > spec.n_machines)
        throw ConfigError("swept n_sources must stay within [0, n_machines]");
      params.n_sources = n_sources;
      params.n_relays = spec.n_machines - n_sources;
      break;
    }
    case SweepVariable::CellRadius:
      if (!(sweep_value > 0.0)) throw ConfigError("swept cell radius must be > 0");
      params.cell_radius_m = sweep_value;
      break;
    case SweepVariable::RequestedBw:
      if (!(sweep_value > 0.0)) throw ConfigError("swept requested bandwidth must be > 0");
      params.requested_bw_hz = sweep_value;
      break;
  }
  return params;
}

std::uint64_t run_seed(std::uint64_t base_seed, double sweep_value, int run_index) {
  return mix_seed(base_seed, kRunSalt, std::bit_cast<std::uint64_t>(sweep_value),
                  static_cast<std::uint64_t>(run_index));
}

double compute_adr(const AssignmentResult& result, int n_sources) {
  if (n_sources < 1) throw InvalidArgument("compute_adr: n_sources must be >= 1");
  double total = 0.0;
  for (const Decision& d : result.decisions) total += d.rate_bps;
  return total / static_cast<double>(n_sources);
}

MetricsReport run_scenario(const ScenarioSpec& spec, const std::vector<RfInterface>& catalog,
                           const ChannelModel& cm, const DonsaConfig& cfg) {
  validate(spec);
  for (const RfInterface& rf : catalog) validate(rf);
  validate(cm);
  // Resolve algorithm masks once so a bad name fails before any run starts.
  {
    const CatalogSplit split = split_catalog(catalog);
    if (split.m2m.empty() || split.m2b.empty())
      throw ConfigError("catalog needs at least one M2M and one M2B interface");
  }

  const int n_points = static_cast<int>(spec.sweep_points.size());
  const int n_algos = static_cast<int>(spec.algorithms.size());
  const int total_tasks = n_points * spec.runs;

  MetricsReport report;
  report.scenario_id = spec.id;
  report.sweep_name = sweep_variable_name(spec.sweep_variable);
  report.sweep_values = spec.sweep_points;
  report.runs = spec.runs;
  report.base_seed = spec.base_seed;
  for (const AlgorithmSpec& a : spec.algorithms) report.algorithms.push_back(a.name);
  report.n_sources_at_point.resize(n_points);
  for (int p = 0; p < n_points; ++p)
    report.n_sources_at_point[p] = point_params(spec, spec.sweep_points[p]).n_sources;
  report.raw.assign(n_points, std::vector<std::vector<RunMetrics>>(
                                  n_algos, std::vector<RunMetrics>(spec.runs)));

  std::vector<std::exception_ptr> failures(total_tasks);

  auto run_task = [&](int task) {
    const int p = task / spec.runs;
    const int r = task % spec.runs;
    try {
      const double value = spec.sweep_points[p];
      const PointParams params = point_params(spec, value);
      const std::uint64_t seed = run_seed(spec.base_seed, value, r);
      const Topology topo =
          generate_cell(params.n_sources, params.n_relays, params.n_bs, params.cell_radius_m,
                        params.requested_bw_hz, seed);
      // Rate-table rows are already counter-seeded; keep them serial here
      // because the parallelism lives across runs.
      const RateTable table =
          build_rate_table(topo, catalog, cm, mix_seed(seed, kTableSalt), /*parallel=*/false);
      for (int a = 0; a < n_algos; ++a) {
        const auto t0 = std::chrono::steady_clock::now();
        const AssignmentResult result =
            run_algorithm(spec.algorithms[a], topo, table, catalog, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        RunMetrics& rm = report.raw[p][a][r];
        rm.objective_bps = result.objective_bps;
        rm.adr_bps = params.n_sources > 0 ? result.objective_bps / params.n_sources : 0.0;
        rm.nus = params.n_sources - result.matched;
        rm.aet_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
    } catch (...) {
      failures[task] = std::current_exception();
    }
  };

  int jobs = spec.jobs;
#ifdef _OPENMP
  if (jobs <= 0) jobs = omp_get_max_threads();
#else
  jobs = 1;
#endif
  if (jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int task = 0; task < total_tasks; ++task) run_task(task);
#endif
  } else {
    for (int task = 0; task < total_tasks; ++task) run_task(task);
  }

  for (int task = 0; task < total_tasks; ++task)
    if (failures[task]) std::rethrow_exception(failures[task]);

  report.cells.assign(n_points, std::vector<AlgoPointMetrics>(n_algos));
  std::vector<double> adr_samples(spec.runs);
  for (int p = 0; p < n_points; ++p) {
    for (int a = 0; a < n_algos; ++a) {
      AlgoPointMetrics& cell = report.cells[p][a];
      double adr_sum = 0.0, nus_sum = 0.0, aet_sum = 0.0;
      for (int r = 0; r < spec.runs; ++r) {
        const RunMetrics& rm = report.raw[p][a][r];
        adr_sum += rm.adr_bps;
        nus_sum += rm.nus;
        aet_sum += rm.aet_ms;
        adr_samples[r] = rm.adr_bps;
      }
      cell.adr_bps = adr_sum / spec.runs;
      cell.nus = nus_sum / spec.runs;
      cell.aet_ms = aet_sum / spec.runs;
      if (spec.runs >= 2) {
        cell.adr_ci_pct = confidence_interval(adr_samples).halfwidth_pct;
        cell.ci_defined = true;
      }
    }
  }
  return report;
}

}  // namespace donsa
