#include <cmath>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "donsa/config.hpp"
#include "donsa/errors.hpp"
#include "donsa/report.hpp"
#include "donsa/testgen.hpp"

namespace {

using namespace donsa;

struct InstanceFlags {
  int sources = 10;
  int relays = 10;
  int bs = 1;
  double radius = 500.0;
  double bw = 200e3;
  std::uint64_t seed = 1;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags) {
  cmd->add_option("--sources", flags.sources, "number of source machines");
  cmd->add_option("--relays", flags.relays, "number of relay machines");
  cmd->add_option("--bs", flags.bs, "number of base stations");
  cmd->add_option("--radius", flags.radius, "cell radius in meters");
  cmd->add_option("--bw", flags.bw, "requested bandwidth per source, Hz");
  cmd->add_option("--seed", flags.seed, "random seed");
}

struct Instance {
  Topology topo;
  RateTable table;
};

Instance make_instance(const Config& cfg, const InstanceFlags& flags) {
  Instance inst;
  inst.topo = generate_cell(flags.sources, flags.relays, flags.bs, flags.radius, flags.bw,
                            flags.seed);
  inst.table = build_rate_table(inst.topo, cfg.rf_catalog, cfg.channel_model,
                                mix_seed(flags.seed, 0x726174655f746162ULL),
                                /*parallel=*/cfg.jobs != 1);
  return inst;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << body;
}

const char* decision_name(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::Unmatched: return "unmatched";
    case DecisionKind::Direct: return "direct";
    default: return "relayed";
  }
}

void print_result(const AssignmentResult& result, const RateTable& table, bool per_source) {
  const int n = static_cast<int>(result.decisions.size());
  std::cout << "sources " << n << ", matched " << result.matched << ", unmatched "
            << n - result.matched << " (k = " << result.k << ")\n";
  std::cout << "objective " << format_double(result.objective_bps) << " bits/s, ADR "
            << format_double(n > 0 ? result.objective_bps / n : 0.0) << " bits/s\n";
  if (!per_source) return;
  for (int s = 0; s < n; ++s) {
    const Decision& d = result.decisions[s];
    std::cout << "  source " << s << ": " << decision_name(d.kind);
    if (d.kind == DecisionKind::Direct)
      std::cout << " bs " << d.bs << " via " << table.m2b_ids[d.m2b_rf] << ", "
                << format_double(d.rate_bps) << " bits/s";
    if (d.kind == DecisionKind::Relayed)
      std::cout << " relay " << d.relay << " via " << table.m2m_ids[d.m2m_rf] << ", bs " << d.bs
                << " via " << table.m2b_ids[d.m2b_rf] << ", " << format_double(d.rate_bps)
                << " bits/s";
    std::cout << "\n";
  }
}

void print_conflicts(const ConflictReport& report, const RateTable& table) {
  if (report.empty()) {
    std::cout << "audit: no conflicts\n";
    return;
  }
  for (const auto& c : report.relay_reuse)
    std::cout << "audit: relay " << c.relay << " channel " << table.m2m_ids[c.m2m_rf]
              << " reused by " << c.count << " sources\n";
  for (const auto& c : report.bs_overuse)
    std::cout << "audit: bs " << c.bs << " rf " << table.m2b_ids[c.m2b_rf] << " carries "
              << c.used << " connections, quota " << c.quota << "\n";
}

Quota quota_for(const Config& cfg, const Topology& topo) {
  const CatalogSplit split = split_catalog(cfg.rf_catalog);
  std::vector<RfInterface> m2b_rfs;
  for (int idx : split.m2b) m2b_rfs.push_back(cfg.rf_catalog[idx]);
  return compute_quota(m2b_rfs, topo.requested_bw_hz, topo.n_bs, topo.n_sources,
                       cfg.truncate_channels_to_sources);
}

int cmd_run(const Config& cfg, const InstanceFlags& flags, const std::string& algorithm,
            const std::string& dump_path, const std::string& dump_sap_path,
            const std::string& dump_topo_path) {
  const Instance inst = make_instance(cfg, flags);
  const AlgorithmSpec spec = algorithm_preset(algorithm);
  const AssignmentResult result =
      run_algorithm(spec, inst.topo, inst.table, cfg.rf_catalog, cfg.pipeline());
  std::cout << "algorithm " << algorithm << "\n";
  print_result(result, inst.table, inst.topo.n_sources <= 50);
  const Quota quota = quota_for(cfg, inst.topo);
  print_conflicts(audit_conflicts(result, cfg.rf_catalog, quota), inst.table);

  if (!dump_topo_path.empty()) write_text_file(dump_topo_path, topology_to_text(inst.topo));
  if (!dump_path.empty())
    write_text_file(dump_path, assignment_to_text(result, inst.table, quota));
  if (!dump_sap_path.empty()) {
    const PipelineFilter filter;  // dump reflects the unrestricted instance
    VertexSet vertices = enumerate_vertices(inst.topo, cfg.rf_catalog, quota, filter);
    if (inst.topo.n_sources == 0 || vertices.total() == 0)
      std::cout << "sap dump skipped: empty problem\n";
    else
      write_text_file(dump_sap_path,
                      sap_to_text(build_sap(inst.topo, inst.table, quota, std::move(vertices))));
  }
  return 0;
}

int cmd_compare(const Config& cfg, const InstanceFlags& flags,
                const std::vector<std::string>& algorithms) {
  const Instance inst = make_instance(cfg, flags);
  std::cout << "algorithm            objective(bits/s)      ADR(bits/s)   NUS   AET(ms)\n";
  double donsa_objective = -1.0;
  bool dominance_ok = true;
  for (const std::string& name : algorithms) {
    const AlgorithmSpec spec = algorithm_preset(name);
    const auto t0 = std::chrono::steady_clock::now();
    const AssignmentResult result =
        run_algorithm(spec, inst.topo, inst.table, cfg.rf_catalog, cfg.pipeline());
    const auto t1 = std::chrono::steady_clock::now();
    const double aet = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const int n = inst.topo.n_sources;
    std::printf("%-20s %17.1f %16.1f %5d %9.2f\n", name.c_str(), result.objective_bps,
                n > 0 ? result.objective_bps / n : 0.0, n - result.matched, aet);
    if (name == "donsa_wbz_lmn" || name == "donsa")
      donsa_objective = result.objective_bps;
    else if (donsa_objective >= 0.0 && result.objective_bps > donsa_objective * (1.0 + 1e-12))
      dominance_ok = false;
  }
  if (donsa_objective >= 0.0)
    std::cout << (dominance_ok ? "dominance: joint selection is best on this instance\n"
                               : "dominance: VIOLATED (this should never happen)\n");
  return dominance_ok ? 0 : 1;
}

int cmd_audit(const std::string& dump_path) {
  std::ifstream in(dump_path, std::ios::binary);
  if (!in) throw IoError("cannot open dump '" + dump_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const AssignmentDump dump = assignment_from_text(buffer.str());

  RateTable names_only;  // only the id lists matter for printing
  names_only.m2m_ids = dump.m2m_ids;
  names_only.m2b_ids = dump.m2b_ids;
  const ConflictReport report = audit_conflicts(dump.result, {}, dump.quota);
  std::cout << "sources " << dump.result.decisions.size() << ", matched " << dump.result.matched
            << ", k " << dump.result.k << "\n";
  print_conflicts(report, names_only);
  return 0;
}

int cmd_selftest(std::uint64_t seed, int instances) {
  int failures = 0;

  {  // solver vs. exhaustive permutation search on small matrices
    Rng rng(mix_seed(seed, 1));
    int bad = 0;
    const int cases = 300;
    for (int c = 0; c < cases; ++c) {
      const int n = 1 + rng.next_index(7);
      SquareMatrix m(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rng.next_index(101);
      const HungarianResult got = hungarian_solve(m, true);
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      double best = -1.0;
      do {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += m.at(i, perm[i]);
        best = std::max(best, sum);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (got.objective != best) ++bad;
    }
    std::cout << (bad == 0 ? "PASS" : "FAIL") << " solver vs permutation search (" << cases
              << " matrices)\n";
    failures += bad != 0;
  }

  {  // pipeline vs. brute force on random tiny instances
    Rng rng(mix_seed(seed, 2));
    int bad = 0;
    for (int c = 0; c < instances; ++c) {
      const TinyInstance inst = random_channel_instance(rng);
      const AssignmentResult got = run_donsa(inst.topo, inst.table, inst.catalog);
      const CatalogSplit split = split_catalog(inst.catalog);
      std::vector<RfInterface> m2b_rfs;
      for (int idx : split.m2b) m2b_rfs.push_back(inst.catalog[idx]);
      const Quota quota = compute_quota(m2b_rfs, inst.topo.requested_bw_hz, inst.topo.n_bs,
                                        inst.topo.n_sources);
      const BruteForceResult oracle = brute_force_solve(inst.topo, inst.table, quota);
      // equal up to float summation order; both solvers are exact
      const double scale = std::max(1.0, std::fabs(oracle.objective_bps));
      if (std::fabs(got.objective_bps - oracle.objective_bps) > 1e-12 * scale) ++bad;
    }
    std::cout << (bad == 0 ? "PASS" : "FAIL") << " pipeline vs brute force (" << instances
              << " instances)\n";
    failures += bad != 0;
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint RF-interface and next-hop selection simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand name

  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration (or an emitted manifest)");

  // run
  auto* run = app.add_subcommand("run", "solve one instance and print the assignment");
  InstanceFlags run_flags;
  add_instance_flags(run, run_flags);
  std::string run_algorithm_name = "donsa_wbz_lmn";
  std::string dump_path, dump_sap_path, dump_topo_path;
  bool run_repair = false;
  run->add_option("--algorithm", run_algorithm_name, "algorithm name");
  run->add_option("--dump", dump_path, "write the assignment dump here");
  run->add_option("--dump-sap", dump_sap_path, "write the padded matrix dump here");
  run->add_option("--dump-topology", dump_topo_path, "write node placements here");
  run->add_flag("--repair-conflicts", run_repair, "greedily drop conflicting sources");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a scenario sweep and write CSV/plot files");
  std::string scenario_id;
  int sweep_runs = -1;
  std::uint64_t sweep_seed = 0;
  bool sweep_seed_set = false, sweep_repair = false;
  int sweep_jobs = -1;
  std::string sweep_out;
  std::vector<std::string> sweep_algorithms;
  sweep->add_option("--scenario", scenario_id, "preset: s1, s2 or s3 (else from --config)");
  sweep->add_option("--runs", sweep_runs, "Monte-Carlo repetitions per sweep point");
  sweep->add_option("--seed", sweep_seed, "base seed")->each([&](const std::string&) {
    sweep_seed_set = true;
  });
  sweep->add_option("--jobs", sweep_jobs, "worker threads (1 = serial)");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--algorithms", sweep_algorithms, "algorithm names to run");
  sweep->add_flag("--repair-conflicts", sweep_repair, "greedily drop conflicting sources");

  // compare
  auto* compare = app.add_subcommand("compare", "run every algorithm on one shared instance");
  InstanceFlags compare_flags;
  add_instance_flags(compare, compare_flags);
  std::vector<std::string> compare_algorithms = known_algorithms();
  compare->add_option("--algorithms", compare_algorithms, "algorithm names to compare");

  // audit
  auto* audit = app.add_subcommand("audit", "check a dumped assignment for channel conflicts");
  std::string audit_dump;
  audit->add_option("--dump", audit_dump, "assignment dump file")->required();

  // selftest
  auto* selftest = app.add_subcommand("selftest", "oracle equivalence checks");
  std::uint64_t selftest_seed = 7;
  int selftest_instances = 250;
  selftest->add_option("--seed", selftest_seed, "random seed");
  selftest->add_option("--instances", selftest_instances, "number of tiny instances");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = config_path.empty() ? default_config() : load_config(config_path);

    if (run->parsed()) {
      if (run_repair) cfg.repair_conflicts = true;
      return cmd_run(cfg, run_flags, run_algorithm_name, dump_path, dump_sap_path,
                     dump_topo_path);
    }
    if (sweep->parsed()) {
      if (!scenario_id.empty())
        cfg.scenario = scenario_preset(scenario_id);
      else if (!cfg.has_scenario)
        throw ConfigError("sweep needs --scenario or a config with a scenario section");
      cfg.has_scenario = true;
      if (sweep_runs > 0) cfg.scenario.runs = sweep_runs;
      if (sweep_seed_set) cfg.scenario.base_seed = sweep_seed;
      if (sweep_jobs >= 0) cfg.jobs = sweep_jobs;
      if (!sweep_out.empty()) cfg.output_dir = sweep_out;
      if (sweep_repair) cfg.repair_conflicts = true;
      if (!sweep_algorithms.empty()) cfg.scenario.algorithms = resolve_algorithms(sweep_algorithms);
      cfg.scenario.jobs = cfg.jobs;

      const MetricsReport report =
          run_scenario(cfg.scenario, cfg.rf_catalog, cfg.channel_model, cfg.pipeline());
      emit_results(report, cfg.output_dir, config_to_json(cfg));
      std::cout << "wrote " << cfg.output_dir << "/{adr,nus,aet}.csv, manifest.json, plot.gp, "
                << "adr.svg, nus.svg\n";
      for (std::size_t p = 0; p < report.sweep_values.size(); ++p) {
        std::cout << report.sweep_name << "=" << format_double(report.sweep_values[p]);
        for (std::size_t a = 0; a < report.algorithms.size(); ++a)
          std::cout << "  " << report.algorithms[a] << ": ADR "
                    << format_double(report.cells[p][a].adr_bps) << " NUS "
                    << format_double(report.cells[p][a].nus);
        std::cout << "\n";
      }
      return 0;
    }
    if (compare->parsed()) return cmd_compare(cfg, compare_flags, compare_algorithms);
    if (audit->parsed()) return cmd_audit(audit_dump);
    if (selftest->parsed()) return cmd_selftest(selftest_seed, selftest_instances);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
