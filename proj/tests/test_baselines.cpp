#include <doctest.h>

#include "donsa/baselines.hpp"
#include "donsa/config.hpp"
#include "donsa/errors.hpp"
#include "donsa/testgen.hpp"
#include "support.hpp"

using namespace donsa;
using namespace donsa::testsupport;

TEST_CASE("presets carry the documented restrictions") {
  const AlgorithmSpec ditosa = algorithm_preset("ditosa_l");
  CHECK_FALSE(ditosa.relays_enabled);
  CHECK(ditosa.direct_enabled);
  CHECK(ditosa.allowed_m2b == std::vector<std::string>{"lte"});

  const AlgorithmSpec sorsa = algorithm_preset("sorsa_w_l");
  CHECK(sorsa.allowed_m2m.size() == 1);
  CHECK(sorsa.allowed_m2b.size() == 1);
  CHECK_FALSE(sorsa.direct_enabled);

  const AlgorithmSpec dorsa = algorithm_preset("dorsa_wbz_l");
  CHECK(dorsa.allowed_m2m.size() == 3);
  CHECK(dorsa.allowed_m2b == std::vector<std::string>{"lte"});

  CHECK_THROWS_AS(algorithm_preset("nope"), UnknownAlgorithm);
}

TEST_CASE("an unrestricted spec reproduces donsa exactly") {
  const Topology topo = generate_cell(12, 8, 1, 500.0, 200e3, 42);
  const auto catalog = default_catalog();
  const RateTable table = build_rate_table(topo, catalog, ChannelModel{}, 42);
  const AssignmentResult direct = run_donsa(topo, table, catalog);
  const AssignmentResult via_spec =
      run_algorithm(algorithm_preset("donsa_wbz_lmn"), topo, table, catalog);
  CHECK(direct.objective_bps == via_spec.objective_bps);
  CHECK(direct.matched == via_spec.matched);
  REQUIRE(direct.decisions.size() == via_spec.decisions.size());
  for (std::size_t s = 0; s < direct.decisions.size(); ++s)
    CHECK(direct.decisions[s].rate_bps == via_spec.decisions[s].rate_bps);
}

TEST_CASE("missing interfaces are reported by name") {
  const Topology topo = counts_topology(2, 1, 1);
  RateTable table = zero_table(topo, {"m0"}, {"b0"});
  const auto catalog = simple_catalog(1, 1, 1);
  CHECK_THROWS_AS(run_algorithm(algorithm_preset("ditosa_l"), topo, table, catalog), UnknownRf);
}

TEST_CASE("ditosa with a dead LTE channel leaves every source unmatched") {
  const Topology topo = counts_topology(3, 2, 1);
  std::vector<RfInterface> catalog = default_catalog();
  RateTable table = zero_table(topo, {"zwave", "bluetooth", "wifi"}, {"nbiot", "ltem", "lte"});
  // relays and non-LTE uplinks are alive, LTE direct is dead
  for (int s = 0; s < 3; ++s)
    for (int r = 0; r < 2; ++r) table.m2m_rate_ref(s, r, 2) = 1e6;
  for (int m = 0; m < 5; ++m) table.m2b_rate_ref(m, 0, 0) = 2e5;
  const AssignmentResult result = run_algorithm(algorithm_preset("ditosa_l"), topo, table, catalog);
  for (const Decision& d : result.decisions) CHECK(d.kind == DecisionKind::Unmatched);
  CHECK(result.objective_bps == 0.0);
}

TEST_CASE("baseline quota is computed over the restricted interface set") {
  // lte quota 100, others add 60 more; ditosa_l must cap at the LTE quota.
  const Topology topo = generate_cell(150, 0, 1, 500.0, 200e3, 9);
  const auto catalog = default_catalog();
  const RateTable table = build_rate_table(topo, catalog, ChannelModel{}, 9);
  const AssignmentResult restricted =
      run_algorithm(algorithm_preset("ditosa_l"), topo, table, catalog);
  CHECK(restricted.k == 100);
  CHECK(restricted.matched <= 100);
}

TEST_CASE("feasible-set nesting gives exact dominance on shared instances") {
  Rng rng(4242);
  const auto catalog = default_catalog();
  for (int c = 0; c < 15; ++c) {
    const int n_sources = 3 + rng.next_index(8);
    const int n_relays = rng.next_index(6);
    const Topology topo =
        generate_cell(n_sources, n_relays, 1, 300.0 + 400.0 * rng.uniform01(), 200e3,
                      rng.next_u64());
    const RateTable table = build_rate_table(topo, catalog, ChannelModel{}, rng.next_u64());
    const double d_full =
        run_algorithm(algorithm_preset("donsa_wbz_lmn"), topo, table, catalog).objective_bps;
    const double d_dorsa =
        run_algorithm(algorithm_preset("dorsa_wbz_l"), topo, table, catalog).objective_bps;
    const double d_sorsa =
        run_algorithm(algorithm_preset("sorsa_w_l"), topo, table, catalog).objective_bps;
    const double d_ditosa =
        run_algorithm(algorithm_preset("ditosa_l"), topo, table, catalog).objective_bps;
    CHECK(d_full >= d_dorsa * (1.0 - 1e-12));
    CHECK(d_dorsa >= d_sorsa * (1.0 - 1e-12));
    CHECK(d_full >= d_ditosa * (1.0 - 1e-12));
  }
}

TEST_CASE("restricted runs stay optimal within their feasible set") {
  // Verify against the oracle on a table restricted to WiFi+LTE by hand.
  Rng rng(99);
  for (int c = 0; c < 20; ++c) {
    TinyInstanceParams params;
    params.m2m_count = 2;
    params.m2b_count = 2;
    const TinyInstance inst = random_channel_instance(rng, params);
    if (inst.topo.n_relays == 0) continue;
    // keep only interface 0 of each class, kill the rest in a copy
    RateTable restricted = inst.table;
    for (int s = 0; s < inst.topo.n_sources; ++s)
      for (int r = 0; r < inst.topo.n_relays; ++r)
        restricted.m2m_rate_ref(s, r, 1) = 0.0;
    for (int m = 0; m < inst.topo.n_machines(); ++m)
      for (int b = 0; b < inst.topo.n_bs; ++b) restricted.m2b_rate_ref(m, b, 1) = 0.0;
    // direct rates off (relays-only baseline)
    for (int s = 0; s < inst.topo.n_sources; ++s)
      for (int b = 0; b < inst.topo.n_bs; ++b) restricted.m2b_rate_ref(s, b, 0) = 0.0;

    AlgorithmSpec spec;
    spec.name = "static_pair";
    spec.allowed_m2m = {inst.table.m2m_ids[0]};
    spec.allowed_m2b = {inst.table.m2b_ids[0]};
    spec.direct_enabled = false;
    const AssignmentResult got = run_algorithm(spec, inst.topo, inst.table, inst.catalog);

    const CatalogSplit split = split_catalog(inst.catalog);
    std::vector<RfInterface> m2b_rfs;
    for (int idx : split.m2b) m2b_rfs.push_back(inst.catalog[idx]);
    std::vector<char> mask = {1, 0};
    const Quota quota = compute_quota(m2b_rfs, inst.topo.requested_bw_hz, inst.topo.n_bs,
                                      inst.topo.n_sources, true, mask);
    const BruteForceResult oracle = brute_force_solve(inst.topo, restricted, quota);
    CHECK(same_objective(got.objective_bps, oracle.objective_bps));
  }
}
