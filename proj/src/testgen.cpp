#include "donsa/testgen.hpp"

#include <cmath>

namespace donsa {

namespace {

std::vector<RfInterface> tiny_catalog(Rng& rng, const TinyInstanceParams& params,
                                      double requested_bw) {
  std::vector<RfInterface> catalog;
  for (int t = 0; t < params.m2m_count; ++t) {
    RfInterface rf;
    rf.id = "m2m" + std::to_string(t);
    rf.rf_class = RfClass::M2M;
    // Half the draws are eligible for the request, half are narrower.
    rf.channel_bw_hz = rng.uniform01() < 0.5 ? requested_bw * (1.0 + rng.uniform01())
                                             : requested_bw * (0.3 + 0.5 * rng.uniform01());
    rf.max_rate_bps = 50e3 + 500e3 * rng.uniform01();
    catalog.push_back(rf);
  }
  int quota_budget = params.max_quota_per_rf;  // bounds the total Q_BS
  for (int t = 0; t < params.m2b_count; ++t) {
    RfInterface rf;
    rf.id = "m2b" + std::to_string(t);
    rf.rf_class = RfClass::M2B;
    rf.channel_bw_hz = rng.uniform01() < 0.7 ? requested_bw * (1.0 + rng.uniform01())
                                             : requested_bw * (0.3 + 0.5 * rng.uniform01());
    rf.max_rate_bps = 100e3 + 1e6 * rng.uniform01();
    const int quota = rng.next_index(quota_budget + 1);
    quota_budget -= quota;
    rf.bs_total_bw_hz = std::max(rf.channel_bw_hz, quota * requested_bw * 1.01);
    rf.bs_conn_cap = 1 + rng.next_index(params.max_quota_per_rf);
    catalog.push_back(rf);
  }
  return catalog;
}

}  // namespace

TinyInstance random_channel_instance(Rng& rng, const TinyInstanceParams& params) {
  TinyInstance inst;
  const double requested_bw = 100e3 + 200e3 * rng.uniform01();
  const int n_sources = 1 + rng.next_index(params.max_sources);
  const int n_relays = rng.next_index(params.max_relays + 1);
  const int n_bs = 1 + rng.next_index(params.max_bs);
  const double radius = 100.0 + 700.0 * rng.uniform01();
  inst.catalog = tiny_catalog(rng, params, requested_bw);
  const std::uint64_t seed = rng.next_u64();
  inst.topo = generate_cell(n_sources, n_relays, n_bs, radius, requested_bw, seed);
  inst.table = build_rate_table(inst.topo, inst.catalog, ChannelModel{}, mix_seed(seed, 17),
                                /*parallel=*/false);
  return inst;
}

TinyInstance random_integer_instance(Rng& rng, const TinyInstanceParams& params,
                                     double max_rate) {
  TinyInstance inst = random_channel_instance(rng, params);
  // Overwrite the channel rates with integer values; zero entries stay zero
  // so interface eligibility is untouched.
  for (double& w : inst.table.m2m)
    if (w > 0.0) w = 1.0 + std::floor(rng.uniform01() * max_rate);
  for (double& w : inst.table.m2b)
    if (w > 0.0) w = 1.0 + std::floor(rng.uniform01() * max_rate);
  return inst;
}

}  // namespace donsa
