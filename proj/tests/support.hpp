#pragma once

// Hand-built fixtures shared by the unit tests: topologies with given
// counts and rate tables with injected entries, so expected optima can be
// worked out on paper.

#include <cmath>
#include <string>
#include <vector>

#include "donsa/assignment.hpp"

namespace donsa::testsupport {

// Equality up to float summation order. Two exact optimizers can report the
// same optimum as sums over permuted rate multisets, which differ by ulps;
// genuine optimality gaps on these instances are at least ~1e-7 relative.
inline bool same_objective(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-12 * scale;
}

inline Topology counts_topology(int n_sources, int n_relays, int n_bs,
                                double requested_bw_hz = 200e3) {
  Topology topo;
  topo.n_sources = n_sources;
  topo.n_relays = n_relays;
  topo.n_bs = n_bs;
  topo.cell_radius_m = 500.0;
  topo.requested_bw_hz = requested_bw_hz;
  for (int i = 0; i < n_sources + n_relays + n_bs; ++i) {
    Node node;
    node.id = i;
    node.role = i < n_sources ? NodeRole::Source
                              : (i < n_sources + n_relays ? NodeRole::Relay
                                                          : NodeRole::BaseStation);
    node.x = static_cast<double>(i);  // distinct placeholder positions
    node.y = 0.0;
    topo.nodes.push_back(node);
  }
  return topo;
}

inline RateTable zero_table(const Topology& topo, std::vector<std::string> m2m_ids,
                            std::vector<std::string> m2b_ids) {
  RateTable table;
  table.n_sources = topo.n_sources;
  table.n_relays = topo.n_relays;
  table.n_bs = topo.n_bs;
  table.m2m_ids = std::move(m2m_ids);
  table.m2b_ids = std::move(m2b_ids);
  table.m2m.assign(static_cast<std::size_t>(topo.n_sources) * topo.n_relays *
                       table.m2m_ids.size(),
                   0.0);
  table.m2b.assign(static_cast<std::size_t>(topo.n_machines()) * topo.n_bs *
                       table.m2b_ids.size(),
                   0.0);
  return table;
}

// Catalog whose interfaces are all eligible at 200 kHz; quota parameters are
// supplied by the caller.
inline std::vector<RfInterface> simple_catalog(int m2m_count, int m2b_count, int quota_per_rf,
                                               int conn_cap = 100) {
  std::vector<RfInterface> catalog;
  for (int t = 0; t < m2m_count; ++t) {
    RfInterface rf;
    rf.id = "m" + std::to_string(t);
    rf.rf_class = RfClass::M2M;
    rf.channel_bw_hz = 1e6;
    catalog.push_back(rf);
  }
  for (int t = 0; t < m2b_count; ++t) {
    RfInterface rf;
    rf.id = "b" + std::to_string(t);
    rf.rf_class = RfClass::M2B;
    rf.channel_bw_hz = 1e6;
    rf.bs_total_bw_hz = quota_per_rf * 200e3;
    rf.bs_conn_cap = conn_cap;
    catalog.push_back(rf);
  }
  return catalog;
}

}  // namespace donsa::testsupport
