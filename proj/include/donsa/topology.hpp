#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "donsa/rf_model.hpp"

namespace donsa {

enum class NodeRole { Source, Relay, BaseStation };

struct Node {
  int id = 0;
  NodeRole role = NodeRole::Source;
  double x = 0.0;
  double y = 0.0;
};

// A placed network: sources first (ids 0 .. n_sources-1), then relays, then
// base stations. Machine index == node id for sources and relays.
struct Topology {
  std::vector<Node> nodes;
  double cell_radius_m = 0.0;
  double requested_bw_hz = 0.0;
  int n_sources = 0;
  int n_relays = 0;
  int n_bs = 0;

  int n_machines() const { return n_sources + n_relays; }
  const Node& source(int s) const { return nodes[s]; }
  const Node& relay(int r) const { return nodes[n_sources + r]; }
  const Node& machine(int m) const { return nodes[m]; }
  const Node& base_station(int b) const { return nodes[n_sources + n_relays + b]; }
};

// Positions in the catalog of the M2M and M2B interfaces, in catalog order.
// Every table/vertex index below refers to these lists.
struct CatalogSplit {
  std::vector<int> m2m;
  std::vector<int> m2b;
};
CatalogSplit split_catalog(const std::vector<RfInterface>& catalog);

// Precomputed link rates for every in-scope (pair, interface) combination.
// Ineligible interfaces hold rate 0.
struct RateTable {
  int n_sources = 0;
  int n_relays = 0;
  int n_bs = 0;
  std::vector<std::string> m2m_ids;
  std::vector<std::string> m2b_ids;
  std::vector<double> m2m;  // [source][relay][m2m_rf]
  std::vector<double> m2b;  // [machine][bs][m2b_rf]; machines = sources then relays

  int n_m2m() const { return static_cast<int>(m2m_ids.size()); }
  int n_m2b() const { return static_cast<int>(m2b_ids.size()); }
  int n_machines() const { return n_sources + n_relays; }

  double m2m_rate(int s, int r, int tm) const {
    return m2m[(static_cast<std::size_t>(s) * n_relays + r) * m2m_ids.size() + tm];
  }
  double m2b_rate(int machine, int b, int tb) const {
    return m2b[(static_cast<std::size_t>(machine) * n_bs + b) * m2b_ids.size() + tb];
  }
  double& m2m_rate_ref(int s, int r, int tm) {
    return m2m[(static_cast<std::size_t>(s) * n_relays + r) * m2m_ids.size() + tm];
  }
  double& m2b_rate_ref(int machine, int b, int tb) {
    return m2b[(static_cast<std::size_t>(machine) * n_bs + b) * m2b_ids.size() + tb];
  }
};

// Places base stations on a uniform grid (a single BS sits at the origin)
// and machines uniformly at random inside the coverage disk of their
// nearest BS. Deterministic per seed.
Topology generate_cell(int n_sources, int n_relays, int n_bs, double cell_radius_m,
                       double requested_bw_hz, std::uint64_t seed);

// Computes the full rate table. Each (node pair, interface) entry uses an
// independent fading stream keyed by (seed, node ids, interface), so the
// result does not depend on evaluation order; `parallel` only controls
// whether rows are filled on multiple threads.
RateTable build_rate_table(const Topology& topo, const std::vector<RfInterface>& catalog,
                           const ChannelModel& cm, std::uint64_t seed, bool parallel = true);

// Plain-text round-trip of node placements (id, role, x, y per line).
std::string topology_to_text(const Topology& topo);
Topology topology_from_text(const std::string& text);

}  // namespace donsa
