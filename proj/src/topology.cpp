#include "donsa/topology.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "donsa/errors.hpp"

namespace donsa {

namespace {

constexpr std::uint64_t kPlacementSalt = 0x746f706f6c6f6779ULL;

double distance(const Node& a, const Node& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

const char* role_name(NodeRole role) {
  switch (role) {
    case NodeRole::Source: return "source";
    case NodeRole::Relay: return "relay";
    default: return "bs";
  }
}

}  // namespace

CatalogSplit split_catalog(const std::vector<RfInterface>& catalog) {
  CatalogSplit split;
  for (int i = 0; i < static_cast<int>(catalog.size()); ++i) {
    if (catalog[i].rf_class == RfClass::M2M)
      split.m2m.push_back(i);
    else
      split.m2b.push_back(i);
  }
  return split;
}

Topology generate_cell(int n_sources, int n_relays, int n_bs, double cell_radius_m,
                       double requested_bw_hz, std::uint64_t seed) {
  if (n_sources < 0 || n_relays < 0) throw InvalidArgument("node counts must be >= 0");
  if (n_bs < 1) throw InvalidArgument("at least one base station is required");
  if (!(cell_radius_m > 0.0)) throw InvalidArgument("cell_radius_m must be > 0");
  if (!(requested_bw_hz > 0.0)) throw InvalidArgument("requested_bw_hz must be > 0");

  Topology topo;
  topo.cell_radius_m = cell_radius_m;
  topo.requested_bw_hz = requested_bw_hz;
  topo.n_sources = n_sources;
  topo.n_relays = n_relays;
  topo.n_bs = n_bs;

  // Base stations on a grid with 2R spacing: coverage disks do not overlap,
  // so a machine drawn inside a disk has that BS as its nearest.
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_bs))));
  const int rows = (n_bs + cols - 1) / cols;
  std::vector<Node> bs_nodes;
  for (int b = 0; b < n_bs; ++b) {
    const int cx = b % cols;
    const int cy = b / cols;
    Node node;
    node.id = n_sources + n_relays + b;
    node.role = NodeRole::BaseStation;
    node.x = (cx - (cols - 1) / 2.0) * 2.0 * cell_radius_m;
    node.y = (cy - (rows - 1) / 2.0) * 2.0 * cell_radius_m;
    bs_nodes.push_back(node);
  }

  Rng rng(mix_seed(seed, kPlacementSalt));
  const int n_machines = n_sources + n_relays;
  topo.nodes.reserve(n_machines + n_bs);
  for (int m = 0; m < n_machines; ++m) {
    Node node;
    node.id = m;
    node.role = m < n_sources ? NodeRole::Source : NodeRole::Relay;
    const Node& bs = bs_nodes[n_bs == 1 ? 0 : rng.next_index(n_bs)];
    for (;;) {
      const double radius = cell_radius_m * std::sqrt(rng.uniform01());
      const double theta = 6.283185307179586476925286766559 * rng.uniform01();
      node.x = bs.x + radius * std::cos(theta);
      node.y = bs.y + radius * std::sin(theta);
      // Re-sample co-located nodes so link distances are never zero.
      bool collides = distance(node, bs) < 1e-9;
      for (const Node& placed : topo.nodes)
        if (distance(node, placed) < 1e-9) collides = true;
      if (!collides) break;
    }
    topo.nodes.push_back(node);
  }
  for (const Node& bs : bs_nodes) topo.nodes.push_back(bs);
  return topo;
}

RateTable build_rate_table(const Topology& topo, const std::vector<RfInterface>& catalog,
                           const ChannelModel& cm, std::uint64_t seed, bool parallel) {
  const CatalogSplit split = split_catalog(catalog);
  if (split.m2m.empty() || split.m2b.empty())
    throw InvalidArgument("catalog needs at least one M2M and one M2B interface");
  for (const RfInterface& rf : catalog) validate(rf);
  validate(cm);

  RateTable table;
  table.n_sources = topo.n_sources;
  table.n_relays = topo.n_relays;
  table.n_bs = topo.n_bs;
  for (int idx : split.m2m) table.m2m_ids.push_back(catalog[idx].id);
  for (int idx : split.m2b) table.m2b_ids.push_back(catalog[idx].id);
  table.m2m.assign(static_cast<std::size_t>(topo.n_sources) * topo.n_relays * split.m2m.size(),
                   0.0);
  table.m2b.assign(static_cast<std::size_t>(topo.n_machines()) * topo.n_bs * split.m2b.size(),
                   0.0);

  const double bw_req = topo.requested_bw_hz;
  auto link_rate = [&](const Node& a, const Node& b, int catalog_idx) {
    const RfInterface& rf = catalog[catalog_idx];
    if (!rf_eligible(rf, bw_req)) return 0.0;
    const double bw = std::min(bw_req, rf.channel_bw_hz);
    Rng stream(mix_seed(seed, static_cast<std::uint64_t>(a.id), static_cast<std::uint64_t>(b.id),
                        static_cast<std::uint64_t>(catalog_idx)));
    const FadingDraw fading = sample_fading(stream, cm);
    const double sinr = link_sinr(distance(a, b), rf, cm, fading, bw);
    return capped_link_rate(shannon_rate(bw, sinr), rf);
  };

  const int n_machines = topo.n_machines();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (int m = 0; m < n_machines; ++m) {
    if (m < topo.n_sources) {
      for (int r = 0; r < topo.n_relays; ++r)
        for (std::size_t tm = 0; tm < split.m2m.size(); ++tm)
          table.m2m_rate_ref(m, r, static_cast<int>(tm)) =
              link_rate(topo.source(m), topo.relay(r), split.m2m[tm]);
    }
    for (int b = 0; b < topo.n_bs; ++b)
      for (std::size_t tb = 0; tb < split.m2b.size(); ++tb)
        table.m2b_rate_ref(m, b, static_cast<int>(tb)) =
            link_rate(topo.machine(m), topo.base_station(b), split.m2b[tb]);
  }
  return table;
}

std::string topology_to_text(const Topology& topo) {
  std::ostringstream out;
  out << "# donsa topology v1\n";
  out << "counts " << topo.n_sources << " " << topo.n_relays << " " << topo.n_bs << "\n";
  out << "cell_radius_m " << topo.cell_radius_m << "\n";
  out << "requested_bw_hz " << topo.requested_bw_hz << "\n";
  out.precision(17);
  for (const Node& node : topo.nodes)
    out << node.id << " " << role_name(node.role) << " " << node.x << " " << node.y << "\n";
  return out.str();
}

Topology topology_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Topology topo;
  bool have_counts = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "counts") {
      fields >> topo.n_sources >> topo.n_relays >> topo.n_bs;
      have_counts = true;
    } else if (head == "cell_radius_m") {
      fields >> topo.cell_radius_m;
    } else if (head == "requested_bw_hz") {
      fields >> topo.requested_bw_hz;
    } else {
      Node node;
      node.id = std::stoi(head);
      std::string role;
      fields >> role >> node.x >> node.y;
      if (role == "source") node.role = NodeRole::Source;
      else if (role == "relay") node.role = NodeRole::Relay;
      else if (role == "bs") node.role = NodeRole::BaseStation;
      else throw IoError("topology text: unknown role '" + role + "'");
      if (fields.fail()) throw IoError("topology text: malformed node line");
      topo.nodes.push_back(node);
    }
  }
  if (!have_counts || topo.nodes.size() !=
      static_cast<std::size_t>(topo.n_sources + topo.n_relays + topo.n_bs))
    throw IoError("topology text: counts do not match node lines");
  return topo;
}

}  // namespace donsa
