#pragma once

#include <optional>
#include <string>
#include <vector>

#include "donsa/hungarian.hpp"
#include "donsa/topology.hpp"

namespace donsa {

// A candidate two-hop route: source -> relay (M2M interface) -> BS (M2B
// interface). One quadruple can carry at most one source.
struct QuadrupleVertex {
  int relay = 0;   // relay index, 0-based
  int m2m_rf = 0;  // index into RateTable::m2m_ids
  int bs = 0;      // BS index
  int m2b_rf = 0;  // index into RateTable::m2b_ids
};

// A candidate direct route: source -> BS on an M2B interface. Replicated
// once per connection slot of that (BS, interface).
struct PairVertex {
  int bs = 0;
  int m2b_rf = 0;
  int channel = 0;  // replica index, 0 .. quota-1
};

// Per-BS connection budget. per_rf is aligned with RateTable::m2b_ids;
// an interface that cannot host the requested bandwidth contributes 0.
struct Quota {
  std::vector<int> per_rf;
  int total = 0;           // sum over per_rf
  int k = 0;               // min(n_sources, n_bs * total)
};

Quota compute_quota(const std::vector<RfInterface>& m2b_rfs, double requested_bw_hz, int n_bs,
                    int n_sources, bool truncate_to_sources = true,
                    const std::vector<char>& allowed = {});

struct VertexSet {
  std::vector<QuadrupleVertex> quadruples;
  std::vector<PairVertex> pairs;
  std::size_t total() const { return quadruples.size() + pairs.size(); }
};

// Restricts which interfaces and route kinds participate in a solve.
// Default: everything enabled; baselines narrow it.
struct PipelineFilter {
  std::vector<char> m2m_allowed;  // aligned with m2m_ids; empty = all
  std::vector<char> m2b_allowed;  // aligned with m2b_ids; empty = all
  bool relays_enabled = true;
  bool direct_enabled = true;
};

// Full cross product of eligible routes, deterministically ordered:
// quadruples sorted by (relay, m2m, bs, m2b), then pairs by (bs, m2b,
// channel).
VertexSet enumerate_vertices(const Topology& topo, const std::vector<RfInterface>& catalog,
                             const Quota& quota, const PipelineFilter& filter = {});

double edge_weight(int source, const QuadrupleVertex& v, const RateTable& table);
double edge_weight(int source, const PairVertex& v, const RateTable& table);

enum class ColKind { Quadruple, Pair, Dummy };
struct ColMeta {
  ColKind kind = ColKind::Dummy;
  int index = -1;  // into VertexSet::quadruples or ::pairs
};

// Padded square instance handed to the Hungarian solver. Rows: real sources
// then dummies; columns: real vertices then dummies. Dummy-row edges to real
// columns carry a_value so the optimum always leaves exactly k real columns
// to the sources.
struct SapInstance {
  SquareMatrix weights;
  int n_sources = 0;
  int k = 0;
  double a_value = 0.0;
  std::vector<int> row_source;   // row -> source index, -1 for dummy rows
  std::vector<ColMeta> col_meta;
  VertexSet vertices;
};

// Throws EmptyProblem when there are no sources or no vertices.
SapInstance build_sap(const Topology& topo, const RateTable& table, const Quota& quota,
                      VertexSet vertices);

enum class DecisionKind { Unmatched, Direct, Relayed };

struct Decision {
  DecisionKind kind = DecisionKind::Unmatched;
  int relay = -1;
  int m2m_rf = -1;
  int bs = -1;
  int m2b_rf = -1;
  double rate_bps = 0.0;
};

struct AssignmentResult {
  std::vector<Decision> decisions;  // one per source
  double objective_bps = 0.0;
  int matched = 0;
  int k = 0;
};

AssignmentResult extract_assignment(const SapInstance& sap, const std::vector<int>& row_to_col);

struct DonsaConfig {
  bool truncate_channels_to_sources = true;
  bool repair_conflicts = false;
};

// The full pipeline: quota -> vertices -> padded instance -> Hungarian ->
// extraction. Degenerate inputs (no sources, no capacity) come back as
// all-unmatched results with objective 0.
AssignmentResult run_pipeline(const Topology& topo, const RateTable& table,
                              const std::vector<RfInterface>& catalog,
                              const PipelineFilter& filter, const DonsaConfig& cfg);

AssignmentResult run_donsa(const Topology& topo, const RateTable& table,
                       const std::vector<RfInterface>& catalog, const DonsaConfig& cfg = {});

// Independent exhaustive oracle over injective source -> route mappings with
// at most k matched sources. Never touches the padding or the solver.
// Throws SearchSpaceTooLarge when the candidate count exceeds max_candidates.
struct BruteForceResult {
  double objective_bps = 0.0;
  AssignmentResult assignment;
};
BruteForceResult brute_force_solve(const Topology& topo, const RateTable& table,
                                   const Quota& quota, double max_candidates = 1e7);

// Composition audit. The optimizer enforces only the aggregate budget k, so
// one relay channel or one (BS, RF) quota can end up oversubscribed; this
// reports both kinds without changing the assignment.
struct ConflictReport {
  struct RelayReuse {
    int relay = 0;
    int m2m_rf = 0;
    int count = 0;
  };
  struct BsOveruse {
    int bs = 0;
    int m2b_rf = 0;
    int used = 0;
    int quota = 0;
  };
  std::vector<RelayReuse> relay_reuse;
  std::vector<BsOveruse> bs_overuse;
  bool empty() const { return relay_reuse.empty() && bs_overuse.empty(); }
};

ConflictReport audit_conflicts(const AssignmentResult& result,
                               const std::vector<RfInterface>& catalog, const Quota& quota);

// Greedy repair: repeatedly unmatch the lowest-rate source involved in any
// conflict until the report is clean. Off by default.
AssignmentResult repair_conflicts(AssignmentResult result,
                                  const std::vector<RfInterface>& catalog, const Quota& quota);

// Plain-text debug dumps.
std::string sap_to_text(const SapInstance& sap);
std::string assignment_to_text(const AssignmentResult& result, const RateTable& table,
                               const Quota& quota);

// Re-reads an assignment dump. Returns the result plus the quota and
// interface names needed to audit it.
struct AssignmentDump {
  AssignmentResult result;
  Quota quota;
  std::vector<std::string> m2m_ids;
  std::vector<std::string> m2b_ids;
  int n_bs = 1;
};
AssignmentDump assignment_from_text(const std::string& text);

}  // namespace donsa
