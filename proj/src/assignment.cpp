#include "donsa/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "donsa/errors.hpp"

namespace donsa {

namespace {

AssignmentResult all_unmatched(int n_sources, int k) {
  AssignmentResult result;
  result.decisions.assign(n_sources, Decision{});
  result.k = k;
  return result;
}

bool allowed_at(const std::vector<char>& mask, int idx) {
  return mask.empty() || mask[idx] != 0;
}

}  // namespace

Quota compute_quota(const std::vector<RfInterface>& m2b_rfs, double requested_bw_hz, int n_bs,
                    int n_sources, bool truncate_to_sources, const std::vector<char>& allowed) {
  if (!(requested_bw_hz > 0.0)) throw InvalidArgument("requested_bw_hz must be > 0");
  Quota quota;
  quota.per_rf.reserve(m2b_rfs.size());
  for (int t = 0; t < static_cast<int>(m2b_rfs.size()); ++t) {
    const RfInterface& rf = m2b_rfs[t];
    long long cap = 0;
    // An interface whose channel cannot fit the request hosts nobody.
    if (allowed_at(allowed, t) && rf_eligible(rf, requested_bw_hz)) {
      const long long by_bw =
          static_cast<long long>(std::floor(rf.bs_total_bw_hz / requested_bw_hz));
      cap = std::min(by_bw, static_cast<long long>(rf.bs_conn_cap));
      if (truncate_to_sources) cap = std::min(cap, static_cast<long long>(n_sources));
      cap = std::max(cap, 0LL);
    }
    quota.per_rf.push_back(static_cast<int>(cap));
    quota.total += static_cast<int>(cap);
  }
  quota.k = std::min(n_sources, n_bs * quota.total);
  return quota;
}

VertexSet enumerate_vertices(const Topology& topo, const std::vector<RfInterface>& catalog,
                             const Quota& quota, const PipelineFilter& filter) {
  const CatalogSplit split = split_catalog(catalog);
  const double bw = topo.requested_bw_hz;
  VertexSet set;

  std::vector<int> m2m_eligible, m2b_eligible;
  for (int tm = 0; tm < static_cast<int>(split.m2m.size()); ++tm)
    if (allowed_at(filter.m2m_allowed, tm) && rf_eligible(catalog[split.m2m[tm]], bw))
      m2m_eligible.push_back(tm);
  for (int tb = 0; tb < static_cast<int>(split.m2b.size()); ++tb)
    if (allowed_at(filter.m2b_allowed, tb) && rf_eligible(catalog[split.m2b[tb]], bw))
      m2b_eligible.push_back(tb);

  if (filter.relays_enabled) {
    for (int r = 0; r < topo.n_relays; ++r)
      for (int tm : m2m_eligible)
        for (int b = 0; b < topo.n_bs; ++b)
          for (int tb : m2b_eligible) set.quadruples.push_back({r, tm, b, tb});
  }
  if (filter.direct_enabled) {
    for (int b = 0; b < topo.n_bs; ++b)
      for (int tb : m2b_eligible)
        for (int ch = 0; ch < quota.per_rf[tb]; ++ch) set.pairs.push_back({b, tb, ch});
  }
  return set;
}

double edge_weight(int source, const QuadrupleVertex& v, const RateTable& table) {
  const int relay_machine = table.n_sources + v.relay;
  return df_two_hop_rate(table.m2m_rate(source, v.relay, v.m2m_rf),
                         table.m2b_rate(relay_machine, v.bs, v.m2b_rf));
}

double edge_weight(int source, const PairVertex& v, const RateTable& table) {
  return table.m2b_rate(source, v.bs, v.m2b_rf);
}

SapInstance build_sap(const Topology& topo, const RateTable& table, const Quota& quota,
                      VertexSet vertices) {
  const int n_sources = topo.n_sources;
  const int r_cols = static_cast<int>(vertices.total());
  if (n_sources == 0 || r_cols == 0)
    throw EmptyProblem("assignment instance has no sources or no candidate vertices");

  // k never exceeds the number of real columns; with direct routes enabled
  // that is automatic (pairs alone are n_bs * total >= k), but a
  // relays-only restriction can offer fewer columns than the BS budget.
  const int k = std::min(quota.k, r_cols);
  const int n = n_sources + r_cols - k;

  SapInstance sap;
  sap.n_sources = n_sources;
  sap.k = k;
  sap.vertices = std::move(vertices);
  sap.weights = SquareMatrix(n, 0.0);
  sap.row_source.assign(n, -1);
  for (int i = 0; i < n_sources; ++i) sap.row_source[i] = i;

  sap.col_meta.assign(n, ColMeta{});
  const int n_quads = static_cast<int>(sap.vertices.quadruples.size());
  for (int j = 0; j < r_cols; ++j) {
    if (j < n_quads)
      sap.col_meta[j] = {ColKind::Quadruple, j};
    else
      sap.col_meta[j] = {ColKind::Pair, j - n_quads};
  }

  double sum = 0.0;
  for (int i = 0; i < n_sources; ++i) {
    for (int j = 0; j < r_cols; ++j) {
      const ColMeta& meta = sap.col_meta[j];
      const double w = meta.kind == ColKind::Quadruple
                           ? edge_weight(i, sap.vertices.quadruples[meta.index], table)
                           : edge_weight(i, sap.vertices.pairs[meta.index], table);
      sap.weights.at(i, j) = w;
      sum += w;
    }
  }
  sap.a_value = 1.0 + sum;
  for (int i = n_sources; i < n; ++i)
    for (int j = 0; j < r_cols; ++j) sap.weights.at(i, j) = sap.a_value;
  return sap;
}

AssignmentResult extract_assignment(const SapInstance& sap, const std::vector<int>& row_to_col) {
  AssignmentResult result;
  result.k = sap.k;
  result.decisions.reserve(sap.n_sources);
  for (int i = 0; i < sap.n_sources; ++i) {
    const int j = row_to_col[i];
    const ColMeta& meta = sap.col_meta[j];
    Decision d;
    // A zero-weight real column is a dead link; report it as no connection
    // so achieved_rate == 0 always means unmatched.
    if (meta.kind != ColKind::Dummy && sap.weights.at(i, j) > 0.0) {
      d.rate_bps = sap.weights.at(i, j);
      if (meta.kind == ColKind::Quadruple) {
        const QuadrupleVertex& v = sap.vertices.quadruples[meta.index];
        d.kind = DecisionKind::Relayed;
        d.relay = v.relay;
        d.m2m_rf = v.m2m_rf;
        d.bs = v.bs;
        d.m2b_rf = v.m2b_rf;
      } else {
        const PairVertex& v = sap.vertices.pairs[meta.index];
        d.kind = DecisionKind::Direct;
        d.bs = v.bs;
        d.m2b_rf = v.m2b_rf;
      }
      ++result.matched;
    }
    result.objective_bps += d.rate_bps;
    result.decisions.push_back(d);
  }
  return result;
}

AssignmentResult run_pipeline(const Topology& topo, const RateTable& table,
                              const std::vector<RfInterface>& catalog,
                              const PipelineFilter& filter, const DonsaConfig& cfg) {
  const CatalogSplit split = split_catalog(catalog);
  std::vector<RfInterface> m2b_rfs;
  for (int idx : split.m2b) m2b_rfs.push_back(catalog[idx]);
  const Quota quota = compute_quota(m2b_rfs, topo.requested_bw_hz, topo.n_bs, topo.n_sources,
                                    cfg.truncate_channels_to_sources, filter.m2b_allowed);

  AssignmentResult result;
  if (topo.n_sources == 0) {
    result.k = quota.k;
    return result;
  }
  VertexSet vertices = enumerate_vertices(topo, catalog, quota, filter);
  if (vertices.total() == 0) {
    result = all_unmatched(topo.n_sources, quota.k);
  } else {
    SapInstance sap = build_sap(topo, table, quota, std::move(vertices));
    const HungarianResult solved = hungarian_solve(sap.weights, /*maximize=*/true);
    result = extract_assignment(sap, solved.row_to_col);
  }
  if (cfg.repair_conflicts) result = repair_conflicts(std::move(result), catalog, quota);
  return result;
}

AssignmentResult run_donsa(const Topology& topo, const RateTable& table,
                       const std::vector<RfInterface>& catalog, const DonsaConfig& cfg) {
  return run_pipeline(topo, table, catalog, PipelineFilter{}, cfg);
}

namespace {

struct BruteForceState {
  const RateTable* table = nullptr;
  int n_sources = 0;
  int k = 0;
  // Candidate routes shared by all sources.
  std::vector<QuadrupleVertex> quads;
  std::vector<std::pair<int, int>> pair_kinds;  // (bs, m2b_rf)
  std::vector<int> pair_capacity;

  std::vector<char> quad_used;
  std::vector<int> pair_left;
  std::vector<Decision> current;
  std::vector<Decision> best;
  double best_objective = -1.0;

  void consider(double objective) {
    if (objective > best_objective) {
      best_objective = objective;
      best = current;
    }
  }

  void search(int s, int matched, double sum) {
    if (s == n_sources) {
      consider(sum);
      return;
    }
    // Option 1: leave this source unmatched.
    current[s] = Decision{};
    search(s + 1, matched, sum);
    if (matched == k) return;
    // Option 2: a two-hop route through an unused quadruple.
    for (std::size_t q = 0; q < quads.size(); ++q) {
      if (quad_used[q]) continue;
      const QuadrupleVertex& v = quads[q];
      const double w = std::min(table->m2m_rate(s, v.relay, v.m2m_rf),
                                table->m2b_rate(table->n_sources + v.relay, v.bs, v.m2b_rf));
      if (w <= 0.0) continue;  // a dead route never beats staying unmatched
      quad_used[q] = 1;
      current[s] = Decision{DecisionKind::Relayed, v.relay, v.m2m_rf, v.bs, v.m2b_rf, w};
      search(s + 1, matched + 1, sum + w);
      quad_used[q] = 0;
    }
    // Option 3: a direct route with remaining capacity.
    for (std::size_t p = 0; p < pair_kinds.size(); ++p) {
      if (pair_left[p] == 0) continue;
      const auto [bs, tb] = pair_kinds[p];
      const double w = table->m2b_rate(s, bs, tb);
      if (w <= 0.0) continue;
      --pair_left[p];
      current[s] = Decision{DecisionKind::Direct, -1, -1, bs, tb, w};
      search(s + 1, matched + 1, sum + w);
      ++pair_left[p];
    }
  }
};

}  // namespace

BruteForceResult brute_force_solve(const Topology& topo, const RateTable& table,
                                   const Quota& quota, double max_candidates) {
  BruteForceState state;
  state.table = &table;
  state.n_sources = topo.n_sources;
  state.k = quota.k;
  for (int r = 0; r < topo.n_relays; ++r)
    for (int tm = 0; tm < table.n_m2m(); ++tm)
      for (int b = 0; b < topo.n_bs; ++b)
        for (int tb = 0; tb < table.n_m2b(); ++tb) state.quads.push_back({r, tm, b, tb});
  for (int b = 0; b < topo.n_bs; ++b)
    for (int tb = 0; tb < table.n_m2b(); ++tb)
      if (quota.per_rf[tb] > 0) {
        state.pair_kinds.emplace_back(b, tb);
        state.pair_capacity.push_back(quota.per_rf[tb]);
      }

  const double options = 1.0 + static_cast<double>(state.quads.size()) +
                         static_cast<double>(state.pair_kinds.size());
  const double space = std::pow(options, topo.n_sources);
  if (space > max_candidates)
    throw SearchSpaceTooLarge("brute force space ~" + std::to_string(space) + " exceeds limit " +
                              std::to_string(max_candidates));

  state.quad_used.assign(state.quads.size(), 0);
  state.pair_left = state.pair_capacity;
  state.current.assign(topo.n_sources, Decision{});
  state.best = state.current;
  state.best_objective = -1.0;
  state.search(0, 0, 0.0);

  BruteForceResult result;
  result.objective_bps = std::max(state.best_objective, 0.0);
  result.assignment.decisions = state.best;
  result.assignment.k = quota.k;
  for (const Decision& d : state.best) {
    result.assignment.objective_bps += d.rate_bps;
    if (d.kind != DecisionKind::Unmatched) ++result.assignment.matched;
  }
  return result;
}

ConflictReport audit_conflicts(const AssignmentResult& result,
                               const std::vector<RfInterface>& catalog, const Quota& quota) {
  (void)catalog;
  ConflictReport report;
  std::map<std::pair<int, int>, int> relay_use;   // (relay, m2m_rf) -> sources
  std::map<std::pair<int, int>, int> bs_use;      // (bs, m2b_rf) -> connections
  for (const Decision& d : result.decisions) {
    if (d.kind == DecisionKind::Relayed) {
      ++relay_use[{d.relay, d.m2m_rf}];
      ++bs_use[{d.bs, d.m2b_rf}];
    } else if (d.kind == DecisionKind::Direct) {
      ++bs_use[{d.bs, d.m2b_rf}];
    }
  }
  for (const auto& [key, count] : relay_use)
    if (count > 1) report.relay_reuse.push_back({key.first, key.second, count});
  for (const auto& [key, used] : bs_use) {
    const int limit = quota.per_rf[key.second];
    if (used > limit) report.bs_overuse.push_back({key.first, key.second, used, limit});
  }
  return report;
}

AssignmentResult repair_conflicts(AssignmentResult result,
                                  const std::vector<RfInterface>& catalog, const Quota& quota) {
  for (;;) {
    const ConflictReport report = audit_conflicts(result, catalog, quota);
    if (report.empty()) break;
    // Drop the lowest-rate source participating in any conflict group
    // (lowest index on ties), then re-audit.
    int victim = -1;
    for (int s = 0; s < static_cast<int>(result.decisions.size()); ++s) {
      const Decision& d = result.decisions[s];
      if (d.kind == DecisionKind::Unmatched) continue;
      bool in_conflict = false;
      for (const auto& c : report.relay_reuse)
        if (d.kind == DecisionKind::Relayed && d.relay == c.relay && d.m2m_rf == c.m2m_rf)
          in_conflict = true;
      for (const auto& c : report.bs_overuse)
        if (d.bs == c.bs && d.m2b_rf == c.m2b_rf) in_conflict = true;
      if (!in_conflict) continue;
      if (victim < 0 || d.rate_bps < result.decisions[victim].rate_bps) victim = s;
    }
    if (victim < 0) break;  // report says conflict but nobody matched: cannot happen
    result.objective_bps -= result.decisions[victim].rate_bps;
    result.decisions[victim] = Decision{};
    --result.matched;
  }
  return result;
}

std::string sap_to_text(const SapInstance& sap) {
  std::ostringstream out;
  out.precision(17);
  const int n = sap.weights.size();
  out << "# donsa sap v1\n";
  out << "n " << n << "\n";
  out << "n_sources " << sap.n_sources << "\n";
  out << "k " << sap.k << "\n";
  out << "a_value " << sap.a_value << "\n";
  out << "rows";
  for (int i = 0; i < n; ++i) out << " " << (sap.row_source[i] >= 0 ? "source" : "dummy");
  out << "\ncols";
  for (const ColMeta& meta : sap.col_meta) {
    switch (meta.kind) {
      case ColKind::Quadruple: {
        const QuadrupleVertex& v = sap.vertices.quadruples[meta.index];
        out << " q(" << v.relay << "," << v.m2m_rf << "," << v.bs << "," << v.m2b_rf << ")";
        break;
      }
      case ColKind::Pair: {
        const PairVertex& v = sap.vertices.pairs[meta.index];
        out << " p(" << v.bs << "," << v.m2b_rf << "," << v.channel << ")";
        break;
      }
      default:
        out << " dummy";
    }
  }
  out << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << sap.weights.at(i, j);
    out << "\n";
  }
  return out.str();
}

std::string assignment_to_text(const AssignmentResult& result, const RateTable& table,
                               const Quota& quota) {
  std::ostringstream out;
  out.precision(17);
  out << "# donsa assignment v1\n";
  out << "n_sources " << result.decisions.size() << "\n";
  out << "n_bs " << table.n_bs << "\n";
  out << "k " << result.k << "\n";
  out << "objective_bps " << result.objective_bps << "\n";
  out << "m2m_rf";
  for (const std::string& id : table.m2m_ids) out << " " << id;
  out << "\nm2b_rf";
  for (const std::string& id : table.m2b_ids) out << " " << id;
  out << "\nquota";
  for (int q : quota.per_rf) out << " " << q;
  out << "\n";
  for (std::size_t s = 0; s < result.decisions.size(); ++s) {
    const Decision& d = result.decisions[s];
    out << "source " << s << " ";
    switch (d.kind) {
      case DecisionKind::Unmatched:
        out << "unmatched";
        break;
      case DecisionKind::Direct:
        out << "direct " << d.bs << " " << table.m2b_ids[d.m2b_rf] << " " << d.rate_bps;
        break;
      case DecisionKind::Relayed:
        out << "relayed " << d.relay << " " << table.m2m_ids[d.m2m_rf] << " " << d.bs << " "
            << table.m2b_ids[d.m2b_rf] << " " << d.rate_bps;
        break;
    }
    out << "\n";
  }
  return out.str();
}

AssignmentDump assignment_from_text(const std::string& text) {
  AssignmentDump dump;
  std::istringstream in(text);
  std::string line;
  int n_sources = -1;
  auto rf_index = [](const std::vector<std::string>& ids, const std::string& name) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == name) return static_cast<int>(i);
    throw IoError("assignment dump references unknown interface '" + name + "'");
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "n_sources") {
      fields >> n_sources;
    } else if (head == "n_bs") {
      fields >> dump.n_bs;
    } else if (head == "k") {
      fields >> dump.result.k >> std::ws;
      dump.quota.k = dump.result.k;
    } else if (head == "objective_bps") {
      double ignored;
      fields >> ignored;  // recomputed below from the decisions
    } else if (head == "m2m_rf") {
      std::string id;
      while (fields >> id) dump.m2m_ids.push_back(id);
    } else if (head == "m2b_rf") {
      std::string id;
      while (fields >> id) dump.m2b_ids.push_back(id);
    } else if (head == "quota") {
      int q;
      while (fields >> q) {
        dump.quota.per_rf.push_back(q);
        dump.quota.total += q;
      }
    } else if (head == "source") {
      int s = 0;
      std::string kind;
      fields >> s >> kind;
      Decision d;
      if (kind == "direct") {
        std::string rf;
        d.kind = DecisionKind::Direct;
        fields >> d.bs >> rf >> d.rate_bps;
        d.m2b_rf = rf_index(dump.m2b_ids, rf);
      } else if (kind == "relayed") {
        std::string m2m, m2b;
        d.kind = DecisionKind::Relayed;
        fields >> d.relay >> m2m >> d.bs >> m2b >> d.rate_bps;
        d.m2m_rf = rf_index(dump.m2m_ids, m2m);
        d.m2b_rf = rf_index(dump.m2b_ids, m2b);
      } else if (kind != "unmatched") {
        throw IoError("assignment dump: unknown decision kind '" + kind + "'");
      }
      if (fields.fail()) throw IoError("assignment dump: malformed source line");
      if (static_cast<int>(dump.result.decisions.size()) != s)
        throw IoError("assignment dump: source lines out of order");
      dump.result.decisions.push_back(d);
      dump.result.objective_bps += d.rate_bps;
      if (d.kind != DecisionKind::Unmatched) ++dump.result.matched;
    } else {
      throw IoError("assignment dump: unknown line '" + head + "'");
    }
  }
  if (n_sources < 0 || static_cast<int>(dump.result.decisions.size()) != n_sources)
    throw IoError("assignment dump: missing or inconsistent n_sources");
  if (dump.quota.per_rf.size() != dump.m2b_ids.size())
    throw IoError("assignment dump: quota width does not match m2b interface list");
  return dump;
}

}  // namespace donsa
