#include "donsa/baselines.hpp"

#include <algorithm>

#include "donsa/errors.hpp"

namespace donsa {

namespace {

std::vector<char> build_mask(const std::vector<std::string>& allowed,
                             const std::vector<std::string>& ids, const std::string& algo) {
  if (allowed.empty()) return {};
  std::vector<char> mask(ids.size(), 0);
  for (const std::string& name : allowed) {
    const auto it = std::find(ids.begin(), ids.end(), name);
    if (it == ids.end())
      throw UnknownRf("algorithm '" + algo + "' needs interface '" + name +
                      "' which is not in the catalog");
    mask[static_cast<std::size_t>(it - ids.begin())] = 1;
  }
  return mask;
}

}  // namespace

AlgorithmSpec algorithm_preset(const std::string& name) {
  AlgorithmSpec spec;
  spec.name = name;
  if (name == "donsa") {
    return spec;  // whole catalog, relays and direct routes
  }
  if (name == "donsa_wbz_lmn") {
    spec.allowed_m2m = {"wifi", "bluetooth", "zwave"};
    spec.allowed_m2b = {"lte", "ltem", "nbiot"};
    return spec;
  }
  if (name == "dorsa_wbz_l") {
    spec.allowed_m2m = {"wifi", "bluetooth", "zwave"};
    spec.allowed_m2b = {"lte"};
    spec.direct_enabled = false;
    return spec;
  }
  if (name == "sorsa_w_l") {
    spec.allowed_m2m = {"wifi"};
    spec.allowed_m2b = {"lte"};
    spec.direct_enabled = false;
    return spec;
  }
  if (name == "ditosa_l") {
    spec.allowed_m2b = {"lte"};
    spec.relays_enabled = false;
    return spec;
  }
  throw UnknownAlgorithm("unknown algorithm '" + name + "'");
}

std::vector<std::string> known_algorithms() {
  return {"donsa_wbz_lmn", "dorsa_wbz_l", "sorsa_w_l", "ditosa_l"};
}

AssignmentResult run_algorithm(const AlgorithmSpec& spec, const Topology& topo,
                               const RateTable& table, const std::vector<RfInterface>& catalog,
                               const DonsaConfig& cfg) {
  if (spec.name == "ditosa_l" && spec.relays_enabled)
    throw InvalidArgument("ditosa_l is direct-only; relays cannot be enabled");
  if (spec.name == "sorsa_w_l" && (spec.allowed_m2m.size() != 1 || spec.allowed_m2b.size() != 1))
    throw InvalidArgument("sorsa_w_l uses exactly one static interface per hop");

  PipelineFilter filter;
  filter.m2m_allowed = build_mask(spec.allowed_m2m, table.m2m_ids, spec.name);
  filter.m2b_allowed = build_mask(spec.allowed_m2b, table.m2b_ids, spec.name);
  filter.relays_enabled = spec.relays_enabled;
  filter.direct_enabled = spec.direct_enabled;
  return run_pipeline(topo, table, catalog, filter, cfg);
}

}  // namespace donsa
