#pragma once

#include <string>
#include <vector>

#include "donsa/assignment.hpp"

namespace donsa {

// A named restriction of the joint selection pipeline. Baselines are the
// same exact solver run on a narrowed candidate set, so objective ordering
// between algorithms follows from feasible-set nesting.
struct AlgorithmSpec {
  std::string name;
  std::vector<std::string> allowed_m2m;  // empty = every M2M interface
  std::vector<std::string> allowed_m2b;  // empty = every M2B interface
  bool relays_enabled = true;
  bool direct_enabled = true;
};

// Names accepted on the command line:
//   donsa_wbz_lmn  - joint selection over WiFi/Bluetooth/Z-Wave + LTE/LTE-M/NB-IoT
//   dorsa_wbz_l    - relay selection, dynamic M2M (WiFi/Bluetooth/Z-Wave), LTE uplink
//   sorsa_w_l      - relay selection, static WiFi + LTE
//   ditosa_l       - direct transmission to the BS over LTE
// "donsa" is also accepted and means: everything in the current catalog.
AlgorithmSpec algorithm_preset(const std::string& name);
std::vector<std::string> known_algorithms();

// Runs the pipeline restricted to the algorithm's interface sets and route
// kinds. The BS quota is recomputed over the allowed M2B set only. Throws
// UnknownRf if a named interface is missing from the catalog.
AssignmentResult run_algorithm(const AlgorithmSpec& spec, const Topology& topo,
                               const RateTable& table, const std::vector<RfInterface>& catalog,
                               const DonsaConfig& cfg = {});

}  // namespace donsa
