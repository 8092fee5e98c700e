#pragma once

#include "donsa/assignment.hpp"

namespace donsa {

// Random instance generators shared by the self-test subcommand, the
// property tests and the acceptance suite.

struct TinyInstance {
  Topology topo;
  RateTable table;
  std::vector<RfInterface> catalog;
};

struct TinyInstanceParams {
  int max_sources = 4;
  int max_relays = 2;
  int max_bs = 1;
  int max_quota_per_rf = 3;  // keeps Q_BS small enough for the oracle
  int m2m_count = 2;
  int m2b_count = 2;
};

// A small instance generated through the regular placement + channel path,
// so rates are continuous and both padding regimes occur across seeds.
TinyInstance random_channel_instance(Rng& rng, const TinyInstanceParams& params = {});

// Same shape, but the rate table is filled with random INTEGER-valued
// rates (exactly representable in double). Used by the scale-invariance
// checks where expected objectives must multiply exactly.
TinyInstance random_integer_instance(Rng& rng, const TinyInstanceParams& params = {},
                                     double max_rate = 1048576.0 * 1024.0);

}  // namespace donsa
