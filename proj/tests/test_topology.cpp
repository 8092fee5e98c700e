#include <cmath>
#include <doctest.h>

#include "donsa/config.hpp"
#include "donsa/errors.hpp"
#include "donsa/topology.hpp"

using namespace donsa;

TEST_CASE("generate_cell places the requested node counts") {
  const Topology topo = generate_cell(150, 150, 1, 500.0, 200e3, 11);
  CHECK(topo.nodes.size() == 301);
  CHECK(topo.n_sources == 150);
  CHECK(topo.n_relays == 150);
  CHECK(topo.n_bs == 1);
  // single BS sits at the center
  CHECK(topo.base_station(0).x == 0.0);
  CHECK(topo.base_station(0).y == 0.0);
}

TEST_CASE("empty machine set is fine") {
  const Topology topo = generate_cell(0, 0, 1, 500.0, 200e3, 11);
  CHECK(topo.nodes.size() == 1);
  CHECK(topo.nodes[0].role == NodeRole::BaseStation);
}

TEST_CASE("placement is deterministic per seed") {
  const Topology a = generate_cell(40, 20, 2, 300.0, 200e3, 99);
  const Topology b = generate_cell(40, 20, 2, 300.0, 200e3, 99);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].x == b.nodes[i].x);
    CHECK(a.nodes[i].y == b.nodes[i].y);
  }
  const Topology c = generate_cell(40, 20, 2, 300.0, 200e3, 100);
  bool any_differs = false;
  for (std::size_t i = 0; i < a.nodes.size() - 2; ++i)
    if (a.nodes[i].x != c.nodes[i].x) any_differs = true;
  CHECK(any_differs);
}

TEST_CASE("every machine lies within the radius of some BS") {
  const Topology topo = generate_cell(60, 60, 3, 400.0, 200e3, 5);
  for (int m = 0; m < topo.n_machines(); ++m) {
    double best = 1e18;
    for (int b = 0; b < topo.n_bs; ++b) {
      const double d = std::hypot(topo.machine(m).x - topo.base_station(b).x,
                                  topo.machine(m).y - topo.base_station(b).y);
      best = std::min(best, d);
    }
    CHECK(best <= 400.0 + 1e-9);
    CHECK(best > 0.0);
  }
}

TEST_CASE("invalid generation arguments are rejected") {
  CHECK_THROWS_AS(generate_cell(-1, 0, 1, 500.0, 200e3, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_cell(1, 0, 0, 500.0, 200e3, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_cell(1, 0, 1, 0.0, 200e3, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_cell(1, 0, 1, 500.0, 0.0, 1), InvalidArgument);
}

TEST_CASE("rate table has one entry per in-scope combination") {
  const Topology topo = generate_cell(2, 1, 1, 500.0, 200e3, 3);
  const auto catalog = default_catalog();  // 3 M2M + 3 M2B
  const RateTable table = build_rate_table(topo, catalog, ChannelModel{}, 3);
  CHECK(table.m2m.size() == 2 * 1 * 3);
  CHECK(table.m2b.size() == 3 * 1 * 3);
  CHECK(table.n_m2m() == 3);
  CHECK(table.n_m2b() == 3);
}

TEST_CASE("rates are non-negative and capped per interface") {
  const Topology topo = generate_cell(20, 10, 1, 500.0, 200e3, 8);
  const auto catalog = default_catalog();
  const RateTable table = build_rate_table(topo, catalog, ChannelModel{}, 8);
  const CatalogSplit split = split_catalog(catalog);
  for (int s = 0; s < 20; ++s)
    for (int r = 0; r < 10; ++r)
      for (int tm = 0; tm < table.n_m2m(); ++tm) {
        const double w = table.m2m_rate(s, r, tm);
        CHECK(w >= 0.0);
        CHECK(w <= catalog[split.m2m[tm]].max_rate_bps);
      }
  for (int m = 0; m < 30; ++m)
    for (int tb = 0; tb < table.n_m2b(); ++tb) {
      const double w = table.m2b_rate(m, 0, tb);
      CHECK(w >= 0.0);
      CHECK(w <= catalog[split.m2b[tb]].max_rate_bps);
    }
}

TEST_CASE("an oversized request zeroes the whole table") {
  const Topology topo = generate_cell(3, 2, 1, 500.0, 50e6, 4);  // 50 MHz beats every channel
  const RateTable table = build_rate_table(topo, default_catalog(), ChannelModel{}, 4);
  for (double w : table.m2m) CHECK(w == 0.0);
  for (double w : table.m2b) CHECK(w == 0.0);
}

TEST_CASE("table regeneration is bit-identical, parallel or not") {
  const Topology topo = generate_cell(30, 30, 1, 500.0, 200e3, 21);
  const auto catalog = default_catalog();
  const RateTable serial = build_rate_table(topo, catalog, ChannelModel{}, 21, false);
  const RateTable again = build_rate_table(topo, catalog, ChannelModel{}, 21, false);
  const RateTable parallel = build_rate_table(topo, catalog, ChannelModel{}, 21, true);
  CHECK(serial.m2m == again.m2m);
  CHECK(serial.m2b == again.m2b);
  CHECK(serial.m2m == parallel.m2m);
  CHECK(serial.m2b == parallel.m2b);
}

TEST_CASE("topology text round-trips") {
  const Topology topo = generate_cell(5, 3, 2, 250.0, 200e3, 77);
  const Topology back = topology_from_text(topology_to_text(topo));
  REQUIRE(back.nodes.size() == topo.nodes.size());
  CHECK(back.n_sources == topo.n_sources);
  CHECK(back.n_relays == topo.n_relays);
  CHECK(back.n_bs == topo.n_bs);
  for (std::size_t i = 0; i < topo.nodes.size(); ++i) {
    CHECK(back.nodes[i].id == topo.nodes[i].id);
    CHECK(back.nodes[i].role == topo.nodes[i].role);
    CHECK(back.nodes[i].x == topo.nodes[i].x);
    CHECK(back.nodes[i].y == topo.nodes[i].y);
  }
}
