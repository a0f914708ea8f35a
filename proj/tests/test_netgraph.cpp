#include <doctest.h>

#include <vector>

#include "gwloc/netgraph.hpp"
#include "gwloc/topogen.hpp"
#include "oracles.hpp"

using namespace gwloc;

namespace {

ConnectivityGraph from(int n, const oracle::Edges& e) { return graph_from_edges(n, e); }

}  // namespace

TEST_CASE("build_graph") {
  SUBCASE("only pairs within range are linked") {
    const std::vector<Point> cells{{0, 0}, {150, 0}, {400, 0}};
    const auto g = build_graph(cells, 200.0);
    CHECK(g.edge_count() == 1);
    CHECK(g.edges() == std::vector<std::pair<CellId, CellId>>{{0, 1}});
  }
  SUBCASE("single cell has no neighbors") {
    const std::vector<Point> cells{{3, 4}};
    const auto g = build_graph(cells);
    CHECK(g.n == 1);
    CHECK(g.adjacency[0].empty());
  }
  SUBCASE("range boundary is inclusive") {
    const std::vector<Point> cells{{0, 0}, {200, 0}};
    CHECK(build_graph(cells, 200.0).edge_count() == 1);
  }
  SUBCASE("matches brute-force pair scan") {
    const auto t = generate_topology([] {
      TopologyConfig c;
      c.density = 150;
      c.seed = 3;
      return c;
    }());
    const auto g = build_graph(t, 200.0);
    std::size_t pairs = 0;
    for (int i = 0; i < t.size(); ++i)
      for (int j = i + 1; j < t.size(); ++j) pairs += oracle::sq(t.cells[i], t.cells[j]) <= 200.0 * 200.0;
    CHECK(g.edge_count() == pairs);
  }
}

TEST_CASE("is_fully_connected") {
  CHECK(is_fully_connected(from(3, oracle::path_edges(3))));
  CHECK_FALSE(is_fully_connected(from(4, {{0, 1}, {2, 3}})));
  CHECK(is_fully_connected(from(1, {})));
}

TEST_CASE("sssp_hops") {
  SUBCASE("path") {
    const auto t = sssp_hops(from(3, oracle::path_edges(3)), 0);
    CHECK(t.dist == std::vector<int>{0, 1, 2});
    CHECK(t.parent == std::vector<CellId>{-1, 0, 1});
  }
  SUBCASE("triangle") {
    CHECK(sssp_hops(from(3, {{0, 1}, {1, 2}, {0, 2}}), 2).dist == std::vector<int>{1, 1, 0});
  }
  SUBCASE("grid distances are manhattan") {
    const auto t = sssp_hops(from(25, oracle::grid_edges(5, 5)), 0);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) CHECK(t.dist[r * 5 + c] == r + c);
  }
  SUBCASE("parents walk back to the root") {
    std::mt19937_64 rng(8);
    const auto g = from(40, oracle::random_connected_edges(40, 30, rng));
    const auto t = sssp_hops(g, 7);
    for (CellId v = 0; v < 40; ++v) {
      int steps = 0;
      for (CellId u = v; u != 7; u = t.parent[u]) ++steps;
      CHECK(steps == t.dist[v]);
    }
  }
}

TEST_CASE("hop_matrix") {
  SUBCASE("path") {
    const auto d = hop_matrix(from(3, oracle::path_edges(3)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(d(i, j) == std::abs(i - j));
  }
  SUBCASE("star") {
    const auto d = hop_matrix(from(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
    CHECK(d(0, 3) == 1);
    CHECK(d(1, 4) == 2);
    CHECK(d(2, 3) == 2);
  }
  SUBCASE("random graphs agree with floyd-warshall") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 5 + trial;
      const auto edges = oracle::random_connected_edges(n, n / 2, rng);
      const auto ref = oracle::floyd_warshall(n, edges);
      const auto d = hop_matrix(from(n, edges));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) REQUIRE(d(i, j) == ref[i][j]);
      CHECK(d == hop_matrix_serial(from(n, edges)));
    }
  }
  SUBCASE("disconnected graph throws") {
    CHECK_THROWS_AS(hop_matrix(from(4, {{0, 1}, {2, 3}})), NotConnected);
  }
  SUBCASE("adding an edge never lengthens a path") {
    std::mt19937_64 rng(5);
    auto edges = oracle::random_connected_edges(30, 5, rng);
    auto before = hop_matrix(from(30, edges));
    for (int k = 0; k < 20; ++k) {
      std::uniform_int_distribution<int> pick(0, 29);
      const int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      edges.emplace_back(a, b);
      const auto after = hop_matrix(from(30, edges));
      for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) REQUIRE(after(i, j) <= before(i, j));
      before = after;
    }
  }
}

TEST_CASE("assign_to_gateways") {
  SUBCASE("path with a central gateway") {
    const std::vector<CellId> gws{2};
    const auto p = assign_to_gateways(from(5, oracle::path_edges(5)), gws);
    CHECK(p.hops == std::vector<int>{2, 1, 0, 1, 2});
    CHECK(p.total_hops() == 6);
  }
  SUBCASE("path with gateways at both ends") {
    const std::vector<CellId> gws{0, 3};
    const auto p = assign_to_gateways(from(4, oracle::path_edges(4)), gws);
    CHECK(p.assignment == std::vector<CellId>{0, 0, 3, 3});
    CHECK(p.hops == std::vector<int>{0, 1, 1, 0});
  }
  SUBCASE("equidistant cell goes to the lower gateway id") {
    const std::vector<CellId> gws{4, 0};
    const auto p = assign_to_gateways(from(5, oracle::path_edges(5)), gws);
    CHECK(p.gateways == std::vector<CellId>{0, 4});
    CHECK(p.assignment[2] == 0);
  }
  SUBCASE("every cell a gateway") {
    const std::vector<CellId> gws{0, 1, 2, 3};
    const auto p = assign_to_gateways(from(4, oracle::path_edges(4)), gws);
    CHECK(p.total_hops() == 0);
  }
  SUBCASE("agrees with the hop matrix minimum") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 30;
      const auto edges = oracle::random_connected_edges(n, 15, rng);
      const auto g = from(n, edges);
      const auto ref = oracle::floyd_warshall(n, edges);
      std::vector<CellId> gws{static_cast<CellId>(trial % n), static_cast<CellId>((trial * 7 + 3) % n),
                              static_cast<CellId>((trial * 13 + 11) % n)};
      std::sort(gws.begin(), gws.end());
      gws.erase(std::unique(gws.begin(), gws.end()), gws.end());
      const auto p = assign_to_gateways(g, gws);
      CHECK_FALSE(check_placement(p, hop_matrix(g), static_cast<int>(gws.size())).has_value());
      for (int i = 0; i < n; ++i) {
        int best = oracle::kInf;
        for (CellId s : gws) best = std::min(best, ref[i][s]);
        REQUIRE(p.hops[i] == best);
      }
      std::vector<int> scratch(n);
      CHECK(total_hops_to_gateways(g, gws, scratch) == p.total_hops());
    }
  }
  SUBCASE("invalid gateway sets") {
    const auto g = from(4, oracle::path_edges(4));
    CHECK_THROWS(assign_to_gateways(g, std::vector<CellId>{}));
    CHECK_THROWS(assign_to_gateways(g, std::vector<CellId>{1, 1}));
    CHECK_THROWS(assign_to_gateways(g, std::vector<CellId>{9}));
    CHECK_THROWS_AS(assign_to_gateways(from(4, {{0, 1}, {2, 3}}), std::vector<CellId>{0}), NotConnected);
  }
}
