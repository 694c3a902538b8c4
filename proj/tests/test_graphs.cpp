#include "soro/graph.hpp"

#include <queue>
#include <set>
#include <string>

#include "doctest.h"
#include "soro/errors.hpp"
#include "soro/rng.hpp"
#include "support/oracles.hpp"

using namespace soro;

namespace {

int component_count(const Graph& g, int drop_last_edges) {
  int keep = g.edge_count() - drop_last_edges;
  std::vector<int> comp(g.vertex_count(), -1);
  int count = 0;
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (comp[start] != -1) continue;
    comp[start] = count;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [u, e] : g.neighbors(v)) {
        if (e >= keep || comp[u] != -1) continue;
        comp[u] = count;
        q.push(u);
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("load_graph parses the documented text format") {
  Graph g = load_graph("graph 4 3\n1 2\n2 3\n3 4\n");
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.edge(0) == std::pair<int, int>{0, 1});
}

TEST_CASE("load_graph keeps parallel edges distinct") {
  Graph g = load_graph("graph 3 4\n1 2\n1 2\n2 3\n1 3\n");
  CHECK(g.edge_count() == 4);
  CHECK(g.edge_ids(0, 1) == std::vector<int>{0, 1});
  CHECK(g.edge_ids(1, 0) == std::vector<int>{0, 1});
  CHECK(g.edge_ids(0, 2) == std::vector<int>{3});
}

TEST_CASE("load_graph rejects malformed and invalid input") {
  CHECK_THROWS_AS(load_graph("graph 4 3\n1 2\n2 3\n"), ValidationError);
  CHECK_THROWS_AS(load_graph("graph 4 2\n1 2\n2 2\n"), ValidationError);
  CHECK_THROWS_AS(load_graph("graph 4 2\n1 2\n3 4\n"), ValidationError);  // disconnected
  CHECK_THROWS_AS(load_graph("graph 4 2\n1 2\n2 5\n"), ValidationError);
  CHECK_THROWS_AS(load_graph("graph 4 2\n1 2\nx y\n"), ValidationError);
  CHECK_THROWS_AS(load_graph("1 2\n"), ValidationError);
  CHECK_THROWS_AS(load_graph(""), ValidationError);
}

TEST_CASE("graph text round-trips bytewise") {
  std::string text = "graph 3 3\n1 2\n2 3\n1 3\nlabel 1 root\n";
  CHECK(save_graph(load_graph(text)) == text);
  Graph g = gadget_c(5, 2);
  CHECK(save_graph(load_graph(save_graph(g))) == save_graph(g));
}

TEST_CASE("hypercube has 2^dim vertices and dim*2^(dim-1) edges") {
  Graph h1 = hypercube(1);
  CHECK(h1.vertex_count() == 2);
  CHECK(h1.edge_count() == 1);

  Graph h3 = hypercube(3);
  CHECK(h3.vertex_count() == 8);
  CHECK(h3.edge_count() == 12);
  for (int v = 0; v < 8; ++v) CHECK(h3.degree(v) == 3);

  Graph h7 = hypercube(7);
  CHECK(h7.vertex_count() == 128);
  CHECK(h7.edge_count() == 448);

  CHECK_THROWS_AS(hypercube(0), ValidationError);
  CHECK_THROWS_AS(hypercube(15), ValidationError);
}

TEST_CASE("hypercube neighbors differ in exactly one bit") {
  Graph h = hypercube(4);
  for (auto [u, v] : h.edges()) CHECK(__builtin_popcount(u ^ v) == 1);
}

TEST_CASE("hypercube_dimension recognizes generated cubes only") {
  for (int dim : {1, 2, 3, 6}) {
    auto d = hypercube_dimension(hypercube(dim));
    REQUIRE(d.has_value());
    CHECK(*d == dim);
  }
  CHECK(!hypercube_dimension(load_graph("graph 4 3\n1 2\n2 3\n3 4\n")));
  // Right size, wrong wiring.
  CHECK(!hypercube_dimension(load_graph("graph 4 4\n1 2\n2 3\n3 4\n4 1\n")));
  CHECK(!hypercube_dimension(gadget_c(2, 1)));
}

TEST_CASE("gadget_c has 2n+2+k vertices and 2n+2k edges") {
  Graph big = gadget_c(256, 4);
  CHECK(big.vertex_count() == 518);
  CHECK(big.edge_count() == 520);

  Graph tiny = gadget_c(1, 1);
  CHECK(tiny.vertex_count() == 5);
  CHECK(tiny.edge_count() == 4);

  Graph mid = gadget_c(4, 3);
  CHECK(mid.vertex_count() == 13);
  CHECK(mid.edge_count() == 14);

  CHECK_THROWS_AS(gadget_c(0, 1), ValidationError);
  CHECK_THROWS_AS(gadget_c(1, 0), ValidationError);
}

TEST_CASE("gadget_c labels identify both stars and the middle") {
  Graph g = gadget_c(6, 3);
  GadgetRoles roles = gadget_roles(g);
  CHECK(roles.left_leaves.size() == 6);
  CHECK(roles.right_leaves.size() == 6);
  CHECK(roles.middles.size() == 3);
  CHECK(g.label(roles.left_center) == "v1");
  CHECK(g.label(roles.right_center) == "v2");
  // Left leaves hang off v1, right leaves off v2, middles touch both.
  for (int leaf : roles.left_leaves) {
    CHECK(g.degree(leaf) == 1);
    CHECK(g.neighbors(leaf)[0].first == roles.left_center);
  }
  for (int u : roles.middles) {
    CHECK(g.edge_ids(roles.left_center, u).size() == 1);
    CHECK(g.edge_ids(u, roles.right_center).size() == 1);
  }
}

TEST_CASE("gadget_g_k takes exact integer roots") {
  CHECK(gadget_g_k(2, 1) == 1);
  CHECK(gadget_g_k(4, 1) == 2);
  CHECK(gadget_g_k(4, 2) == 1);
  CHECK(gadget_g_k(16, 1) == 4);
  CHECK(gadget_g_k(16, 2) == 2);
  CHECK(gadget_g_k(16, 3) == 1);
  CHECK(gadget_g_k(256, 1) == 16);
  CHECK(gadget_g_k(256, 2) == 4);
  CHECK(gadget_g_k(256, 4) == 2);
  CHECK(gadget_g_k(255, 1) == 15);
  CHECK(gadget_g_k(257, 1) == 16);
}

TEST_CASE("gadget_g joins floor(log2 n) gadget copies by bridges") {
  Graph g2 = gadget_g(2);  // single copy of C(2,1), no bridge
  CHECK(g2.vertex_count() == 7);
  CHECK(g2.edge_count() == 6);

  // C(4,2): 12 vertices, 12 edges; C(4,1): 11 vertices, 10 edges; 1 bridge.
  Graph g4 = gadget_g(4);
  CHECK(g4.vertex_count() == 23);
  CHECK(g4.edge_count() == 23);

  for (int n : {2, 4, 16, 64}) {
    Graph g = gadget_g(n);
    int copies = gadget_g_copies(n);
    int want_v = 0, want_e = copies - 1;
    for (int a = 1; a <= copies; ++a) {
      int k = gadget_g_k(n, a);
      want_v += 2 * n + 2 + k;
      want_e += 2 * n + 2 * k;
    }
    CHECK(g.vertex_count() == want_v);
    CHECK(g.edge_count() == want_e);
    // Bridges are the trailing edges; dropping them leaves one component
    // per copy.
    CHECK(component_count(g, copies - 1) == copies);
    // Each copy's roles are recoverable through its label prefix.
    for (int a = 1; a <= copies; ++a) {
      GadgetRoles roles = gadget_roles(g, a);
      CHECK(static_cast<int>(roles.middles.size()) == gadget_g_k(n, a));
      CHECK(static_cast<int>(roles.left_leaves.size()) == n);
    }
  }
}

TEST_CASE("min_cut matches hand values") {
  // Leaf to leaf through a star center: one edge suffices.
  Graph star = load_graph("graph 4 3\n1 2\n1 3\n1 4\n");
  CHECK(min_cut(star, 1, 3) == 1);

  // Three parallel edges.
  Graph par(2, {{0, 1}, {0, 1}, {0, 1}});
  CHECK(min_cut(par, 0, 1) == 3);

  // Antipodal hypercube vertices: dim edge-disjoint routes.
  CHECK(min_cut(hypercube(3), 0, 7) == 3);

  Graph c43 = gadget_c(4, 3);
  GadgetRoles roles = gadget_roles(c43);
  CHECK(min_cut(c43, roles.left_center, roles.right_center) == 3);
  CHECK(min_cut(c43, roles.left_center, roles.right_center) ==
        soro::testing::brute_force_min_cut(c43, roles.left_center,
                                           roles.right_center));

  CHECK(min_cut(star, 2, 2) == 0);
}

TEST_CASE("min_cut agrees with subset enumeration on small multigraphs") {
  Rng rng(20250825);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(4));  // 3..6 vertices
    int extra = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(13 - n)));
    Graph g = soro::testing::random_connected_multigraph(n, extra, rng);
    REQUIRE(g.edge_count() <= 12);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        int got = min_cut(g, s, t);
        CHECK(got == soro::testing::brute_force_min_cut(g, s, t));
        CHECK(got == min_cut(g, t, s));
      }
  }
}
