#include <random>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/graph.hpp"
#include "oracles.hpp"

using namespace extremal;

TEST_CASE("bipartite transform of the directed 3-cycle is the cyclic permutation matrix") {
  const auto b = bipartite_transform(Digraph::directed_cycle(3));
  ZeroOneMatrix expected(3, 3);
  expected.set(0, 1);
  expected.set(1, 2);
  expected.set(2, 0);
  CHECK(b.biadjacency() == expected);
}

TEST_CASE("bipartite transform of an arcless digraph is all zero") {
  const auto b = bipartite_transform(Digraph(4));
  CHECK(b.biadjacency() == ZeroOneMatrix::zeros(4));
}

TEST_CASE("bipartite transform of the transitive triple") {
  Digraph d(3);
  d.add_arc(0, 1);
  d.add_arc(1, 2);
  d.add_arc(0, 2);
  const auto b = bipartite_transform(d).biadjacency();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(b.get(i, j) == (i < j));
  }
}

TEST_CASE("bipartite transform preserves out- and in-degree sequences") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto d = oracle::random_digraph(n, 0.4, true, rng);
    const auto b = bipartite_transform(d);
    REQUIRE(b.left_size() == n);
    for (int v = 0; v < n; ++v) {
      CHECK(b.left_degree(v) == d.out_degree(v));
      CHECK(b.right_degree(v) == d.in_degree(v));
    }
    CHECK(d.out_degrees().size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("degree and arc bookkeeping") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_graph(9, 0.5, rng);
    CHECK(DegreeSequence::of(g).sum() == 2 * g.num_edges());
    const auto d = oracle::random_digraph(9, 0.3, true, rng);
    int out_total = 0;
    int in_total = 0;
    for (int v = 0; v < 9; ++v) {
      out_total += d.out_degree(v);
      in_total += d.in_degree(v);
    }
    CHECK(out_total == d.num_arcs());
    CHECK(in_total == d.num_arcs());
  }
}

TEST_CASE("almost regular") {
  CHECK(is_almost_regular(Graph::complete_bipartite(3, 3)));
  CHECK_FALSE(is_almost_regular(Graph::complete_bipartite(1, 3)));
  auto c6 = Graph::cycle(6);
  c6.add_edge(0, 3);
  CHECK(DegreeSequence::of(c6) == DegreeSequence({2, 2, 2, 2, 3, 3}));
  CHECK(is_almost_regular(c6));
}

TEST_CASE("balanced graphs") {
  SUBCASE("pendant vertex on K4 is unbalanced") {
    Graph g(5);
    for (int u = 0; u < 4; ++u) {
      for (int v = u + 1; v < 4; ++v) g.add_edge(u, v);
    }
    g.add_edge(0, 4);
    CHECK_FALSE(is_balanced(g));
    const auto pair = find_unbalanced_pair(g);
    REQUIRE(pair);
    CHECK(g.degree(pair->high) >= g.degree(pair->low) + 2);
  }
  SUBCASE("K2 disjoint from K4 is balanced") {
    CHECK(is_balanced(Graph::complete(2).disjoint_union(Graph::complete(4))));
  }
  SUBCASE("star: centre adjacent to the leaf is not a witness") {
    // Leaves have N = {centre}, which is not inside N(centre).
    CHECK(is_balanced(Graph::complete_bipartite(1, 3)));
  }
  SUBCASE("isolated vertex next to a high degree vertex") {
    Graph g = Graph::cycle(4).disjoint_union(Graph(1));
    CHECK_FALSE(is_balanced(g));
  }
}

TEST_CASE("almost regular implies balanced") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 20000 && checked < 500; ++trial) {
    const auto g = oracle::random_graph(2 + static_cast<int>(rng() % 9), 0.5, rng);
    if (!is_almost_regular(g)) continue;
    ++checked;
    CHECK(is_balanced(g));
  }
  CHECK(checked >= 100);
}

TEST_CASE("graph construction errors") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), PreconditionError);
  CHECK_THROWS_AS(g.add_edge(0, 3), PreconditionError);
  CHECK_THROWS_AS(Graph(65), SizeLimitError);
  CHECK_THROWS_AS(Graph::from_rows({0b10, 0b00}), PreconditionError);
}

TEST_CASE("bipartition") {
  CHECK(Graph::cycle(6).is_bipartite());
  CHECK_FALSE(Graph::cycle(5).is_bipartite());
  CHECK(Graph(0).is_bipartite());
}

TEST_CASE("matrix helpers") {
  const auto j = ZeroOneMatrix::ones(3);
  CHECK(j.complement() == ZeroOneMatrix::zeros(3));
  const auto s = ZeroOneMatrix::ones(2).direct_sum(ZeroOneMatrix::identity(1));
  CHECK(s.rows() == 3);
  CHECK(s.row_sums() == std::vector<int>{2, 2, 1});
  CHECK(s.col_sums() == std::vector<int>{2, 2, 1});
  CHECK(s.transposed() == s);
}
