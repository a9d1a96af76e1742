#include <random>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/graph6.hpp"
#include "oracles.hpp"

using namespace extremal;

TEST_CASE("graph6 known encodings") {
  CHECK(emit_graph6(Graph(1)) == "@");
  CHECK(emit_graph6(Graph(0)) == "?");
  CHECK(emit_graph6(Graph::complete(4)) == "C~");
  CHECK(emit_graph6(Graph::cycle(5)) == "Dhc");
  CHECK(parse_graph6("Dhc") == Graph::cycle(5));
  CHECK(parse_graph6(">>graph6<<C~\n") == Graph::complete(4));
  // Petersen graph as printed by nauty.
  const auto petersen = parse_graph6("IheA@GUAo");
  CHECK(petersen.num_vertices() == 10);
  CHECK(petersen.num_edges() == 15);
  for (int v = 0; v < 10; ++v) CHECK(petersen.degree(v) == 3);
}

TEST_CASE("graph6 five-vertex strings round-trip") {
  for (const char* s : {"D?{", "DQc", "D~{", "D??", "DB_"}) {
    CHECK(emit_graph6(parse_graph6(s)) == s);
  }
}

TEST_CASE("graph6 large header") {
  Graph g(64);
  g.add_edge(0, 63);
  const auto text = emit_graph6(g);
  CHECK(text.substr(0, 4) == "~?@?");
  CHECK(parse_graph6(text) == g);
}

TEST_CASE("graph6 and digraph6 round-trip on random inputs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = static_cast<int>(rng() % 11);
    const auto g = oracle::random_graph(n, 0.45, rng);
    CHECK(parse_graph6(emit_graph6(g)) == g);
    const auto d = oracle::random_digraph(n, 0.35, true, rng);
    CHECK(parse_digraph6(emit_digraph6(d)) == d);
  }
}

TEST_CASE("every 5-vertex labelled graph round-trips through text") {
  for (const auto& g : oracle::all_labeled_graphs(5)) {
    const auto text = emit_graph6(g);
    CHECK(emit_graph6(parse_graph6(text)) == text);
  }
}

TEST_CASE("digraph6 details") {
  CHECK(emit_digraph6(Digraph(2)) == "&A?");
  Digraph loops(3);
  for (int v = 0; v < 3; ++v) loops.add_arc(v, v);
  const auto back = parse_digraph6(emit_digraph6(loops));
  for (int v = 0; v < 3; ++v) CHECK(back.has_arc(v, v));
  CHECK(back.num_arcs() == 3);
  CHECK(looks_like_digraph6("&B?"));
  CHECK_FALSE(looks_like_digraph6("B?"));
}

TEST_CASE("graph6 errors carry offsets") {
  auto offset_of = [](auto fn) -> long {
    try {
      fn();
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of([] { parse_graph6(""); }) == 0);
  CHECK(offset_of([] { parse_graph6("D?"); }) == 2);          // truncated body
  CHECK(offset_of([] { parse_graph6("D? {"); }) == 2);        // ' ' below 63
  CHECK(offset_of([] { parse_graph6("C~~"); }) == 2);         // trailing bytes
  CHECK(offset_of([] { parse_graph6("B@"); }) == 1);          // padding bit set
  CHECK(offset_of([] { parse_digraph6("B?"); }) == 0);        // missing '&'
  CHECK(offset_of([] { parse_graph6("&A?"); }) == 0);
  CHECK_THROWS_AS(parse_graph6("~?A?"), SizeLimitError);      // 65 vertices
}
