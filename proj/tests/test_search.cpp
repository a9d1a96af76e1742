#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "extremal/bounds.hpp"
#include "extremal/canonical.hpp"
#include "extremal/constructions.hpp"
#include "extremal/errors.hpp"
#include "extremal/graph6.hpp"
#include "extremal/search.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

std::size_t total_graph_classes(int n) {
  std::size_t total = 0;
  for (long long m = 0; m <= n * (n - 1) / 2; ++m) total += count_graph_classes(n, m);
  return total;
}

std::size_t tournament_classes(int n) {
  std::size_t count = 0;
  enumerate_tournaments(n, [&](const Digraph&) { ++count; });
  return count;
}

/// Classes of labelled graphs with m edges by brute-force minimum codes.
std::size_t brute_graph_classes(int n, int m) {
  std::set<std::vector<Row>> forms;
  for (const auto& g : oracle::all_labeled_graphs(n)) {
    if (g.num_edges() == m) forms.insert(oracle::min_code({g.rows().begin(), g.rows().end()}));
  }
  return forms.size();
}

std::size_t brute_tournament_classes(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  std::set<std::vector<Row>> forms;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Row> rows(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      if ((mask >> k) & 1U) {
        rows[i] |= bit(j);
      } else {
        rows[j] |= bit(i);
      }
    }
    forms.insert(oracle::min_code(rows));
  }
  return forms.size();
}

std::size_t brute_bipartite_tournament_classes(int n) {
  std::set<std::vector<Row>> forms;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
    std::vector<Row> rows(2 * n, 0);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if ((mask >> (x * n + y)) & 1U) {
          rows[x] |= bit(n + y);
        } else {
          rows[n + y] |= bit(x);
        }
      }
    }
    forms.insert(oracle::min_code(rows));
  }
  return forms.size();
}

}  // namespace

TEST_CASE("graph class counts") {
  const std::vector<std::size_t> expected{1, 2, 4, 11, 34, 156, 1044, 12346};
  for (int n = 1; n <= 8; ++n) CHECK(total_graph_classes(n) == expected[n - 1]);
  CHECK(count_graph_classes(4, 3) == 3);
}

TEST_CASE("graph classes per edge count match brute force") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 0; m <= n * (n - 1) / 2; ++m) CHECK(count_graph_classes(n, m) == brute_graph_classes(n, m));
  }
}

TEST_CASE("enumerated graphs are pairwise non-isomorphic") {
  for (int n : {7, 10}) {
    for (long long m : {5LL, 9LL}) {
      std::set<std::string> forms;
      std::size_t count = 0;
      enumerate_graphs(n, m, [&](const Graph& g) {
        CHECK(g.num_edges() == m);
        forms.insert(canonical_form(g));
        ++count;
      });
      CHECK(forms.size() == count);
    }
  }
}

TEST_CASE("10-vertex classes for sparse edge counts") {
  // Graphs with 10 vertices and m edges, m = 0..5.
  const std::vector<std::size_t> expected{1, 1, 2, 5, 11, 26};
  for (int m = 0; m <= 5; ++m) CHECK(count_graph_classes(10, m) == expected[m]);
}

TEST_CASE("sparse enumeration beyond ten vertices") {
  // With m <= n/2 nothing depends on the order beyond isolated vertices.
  for (int n : {11, 12}) {
    for (int m = 0; m <= 4; ++m) CHECK(count_graph_classes(n, m) == count_graph_classes(8, m));
  }
  CHECK(count_graph_classes(12, 60) == count_graph_classes(12, 6));
  CHECK_THROWS_AS(count_graph_classes(12, 15), SizeLimitError);
  CHECK_THROWS_AS(count_graph_classes(12, 51), SizeLimitError);
  CHECK_THROWS_AS(count_graph_classes(13, 1), SizeLimitError);
  CHECK_THROWS_AS(count_graph_classes(4, 7), PreconditionError);
}

TEST_CASE("tournament class counts") {
  const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56, 456, 6880};
  for (int n = 1; n <= 8; ++n) CHECK(tournament_classes(n) == expected[n - 1]);
  for (int n = 1; n <= 5; ++n) CHECK(tournament_classes(n) == brute_tournament_classes(n));
}

TEST_CASE("bipartite tournament classes match brute force") {
  for (int n = 1; n <= 3; ++n) {
    std::size_t count = 0;
    enumerate_bipartite_tournaments(n, [&](const Digraph& d) {
      CHECK(d.num_arcs() == n * n);
      ++count;
    });
    CHECK(count == brute_bipartite_tournament_classes(n));
  }
  CHECK_THROWS_AS(enumerate_bipartite_tournaments(6, [](const Digraph&) {}), SizeLimitError);
}

TEST_CASE("bipartite tournaments of K_{3,3} obey the odd bound") {
  Count best = 0;
  enumerate_bipartite_tournaments(3, [&](const Digraph& d) {
    const Count c = count_2factors(d);
    CHECK(c <= 2);
    best = std::max(best, c);
  });
  CHECK(best == 2);
}

TEST_CASE("mu sweep examples") {
  CHECK(sweep_mu(6, 9).max_count == 6);
  const auto r87 = sweep_mu(8, 7);
  CHECK(r87.cell() == "2*");
  const auto r66 = sweep_mu(6, 6);
  CHECK(r66.cell() == "2*");
  CHECK(r66.witnesses.size() == 3);
  for (const auto& w : r66.witnesses) CHECK(count_perfect_matchings(parse_graph6(w)) == 2);
  CHECK(sweep_mu(7, 10).max_count == 0);
  CHECK(sweep_mu(8, 3).max_count == 0);
  CHECK(sweep_mu(8, 3).witnesses.empty());
}

TEST_CASE("mu sweep agrees with brute force over labelled graphs") {
  for (int n : {4, 6}) {
    std::vector<long long> best(n * (n - 1) / 2 + 1, 0);
    for (const auto& g : oracle::all_labeled_graphs(n)) {
      best[g.num_edges()] = std::max(best[g.num_edges()], oracle::perfect_matchings(g));
    }
    for (int m = 0; m <= n * (n - 1) / 2; ++m) CHECK(sweep_mu(n, m).max_count == best[m]);
  }
}

TEST_CASE("mu sweep invariants") {
  for (int n : {4, 6, 8}) {
    for (int m = n / 2; m <= n * (n - 1) / 2; ++m) {
      const auto r = sweep_mu(n, m);
      REQUIRE(r.max_count > 0);
      // bounded by omega, equality exactly for the decomposable cells
      const auto w = omega_exact(n, m);
      const bool decomposable = m <= (n / 2) * (n / 2) && extremal_decomposition(n / 2, m).has_value();
      CHECK((w.to_count() == std::optional<Count>(r.max_count)) == decomposable);
      CHECK(compare_with_tolerance(r.max_count, w.to_log_value()) <= 0);
      bool balanced_witness = false;
      std::set<std::string> forms;
      for (const auto& s : r.witnesses) {
        const auto g = parse_graph6(s);
        CHECK(g.num_edges() == m);
        CHECK(count_perfect_matchings(g) == r.max_count);
        CHECK(canonical_form(g) == s);
        balanced_witness = balanced_witness || is_balanced(g);
        forms.insert(s);
      }
      CHECK(forms.size() == r.witnesses.size());
      CHECK(balanced_witness);
    }
  }
}

TEST_CASE("sweeps are independent of the worker count") {
  SweepConfig one;
  SweepConfig three;
  three.worker_count = 3;
  for (long long m : {7LL, 12LL, 19LL}) CHECK(sweep_mu(8, m, one) == sweep_mu(8, m, three));
  CHECK(sweep_mu(10, 13, one) == sweep_mu(10, 13, three));
  CHECK(sweep_tau(7, one) == sweep_tau(7, three));
  CHECK(sweep_rho(4, one) == sweep_rho(4, three));
}

TEST_CASE("tau sweep") {
  const std::vector<long long> tau{1, 1, 3, 9, 31, 102};
  for (int n = 3; n <= 8; ++n) {
    const auto r = sweep_tau(n);
    CHECK(r.max_count == tau[n - 3]);
    for (const auto& w : r.witnesses) {
      const auto t = parse_digraph6(w);
      CHECK(t.is_tournament());
      CHECK(count_2factors(t) == r.max_count);
      // B(T) is a graph on 2n vertices with n(n-1)/2 edges, so tau(n) <= mu(2n, n(n-1)/2).
      const auto b = bipartite_transform(t).to_graph();
      CHECK(b.num_edges() == n * (n - 1) / 2);
      CHECK(count_perfect_matchings(b) == r.max_count);
    }
    if (2 * n <= 10) CHECK(r.max_count <= sweep_mu(2 * n, n * (n - 1) / 2).max_count);
  }
}

TEST_CASE("rho sweep") {
  const auto r2 = sweep_rho(2);
  CHECK(r2.max_count == 1);
  REQUIRE(r2.witnesses.size() == 1);
  CHECK(r2.witnesses[0] == canonical_form_digraph(build_bt0(2)));
  const auto r3 = sweep_rho(3);
  CHECK(r3.max_count == 2);
  CHECK(r3.max_count == rho_lower_exact(3));
  const std::set<std::string> bt{canonical_form_digraph(build_bt1(3)), canonical_form_digraph(build_bt2(3))};
  CHECK(std::set<std::string>(r3.witnesses.begin(), r3.witnesses.end()) == bt);
  const auto r4 = sweep_rho(4);
  CHECK(r4.max_count == 16);
  REQUIRE(r4.witnesses.size() == 1);
  CHECK(r4.witnesses[0] == canonical_form_digraph(build_bt0(4)));
  CHECK_THROWS_AS(sweep_rho(6), SizeLimitError);
}

TEST_CASE("sparse family") {
  const auto base = sparse_family_report(0);
  CHECK(base.record.cell() == "2*");
  CHECK(base.record.witnesses.size() == 3);
  CHECK(base.other.empty());
  for (int k = 0; k <= 5; ++k) CHECK(verify_sparse_family(k));
  const auto one = sparse_family_report(1);
  CHECK(one.record.cell() == "2*");
  CHECK(one.from_six_vertex.size() == 3);
  // A path on 4 vertices next to a 4-cycle also has 7 edges and 2 perfect matchings.
  Graph p4c4 = Graph::path(4).disjoint_union(Graph::cycle(4));
  REQUIRE(count_perfect_matchings(p4c4) == 2);
  CHECK(one.other == std::vector<std::string>{canonical_form(p4c4)});
  CHECK(sweep_mu(10, 8).cell() == "2*");
  const auto far = sparse_family_report(5);
  CHECK_FALSE(far.exhaustive);
  CHECK(far.record.max_count == 2);
  CHECK(far.record.witnesses.size() == sparse_family_report(3).record.witnesses.size());
}

TEST_CASE("sweeping an external graph6 list") {
  std::stringstream list;
  enumerate_graphs(6, 6, [&](const Graph& g) { list << emit_graph6(g) << '\n'; });
  CHECK(sweep_mu_graph6(list) == sweep_mu(6, 6));
  std::stringstream mixed("C~\nDhc\n");
  CHECK_THROWS_AS(sweep_mu_graph6(mixed), PreconditionError);
  std::stringstream bad("C~\n!!\n");
  CHECK_THROWS_AS(sweep_mu_graph6(bad), ParseError);
}

TEST_CASE("result cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "extremal_cache_test";
  std::filesystem::remove_all(dir);
  SweepConfig config;
  config.cache_path = dir;
  const auto fresh = sweep_mu(8, 9, config);
  CHECK(fresh.cell() == "4*");
  CHECK(std::filesystem::exists(dir / "mu.csv"));
  const auto again = sweep_mu(8, 9, config);
  CHECK(again == fresh);
  ResultCache cache(dir, "mu");
  CHECK(cache.lookup(8, 9) == fresh);
  CHECK_FALSE(cache.lookup(8, 10).has_value());
  {
    std::ofstream out(dir / "mu.csv");
    out << "#version=0\n8,9,999,,x\n";
  }
  CHECK_FALSE(ResultCache(dir, "mu").lookup(8, 9).has_value());
  CHECK(sweep_mu(8, 9, config) == fresh);
  std::filesystem::remove_all(dir);
}

TEST_CASE("degree bound lies below omega over every graph class") {
  const auto check_cell = [](int n, long long m) {
    const auto w = omega_exact(n, m);
    const auto w_log = w.to_log_value();
    enumerate_graphs(n, m, [&](const Graph& g) {
      const auto af = alon_friedland_exact(g);
      const auto degrees = g.degrees();
      const bool no_isolated = std::ranges::none_of(degrees, [](int d) { return d == 0; });
      REQUIRE(compare_with_tolerance(count_perfect_matchings(g), af.to_log_value()) <= 0);
      REQUIRE(compare_with_tolerance(count_perfect_matchings(g), w_log) <= 0);
      if (af.is_zero()) return;
      CHECK(af.to_log_value().log() <= w_log.log() + 1e-12);
      CHECK((af == w) == (is_almost_regular(g) && no_isolated));
    });
  };
  for (int n = 2; n <= 8; n += 2) {
    for (long long m = n / 2; m <= n * (n - 1) / 2; ++m) check_cell(n, m);
  }
  for (long long m : {5LL, 13LL, 15LL, 25LL}) check_cell(10, m);
}
