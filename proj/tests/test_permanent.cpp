#include <random>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/graph6.hpp"
#include "extremal/permanent.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

ZeroOneMatrix random_matrix(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  ZeroOneMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a.set(i, j, coin(rng));
  }
  return a;
}

std::vector<std::vector<int>> dense(const ZeroOneMatrix& a) {
  std::vector<std::vector<int>> out(a.rows(), std::vector<int>(a.cols()));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out[i][j] = a.get(i, j);
  }
  return out;
}

ZeroOneMatrix permuted(const ZeroOneMatrix& a, const std::vector<int>& rp, const std::vector<int>& cp) {
  ZeroOneMatrix b(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) b.set(rp[i], cp[j], a.get(i, j));
  }
  return b;
}

}  // namespace

TEST_CASE("permanent small cases") {
  CHECK(permanent(ZeroOneMatrix::ones(3)) == 6);
  CHECK(permanent(ZeroOneMatrix::ones(4).complement().direct_sum(ZeroOneMatrix(0, 0))) == 0);
  ZeroOneMatrix derange = ZeroOneMatrix::ones(4);
  for (int i = 0; i < 4; ++i) derange.set(i, i, false);
  CHECK(permanent(derange) == 9);
  CHECK(permanent(ZeroOneMatrix(0, 0)) == 1);
  CHECK(permanent(ZeroOneMatrix::identity(5)) == 1);
  CHECK(permanent(ZeroOneMatrix::zeros(5)) == 0);
}

TEST_CASE("permanent equals the permutation sum") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    const auto a = random_matrix(n, 0.3 + 0.1 * (trial % 5), rng);
    const long long expected = oracle::permanent(dense(a));
    CHECK(permanent(a) == expected);
    CHECK(permanent_small(a.row_bits()) == static_cast<std::uint64_t>(expected));
  }
}

TEST_CASE("permanent is invariant under row/column permutation and transposition") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const auto a = random_matrix(n, 0.5, rng);
    const Count p = permanent(a);
    CHECK(permanent(a.transposed()) == p);
    CHECK(permanent(permuted(a, oracle::random_permutation(n, rng), oracle::random_permutation(n, rng))) == p);
  }
}

TEST_CASE("per(J_n) = n! and per(J_n - I_n) = D_n") {
  for (int n = 0; n <= 12; ++n) {
    auto j = ZeroOneMatrix::ones(n);
    CHECK(permanent(j) == factorial(n));
    for (int i = 0; i < n; ++i) j.set(i, i, false);
    CHECK(permanent(j) == derangements(n));
  }
}

TEST_CASE("wide accumulators") {
  // 128-bit path and the flushing path (n^n * 2^n exceeds 2^127 at n = 23).
  CHECK(permanent(ZeroOneMatrix::ones(16)) == factorial(16));
  CHECK(permanent(ZeroOneMatrix::ones(23)) == factorial(23));
  auto d = ZeroOneMatrix::ones(20);
  for (int i = 0; i < 20; ++i) d.set(i, i, false);
  CHECK(permanent(d) == derangements(20));
  CHECK(permanent(d, kDefaultPermanentLimit, 3) == derangements(20));
}

TEST_CASE("permanent errors") {
  CHECK_THROWS_AS(permanent(ZeroOneMatrix(2, 3)), PreconditionError);
  CHECK_THROWS_AS(permanent(ZeroOneMatrix::ones(25)), SizeLimitError);
  CHECK_THROWS_AS(permanent(ZeroOneMatrix::ones(6), 5), SizeLimitError);
}

TEST_CASE("perfect matchings") {
  CHECK(count_perfect_matchings(Graph::complete(4)) == 3);
  CHECK(count_perfect_matchings(Graph::complete(10)) == 945);
  const auto petersen = parse_graph6("IheA@GUAo");
  CHECK(count_perfect_matchings(petersen) == 6);
  CHECK(oracle::perfect_matchings(petersen) == 6);
  CHECK(count_perfect_matchings(Graph(0)) == 1);
  CHECK(count_perfect_matchings(Graph::complete(5)) == 0);
  CHECK(count_perfect_matchings(Graph::cycle(6)) == 2);
  CHECK(count_perfect_matchings(Graph::complete_bipartite(20, 20)) == factorial(20));
}

TEST_CASE("matching counter agrees with the pairing oracle") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto g = oracle::random_graph(n, 0.2 + 0.15 * (trial % 5), rng);
    const Count c = count_perfect_matchings(g);
    CHECK(c == oracle::perfect_matchings(g));
    bool isolated = false;
    for (int v = 0; v < n; ++v) isolated = isolated || g.degree(v) == 0;
    if (isolated || n % 2) CHECK(c == 0);
  }
}

TEST_CASE("bipartite matchings equal the biadjacency permanent") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const BipartiteGraph b(random_matrix(n, 0.5, rng));
    CHECK(count_perfect_matchings(b.to_graph()) == permanent(b.biadjacency()));
  }
}

TEST_CASE("directed 2-factors") {
  CHECK(count_2factors(Digraph::directed_cycle(7)) == 1);
  Digraph loops(5);
  for (int v = 0; v < 5; ++v) loops.add_arc(v, v);
  CHECK(count_2factors(loops) == 1);
  Digraph complete(3);
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      if (u != v) complete.add_arc(u, v);
    }
  }
  CHECK(count_2factors(complete) == 2);
  CHECK_THROWS_AS(count_2factors(Digraph(30)), SizeLimitError);
}

TEST_CASE("derangements") {
  CHECK(derangements(0) == 1);
  CHECK(derangements(1) == 0);
  CHECK(derangements(4) == 9);
  CHECK(derangements(10) == 1334961);
  auto j = ZeroOneMatrix::ones(10);
  for (int i = 0; i < 10; ++i) j.set(i, i, false);
  CHECK(permanent(j) == 1334961);
  // p! * sum (-1)^i / i! evaluated as sum (-1)^i p!/i!.
  for (int p = 0; p <= 40; ++p) {
    Count alt = 0;
    for (int i = 0; i <= p; ++i) {
      const Count term = factorial(p) / factorial(i);
      alt += (i % 2) ? Count(-term) : term;
    }
    CHECK(derangements(p) == alt);
  }
}

TEST_CASE("per(S) = per(A_D)^2 self-test") {
  CHECK(perfmat_squared_identity_check(Digraph::directed_cycle(3)));
  CHECK(perfmat_squared_identity_check(Digraph(4)));
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    CHECK(perfmat_squared_identity_check(oracle::random_digraph(n, 0.5, true, rng)));
  }
}
