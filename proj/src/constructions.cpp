#include "extremal/constructions.hpp"

#include <string>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

ZeroOneMatrix block_diagonal(const std::vector<ZeroOneMatrix>& blocks) {
  ZeroOneMatrix result(0, 0);
  for (const auto& b : blocks) result = result.direct_sum(b);
  return result;
}

ZeroOneMatrix ones_minus_identity(int n) {
  ZeroOneMatrix m = ZeroOneMatrix::ones(n);
  for (int i = 0; i < n; ++i) m.set(i, i, false);
  return m;
}

}  // namespace

std::vector<ExtremalDecomposition> all_extremal_decompositions(int n, long long m) {
  if (n < 1) throw PreconditionError("extremal decomposition needs n >= 1");
  if (m < n || m > static_cast<long long>(n) * n) {
    throw PreconditionError("extremal decomposition needs n <= m <= n^2 (n = " + std::to_string(n) +
                            ", m = " + std::to_string(m) + ")");
  }
  std::vector<ExtremalDecomposition> found;
  for (int n1 = 1; n1 <= n; ++n1) {
    // Subtracting n1 times the first equation from the second leaves l2 (n1+1).
    const long long rest = m - static_cast<long long>(n) * n1;
    if (rest < 0 || rest % (n1 + 1)) continue;
    const long long ell2 = rest / (n1 + 1);
    const long long left = n - ell2 * (n1 + 1);
    if (left < n1 || left % n1) continue;
    found.push_back({static_cast<int>(left / n1), static_cast<int>(ell2), n1});
  }
  return found;
}

std::optional<ExtremalDecomposition> extremal_decomposition(int n, long long m) {
  const auto found = all_extremal_decompositions(n, m);
  if (found.empty()) return std::nullopt;
  if (found.size() > 1) throw PreconditionError("extremal decomposition is not unique");
  return found.front();
}

Graph build_extremal_graph(const ExtremalDecomposition& d) {
  if (d.ell1 < 1 || d.ell2 < 0 || d.n1 < 1) throw PreconditionError("invalid extremal decomposition");
  if (2 * (d.ell1 * d.n1 + d.ell2 * (d.n1 + 1)) > kMaxVertices) throw SizeLimitError("extremal graph exceeds 64 vertices");
  Graph g(0);
  for (int i = 0; i < d.ell1; ++i) g = g.disjoint_union(Graph::complete_bipartite(d.n1, d.n1));
  for (int i = 0; i < d.ell2; ++i) g = g.disjoint_union(Graph::complete_bipartite(d.n1 + 1, d.n1 + 1));
  return g;
}

Digraph bipartite_tournament(const ZeroOneMatrix& b) {
  if (!b.is_square()) throw PreconditionError("bipartite tournament needs a square biadjacency matrix");
  const int n = b.rows();
  if (2 * n > kMaxVertices) throw SizeLimitError("bipartite tournament exceeds 64 vertices");
  Digraph d(2 * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (b.get(x, y)) {
        d.add_arc(x, n + y);
      } else {
        d.add_arc(n + y, x);
      }
    }
  }
  return d;
}

Digraph build_bt0(int n) {
  if (n < 2 || n % 2) throw PreconditionError("BT0 needs an even n >= 2, got " + std::to_string(n));
  return bipartite_tournament(block_diagonal({ZeroOneMatrix::ones(n / 2), ZeroOneMatrix::ones(n / 2)}));
}

Digraph build_bt1(int n) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("BT1 needs an odd n >= 3, got " + std::to_string(n));
  const int p = (n - 1) / 2;
  return bipartite_tournament(block_diagonal({ZeroOneMatrix::ones(p), ZeroOneMatrix::ones(p), ZeroOneMatrix::ones(1)}));
}

Digraph build_bt2(int n) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("BT2 needs an odd n >= 3, got " + std::to_string(n));
  const int p = (n - 1) / 2;
  return bipartite_tournament(block_diagonal({ZeroOneMatrix::ones(p), ones_minus_identity(p + 1)}));
}

Digraph build_near_regular_tournament(int n) {
  if (n < 3) throw PreconditionError("near-regular tournament needs n >= 3");
  if (n > kMaxVertices) throw SizeLimitError("tournament exceeds 64 vertices");
  Digraph t(n);
  const int half = n / 2;
  for (int i = 0; i < n; ++i) {
    const int wins = (n % 2 || i < half) ? half : half - 1;
    for (int step = 1; step <= wins; ++step) t.add_arc(i, (i + step) % n);
  }
  return t;
}

Graph balance(const Graph& g) {
  Graph current = g;
  while (const auto pair = find_unbalanced_pair(current)) {
    const Row movable = current.neighbors(pair->high) & ~current.neighbors(pair->low) & ~bit(pair->low);
    const int k = std::countr_zero(movable);
    current.remove_edge(pair->high, k);
    current.add_edge(pair->low, k);
  }
  return current;
}

}  // namespace extremal
