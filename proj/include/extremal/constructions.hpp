#pragma once

#include <optional>
#include <vector>

#include "extremal/graph.hpp"

namespace extremal {

/// l1 copies of K_{n1,n1} and l2 copies of K_{n1+1,n1+1}.
struct ExtremalDecomposition {
  int ell1;
  int ell2;
  int n1;

  friend bool operator==(const ExtremalDecomposition&, const ExtremalDecomposition&) = default;
};

/// Every (l1 >= 1, l2 >= 0, n1 >= 1) with l1 n1 + l2 (n1+1) = n and
/// l1 n1^2 + l2 (n1+1)^2 = m. Requires 1 <= n <= m <= n^2.
std::vector<ExtremalDecomposition> all_extremal_decompositions(int n, long long m);

/// The decomposition for (n, m) if one exists. Throws if the system has
/// more than one solution (never observed).
std::optional<ExtremalDecomposition> extremal_decomposition(int n, long long m);

/// Disjoint union of complete bipartite graphs, the smaller blocks first.
Graph build_extremal_graph(const ExtremalDecomposition& d);

/// Orientation of K_{n,n} on 2n vertices (X = 0..n-1, Y = n..2n-1): x -> y
/// when b(x, y) = 1, y -> x otherwise.
Digraph bipartite_tournament(const ZeroOneMatrix& b);

/// B = J_{n/2} (+) J_{n/2}; n even.
Digraph build_bt0(int n);
/// B = J_p (+) J_p (+) J_1, p = (n-1)/2; n odd.
Digraph build_bt1(int n);
/// B = J_p (+) (J_{p+1} - I_{p+1}); n odd.
Digraph build_bt2(int n);

/// Odd n: rotational regular tournament. Even n: vertex i < n/2 beats the
/// next n/2 vertices cyclically, the others beat the next n/2 - 1.
Digraph build_near_regular_tournament(int n);

/// Applies the degree-balancing edge move until no unbalanced pair remains.
Graph balance(const Graph& g);

}  // namespace extremal
