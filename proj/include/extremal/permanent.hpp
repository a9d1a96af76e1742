#pragma once

#include <cstdint>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "extremal/graph.hpp"

namespace extremal {

/// Exact nonnegative integer: permanents, matching counts, derangements.
using Count = boost::multiprecision::cpp_int;

inline constexpr int kDefaultPermanentLimit = 24;
/// Largest order the kernel supports at all: row-sum products stay below
/// 2^127 up to here.
inline constexpr int kMaxPermanentOrder = 26;

/// Exact permanent by Ryser inclusion-exclusion over column subsets visited in
/// Gray-code order. `workers` > 1 splits the subset range across threads; the
/// result does not depend on the split.
Count permanent(const ZeroOneMatrix& a, int size_limit = kDefaultPermanentLimit, int workers = 1);

/// Fast path for hot loops: square matrix given by `rows`, order <= 13 so the
/// whole inclusion-exclusion sum fits in 64 bits.
std::uint64_t permanent_small(std::span<const Row> rows);

/// Number of perfect matchings. Recursion: match the lowest unmatched vertex
/// with each unmatched neighbour in ascending order.
Count count_perfect_matchings(const Graph& g);
/// Same count in 64 bits; requires at most 34 vertices.
std::uint64_t count_perfect_matchings_small(const Graph& g);
std::uint64_t count_perfect_matchings_small(std::span<const Row> adjacency);

/// Directed 2-factors (loops and 2-cycles allowed): per(A_D).
Count count_2factors(const Digraph& d, int size_limit = kDefaultPermanentLimit);

/// D_p, permutations of p points without fixed points.
Count derangements(int p);

Count factorial(int p);

/// per(S) == per(A_D)^2 where S = [[0, A_D], [A_D^T, 0]] is the adjacency
/// matrix of B(D). Both sides are computed independently.
bool perfmat_squared_identity_check(const Digraph& d, int size_limit = kDefaultPermanentLimit);

}  // namespace extremal
