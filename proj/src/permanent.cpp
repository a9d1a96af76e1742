#include "extremal/permanent.hpp"

#include <array>
#include <string>
#include <thread>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

using i128 = __int128;

void check_permanent_input(const ZeroOneMatrix& a, int size_limit) {
  if (!a.is_square()) throw PreconditionError("permanent needs a square matrix");
  const int limit = std::min(size_limit, kMaxPermanentOrder);
  if (a.rows() > limit) {
    throw SizeLimitError("permanent limited to order " + std::to_string(limit) + ", got " +
                         std::to_string(a.rows()));
  }
}

/// Column masks: cols[j] has bit i set iff a(i, j) = 1.
std::array<Row, kMaxVertices> column_masks(std::span<const Row> rows) {
  std::array<Row, kMaxVertices> cols{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row r = rows[i];
    while (r) {
      cols[std::countr_zero(r)] |= bit(static_cast<int>(i));
      r &= r - 1;
    }
  }
  return cols;
}

Count to_count(i128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Count c = Count(static_cast<std::uint64_t>(mag >> 64)) << 64;
  c += static_cast<std::uint64_t>(mag);
  return negative ? Count(-c) : c;
}

/// Signed Ryser sum over Gray-code steps k in [begin, end), begin >= 1:
///   sum (-1)^{|S_k|} prod_i |row_i & S_k|,  S_k = k ^ (k >> 1).
/// Products are exact in 128 bits (n <= 26); the partial sum is flushed into
/// `total` before it can overflow.
template <class Small>
void ryser_range(std::span<const Row> rows, std::uint64_t begin, std::uint64_t end, Small& partial,
                 Count* total, std::uint64_t flush_every) {
  const int n = static_cast<int>(rows.size());
  const auto cols = column_masks(rows);
  std::array<int, kMaxVertices> sums{};
  Row subset = (begin - 1) ^ ((begin - 1) >> 1);
  int zero_rows = 0;
  for (int i = 0; i < n; ++i) {
    sums[i] = popcount(rows[i] & subset);
    zero_rows += sums[i] == 0;
  }
  [[maybe_unused]] std::uint64_t since_flush = 0;
  for (std::uint64_t k = begin; k < end; ++k) {
    const int j = std::countr_zero(k);
    const Row col = cols[j];
    subset ^= bit(j);
    const bool added = (subset >> j) & 1U;
    Row r = col;
    while (r) {
      const int i = std::countr_zero(r);
      r &= r - 1;
      if (added) {
        zero_rows -= sums[i] == 0;
        ++sums[i];
      } else {
        --sums[i];
        zero_rows += sums[i] == 0;
      }
    }
    if (zero_rows) continue;
    Small product = 1;
    for (int i = 0; i < n; ++i) product *= sums[i];
    if (popcount(subset) & 1) {
      partial -= product;
    } else {
      partial += product;
    }
    if constexpr (std::is_same_v<Small, i128>) {
      if (total && ++since_flush >= flush_every) {
        *total += to_count(partial);
        partial = 0;
        since_flush = 0;
      }
    }
  }
}

/// Signed partial sum for k in [begin, end), exact.
Count ryser_partial(std::span<const Row> rows, std::uint64_t begin, std::uint64_t end) {
  const int n = static_cast<int>(rows.size());
  if (n <= 13) {
    std::int64_t partial = 0;
    ryser_range<std::int64_t>(rows, begin, end, partial, nullptr, 0);
    return Count(partial);
  }
  // |term| <= n^n; keep |partial| below 2^126.
  i128 bound = 1;
  for (int i = 0; i < n; ++i) bound *= n;
  const std::uint64_t flush_every =
      static_cast<std::uint64_t>(std::min<i128>((i128{1} << 126) / bound, i128{1} << 62));
  Count total = 0;
  i128 partial = 0;
  if (flush_every >= end - begin) {
    ryser_range<i128>(rows, begin, end, partial, nullptr, 0);
  } else {
    ryser_range<i128>(rows, begin, end, partial, &total, flush_every);
  }
  return total + to_count(partial);
}

std::uint64_t matchings_rec(const Row* adj, Row unmatched) {
  if (!unmatched) return 1;
  const int v = std::countr_zero(unmatched);
  const Row rest = unmatched & (unmatched - 1);
  Row cand = adj[v] & rest;
  std::uint64_t total = 0;
  while (cand) {
    const int u = std::countr_zero(cand);
    cand &= cand - 1;
    total += matchings_rec(adj, rest & ~bit(u));
  }
  return total;
}

Count matchings_big(const Row* adj, Row unmatched, std::unordered_map<Row, Count>& memo) {
  if (!unmatched) return 1;
  if (auto it = memo.find(unmatched); it != memo.end()) return it->second;
  const int v = std::countr_zero(unmatched);
  const Row rest = unmatched & (unmatched - 1);
  Row cand = adj[v] & rest;
  Count total = 0;
  while (cand) {
    const int u = std::countr_zero(cand);
    cand &= cand - 1;
    total += matchings_big(adj, rest & ~bit(u), memo);
  }
  memo.emplace(unmatched, total);
  return total;
}

}  // namespace

Count permanent(const ZeroOneMatrix& a, int size_limit, int workers) {
  check_permanent_input(a, size_limit);
  const int n = a.rows();
  if (n == 0) return 1;
  const auto rows = a.row_bits();
  const std::uint64_t end = std::uint64_t{1} << n;
  Count sum = 0;
  if (workers <= 1 || n < 16) {
    sum = ryser_partial(rows, 1, end);
  } else {
    const std::uint64_t chunks = static_cast<std::uint64_t>(workers);
    std::vector<Count> parts(chunks);
    std::vector<std::thread> threads;
    for (std::uint64_t w = 0; w < chunks; ++w) {
      const std::uint64_t lo = std::max<std::uint64_t>(1, end * w / chunks);
      const std::uint64_t hi = end * (w + 1) / chunks;
      threads.emplace_back([&, w, lo, hi] { parts[w] = ryser_partial(rows, lo, hi); });
    }
    for (auto& t : threads) t.join();
    for (const auto& p : parts) sum += p;
  }
  return (n % 2) ? Count(-sum) : sum;
}

std::uint64_t permanent_small(std::span<const Row> rows) {
  const int n = static_cast<int>(rows.size());
  if (n > 13) throw SizeLimitError("permanent_small handles order <= 13");
  if (n == 0) return 1;
  std::int64_t partial = 0;
  ryser_range<std::int64_t>(rows, 1, std::uint64_t{1} << n, partial, nullptr, 0);
  return static_cast<std::uint64_t>((n % 2) ? -partial : partial);
}

std::uint64_t count_perfect_matchings_small(std::span<const Row> adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n > 34) throw SizeLimitError("64-bit matching count handles at most 34 vertices");
  if (n % 2) return 0;
  return matchings_rec(adjacency.data(), low_bits(n));
}

std::uint64_t count_perfect_matchings_small(const Graph& g) {
  return count_perfect_matchings_small(g.rows());
}

Count count_perfect_matchings(const Graph& g) {
  const int n = g.num_vertices();
  if (n % 2) return 0;
  if (n <= 34) return Count(count_perfect_matchings_small(g));
  std::unordered_map<Row, Count> memo;
  return matchings_big(g.rows().data(), low_bits(n), memo);
}

Count count_2factors(const Digraph& d, int size_limit) {
  return permanent(d.adjacency_matrix(), size_limit);
}

Count derangements(int p) {
  if (p < 0) throw PreconditionError("derangements of a negative count");
  Count prev2 = 1;  // D_0
  Count prev1 = 0;  // D_1
  if (p == 0) return prev2;
  for (int k = 2; k <= p; ++k) {
    Count next = Count(k - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

Count factorial(int p) {
  if (p < 0) throw PreconditionError("factorial of a negative number");
  Count f = 1;
  for (int k = 2; k <= p; ++k) f *= k;
  return f;
}

bool perfmat_squared_identity_check(const Digraph& d, int size_limit) {
  const int n = d.num_vertices();
  const auto c = d.adjacency_matrix();
  if (2 * n > std::min(size_limit, kMaxPermanentOrder)) {
    throw SizeLimitError("block matrix of order " + std::to_string(2 * n) + " exceeds permanent limit");
  }
  // S = [[0, C], [C^T, 0]]
  ZeroOneMatrix s(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (c.get(i, j)) {
        s.set(i, n + j);
        s.set(n + j, i);
      }
    }
  }
  const Count per_s = permanent(s, size_limit);
  const Count per_c = permanent(c, size_limit);
  return per_s == per_c * per_c;
}

}  // namespace extremal
