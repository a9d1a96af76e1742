#include "extremal/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "extremal/bounds.hpp"
#include "extremal/canonical.hpp"
#include "extremal/errors.hpp"
#include "extremal/graph6.hpp"

namespace extremal {

namespace {

/// Levels up to this order are built once and kept for the process lifetime.
constexpr int kCachedOrder = 9;

long long max_edges(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

/// Graphs (or digraphs) of one order stored back to back.
struct Level {
  int n = 0;
  std::vector<Row> rows;

  std::size_t size() const { return n == 0 ? 0 : rows.size() / n; }
  std::span<const Row> at(std::size_t i) const { return {rows.data() + i * n, static_cast<std::size_t>(n)}; }
  void push(std::span<const Row> g) { rows.insert(rows.end(), g.begin(), g.end()); }
};

long long edge_count(std::span<const Row> g) {
  long long twice = 0;
  for (Row r : g) twice += popcount(r);
  return twice / 2;
}

/// Runs body(index, worker) for every index, spreading indices over threads
/// on demand. The first exception thrown by any worker is rethrown.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  workers = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Calls f(subset) for every size-`size` subset of `pool`, in a fixed order.
template <class F>
void for_each_subset(Row pool, int size, Row chosen, F& f) {
  if (size == 0) {
    f(chosen);
    return;
  }
  if (size < 0 || popcount(pool) < size) return;
  const Row low = pool & (~pool + 1);
  for_each_subset(pool & ~low, size - 1, chosen | low, f);
  for_each_subset(pool & ~low, size, chosen, f);
}

bool same_orbit_under(const std::vector<std::vector<int>>& automorphisms, int n, int a, int b) {
  if (a == b) return true;
  std::array<int, kMaxVertices> parent{};
  std::iota(parent.begin(), parent.begin() + n, 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& aut : automorphisms) {
    for (int v = 0; v < n; ++v) {
      const int x = find(v);
      const int y = find(aut[v]);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  return find(a) == find(b);
}

/// Canonical augmentation by one vertex. A child C = P + v is accepted when
/// v lies in the automorphism orbit of a distinguished vertex m(C): among
/// the vertices with the best cheap invariant, the one placed first by the
/// canonical labelling. Children of a non-rigid parent are also
/// deduplicated locally. With one parent per class this yields exactly one
/// child per class.
class Extender {
 public:
  explicit Extender(bool tournament) : tournament_(tournament), canon_(kMaxSparseEnumerationOrder) {}

  void begin(std::span<const Row> parent) {
    np_ = static_cast<int>(parent.size());
    std::copy(parent.begin(), parent.end(), child_.begin());
    for (int u = 0; u < np_; ++u) parent_deg_[u] = popcount(parent[u]);
    rigid_ = np_ <= 1 || canon_.run(parent).rigid();
    seen_.clear();
  }

  int parent_order() const { return np_; }
  int parent_min_degree() const { return np_ == 0 ? 0 : *std::min_element(parent_deg_.begin(), parent_deg_.begin() + np_); }
  int parent_max_degree() const { return np_ == 0 ? 0 : *std::max_element(parent_deg_.begin(), parent_deg_.begin() + np_); }

  /// Graphs: children whose new vertex has degree d. Tournaments: children
  /// whose new vertex has score d.
  template <class Emit>
  void extend(int d, Emit&& emit) {
    if (d < 0 || d > np_) return;
    Row forced = 0;
    if (tournament_) {
      if (np_ > 0 && parent_max_degree() > d) return;
      for (int u = 0; u < np_; ++u) {
        if (parent_deg_[u] == d) forced |= bit(u);
      }
    } else {
      if (np_ > 0 && parent_min_degree() < d - 1) return;
      for (int u = 0; u < np_; ++u) {
        if (parent_deg_[u] == d - 1) forced |= bit(u);
      }
    }
    const int rest = d - popcount(forced);
    if (rest < 0) return;
    auto visit = [&](Row s) {
      if (accept(s)) emit(std::span<const Row>(child_.data(), static_cast<std::size_t>(np_ + 1)));
    };
    for_each_subset(low_bits(np_) & ~forced, rest, forced, visit);
  }

  /// Builds the child for new-vertex set s without testing it.
  std::span<const Row> build(Row s) {
    const Row v = bit(np_);
    for (int u = 0; u < np_; ++u) {
      const bool in_s = (s >> u) & 1U;
      child_[u] = (child_[u] & ~v) | ((in_s != tournament_) ? v : 0);
    }
    child_[np_] = s;
    return {child_.data(), static_cast<std::size_t>(np_ + 1)};
  }

 private:
  bool accept(Row s) {
    build(s);
    const int n = np_ + 1;
    const int v = np_;
    const int d = popcount(s);
    std::array<int, kMaxVertices> deg{};
    for (int u = 0; u < n; ++u) deg[u] = popcount(child_[u]);
    Row candidates = 0;
    for (int u = 0; u < n; ++u) {
      if (deg[u] == d) candidates |= bit(u);
    }
    if (candidates != bit(v)) {
      // Graphs: max sum of neighbour degrees; tournaments: max sum of
      // out-neighbour scores.
      long long best = -1;
      std::array<long long, kMaxVertices> inv{};
      for (Row c = candidates; c; c &= c - 1) {
        const int u = std::countr_zero(c);
        long long sum = 0;
        for (Row w = child_[u]; w; w &= w - 1) sum += deg[std::countr_zero(w)];
        inv[u] = sum;
        best = std::max(best, sum);
      }
      if (inv[v] < best) return false;
      Row tied = 0;
      for (Row c = candidates; c; c &= c - 1) {
        const int u = std::countr_zero(c);
        if (inv[u] == best) tied |= bit(u);
      }
      candidates = tied;
    }
    std::optional<CanonicalLabeling> labeling;
    if (candidates != bit(v)) {
      labeling = canon_.run(std::span<const Row>(child_.data(), n));
      std::array<int, kMaxVertices> position{};
      for (int p = 0; p < n; ++p) position[labeling->order[p]] = p;
      int first = -1;
      for (Row c = candidates; c; c &= c - 1) {
        const int u = std::countr_zero(c);
        if (first < 0 || position[u] < position[first]) first = u;
      }
      if (!same_orbit_under(labeling->automorphisms, n, v, first)) return false;
    }
    if (!rigid_) {
      if (!labeling) labeling = canon_.run(std::span<const Row>(child_.data(), n));
      if (!seen_.insert(labeling->code).second) return false;
    }
    return true;
  }

  bool tournament_;
  Canonizer canon_;
  int np_ = 0;
  bool rigid_ = true;
  std::array<Row, kMaxVertices> child_{};
  std::array<int, kMaxVertices> parent_deg_{};
  std::set<std::vector<Row>> seen_;
};

Level next_level(const Level& parents, bool tournament) {
  Level out;
  out.n = parents.n + 1;
  Extender ext(tournament);
  for (std::size_t i = 0; i < parents.size(); ++i) {
    ext.begin(parents.at(i));
    for (int d = 0; d <= parents.n; ++d) ext.extend(d, [&](std::span<const Row> c) { out.push(c); });
  }
  return out;
}

const Level& cached_level(int n, bool tournament) {
  static std::mutex mutex;
  static std::map<std::pair<int, bool>, Level> levels;
  std::lock_guard lock(mutex);
  if (!levels.count({1, tournament})) {
    Level one;
    one.n = 1;
    one.rows = {0};
    levels.emplace(std::make_pair(1, tournament), std::move(one));
  }
  for (int k = 2; k <= n; ++k) {
    if (!levels.count({k, tournament})) {
      levels.emplace(std::make_pair(k, tournament), next_level(levels.at({k - 1, tournament}), tournament));
    }
  }
  return levels.at({n, tournament});
}

void check_graph_order(int n, long long m) {
  if (n < 1) throw PreconditionError("graph enumeration needs n >= 1");
  if (m < 0 || m > max_edges(n)) {
    throw PreconditionError("edge count " + std::to_string(m) + " out of range for " + std::to_string(n) + " vertices");
  }
  if (n > kMaxSparseEnumerationOrder) {
    throw SizeLimitError("graph enumeration is limited to " + std::to_string(kMaxSparseEnumerationOrder) + " vertices");
  }
  if (n > kMaxEnumerationOrder && std::min(m, max_edges(n) - m) > kMaxSparseEdges) {
    throw SizeLimitError("graphs on more than " + std::to_string(kMaxEnumerationOrder) + " vertices are enumerated only with at most " +
                         std::to_string(kMaxSparseEdges) + " edges or non-edges");
  }
}

Level graphs_with_edges(int n, long long m);

/// Parent classes for (n, m): graphs on n-1 vertices with m-d edges, where d
/// is the degree of the added vertex, at most the average degree 2m/n.
std::vector<std::pair<Level, int>> parent_batches(int n, long long m) {
  std::vector<std::pair<Level, int>> batches;
  const long long top = std::min<long long>(n - 1, 2 * m / n);
  for (long long d = 0; d <= top; ++d) {
    const long long e = m - d;
    if (e < 0 || e > max_edges(n - 1)) continue;
    batches.emplace_back(graphs_with_edges(n - 1, e), static_cast<int>(d));
  }
  return batches;
}

Level graphs_with_edges(int n, long long m) {
  Level out;
  out.n = n;
  if (n <= kCachedOrder) {
    const Level& all = cached_level(n, false);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (edge_count(all.at(i)) == m) out.push(all.at(i));
    }
    return out;
  }
  Extender ext(false);
  for (const auto& [parents, d] : parent_batches(n, m)) {
    for (std::size_t i = 0; i < parents.size(); ++i) {
      ext.begin(parents.at(i));
      ext.extend(d, [&](std::span<const Row> c) { out.push(c); });
    }
  }
  return out;
}

/// Calls visit(child, worker) for every class of graphs with n vertices and
/// m edges, spreading parents over workers.
template <class Visit>
void augmented_graphs(int n, long long m, int workers, Visit&& visit) {
  if (n <= kCachedOrder) {
    const Level& all = cached_level(n, false);
    parallel_for(all.size(), workers, [&](std::size_t i, int w) {
      if (edge_count(all.at(i)) == m) visit(all.at(i), w);
    });
    return;
  }
  const auto batches = parent_batches(n, m);
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    for (std::size_t i = 0; i < batches[b].first.size(); ++i) tasks.emplace_back(b, i);
  }
  std::vector<std::unique_ptr<Extender>> extenders;
  for (int w = 0; w < std::max(workers, 1); ++w) extenders.push_back(std::make_unique<Extender>(false));
  parallel_for(tasks.size(), workers, [&](std::size_t t, int w) {
    const auto& [parents, d] = batches[tasks[t].first];
    Extender& ext = *extenders[w];
    ext.begin(parents.at(tasks[t].second));
    ext.extend(d, [&](std::span<const Row> c) { visit(c, w); });
  });
}

template <class Visit>
void parallel_graphs(int n, long long m, int workers, Visit&& visit) {
  if (n <= kMaxEnumerationOrder || 2 * m <= max_edges(n)) {
    augmented_graphs(n, m, workers, visit);
    return;
  }
  // Dense classes are the complements of sparse ones.
  const Row full = low_bits(n);
  augmented_graphs(n, max_edges(n) - m, workers, [&](std::span<const Row> g, int w) {
    std::array<Row, kMaxVertices> c{};
    for (int u = 0; u < n; ++u) c[u] = ~g[u] & full & ~bit(u);
    visit(std::span<const Row>(c.data(), static_cast<std::size_t>(n)), w);
  });
}

/// Running maximum with the raw maximizers, one per worker.
struct MaxAccumulator {
  std::uint64_t best = 0;
  std::vector<std::vector<Row>> ties;

  void offer(std::uint64_t value, std::span<const Row> g) {
    if (value < best || value == 0) return;
    if (value > best) {
      best = value;
      ties.clear();
    }
    ties.emplace_back(g.begin(), g.end());
  }
};

std::uint64_t merge_best(const std::vector<MaxAccumulator>& parts) {
  std::uint64_t best = 0;
  for (const auto& p : parts) best = std::max(best, p.best);
  return best;
}

bool digraph_almost_regular(const Digraph& d) {
  auto degrees = d.out_degrees();
  const auto in = d.in_degrees();
  degrees.insert(degrees.end(), in.begin(), in.end());
  return DegreeSequence(degrees).is_almost_regular();
}

void set_flags(ExtremalRecord& r, int almost_regular) {
  const int total = static_cast<int>(r.witnesses.size());
  r.all_almost_regular = almost_regular == total;
  r.some_not_almost_regular = almost_regular < total;
  r.any_almost_regular = total == 0 || almost_regular > 0;
}

ExtremalRecord graph_record(int n, long long m, std::uint64_t best, const std::vector<MaxAccumulator>& parts) {
  ExtremalRecord r;
  r.n_vertices = n;
  r.m_edges = m;
  r.max_count = best;
  if (best == 0) return r;
  std::set<std::string> forms;
  int almost_regular = 0;
  for (const auto& p : parts) {
    if (p.best != best) continue;
    for (const auto& rows : p.ties) {
      const Graph g = Graph::from_rows(rows);
      if (forms.insert(canonical_form(g)).second && is_almost_regular(g)) ++almost_regular;
    }
  }
  r.witnesses.assign(forms.begin(), forms.end());
  set_flags(r, almost_regular);
  return r;
}

ExtremalRecord digraph_record(int n, long long m, const Count& best, const std::vector<std::vector<Row>>& ties) {
  ExtremalRecord r;
  r.n_vertices = n;
  r.m_edges = m;
  r.max_count = best;
  if (best == 0) return r;
  std::set<std::string> forms;
  int almost_regular = 0;
  for (const auto& rows : ties) {
    const Digraph d = Digraph::from_rows(rows);
    if (forms.insert(canonical_form_digraph(d)).second && digraph_almost_regular(d)) ++almost_regular;
  }
  r.witnesses.assign(forms.begin(), forms.end());
  set_flags(r, almost_regular);
  return r;
}

template <class Compute>
ExtremalRecord cached(const SweepConfig& config, const std::string& kind, int n, long long m, Compute&& compute) {
  if (!config.cache_path) return compute();
  ResultCache cache(*config.cache_path, kind);
  if (auto hit = cache.lookup(n, m)) return *hit;
  ExtremalRecord r = compute();
  cache.store(r);
  return r;
}

/// Row-sorted biadjacency matrices (r_0 <= ... <= r_{n-1}); every
/// orientation of K_{n,n} is one of these after reordering one side.
template <class F>
void for_each_sorted_matrix(int n, Row first_row, F&& f) {
  std::vector<Row> rows(n);
  rows[0] = first_row;
  const Row limit = Row{1} << n;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      f(std::span<const Row>(rows));
      return;
    }
    for (Row r = rows[i - 1]; r < limit; ++r) {
      rows[i] = r;
      self(self, i + 1);
    }
  };
  if (n == 1) {
    f(std::span<const Row>(rows));
    return;
  }
  rec(rec, 1);
}

Digraph bt_digraph(std::span<const Row> b) {
  const int n = static_cast<int>(b.size());
  std::vector<Row> out(2 * n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if ((b[x] >> y) & 1U) {
        out[x] |= bit(n + y);
      } else {
        out[n + y] |= bit(x);
      }
    }
  }
  return Digraph::from_rows(out);
}

std::string join_marker_cell(const Count& value, const std::string& marker) { return value.str() + marker; }

}  // namespace

// ---------------------------------------------------------------------------

std::string ExtremalRecord::marker() const {
  if (all_almost_regular) return "";
  return any_almost_regular ? "*" : "**";
}

std::string ExtremalRecord::cell() const { return join_marker_cell(max_count, marker()); }

void enumerate_graphs(int n, long long m, const std::function<void(const Graph&)>& visit) {
  check_graph_order(n, m);
  parallel_graphs(n, m, 1, [&](std::span<const Row> g, int) { visit(Graph::from_rows({g.begin(), g.end()})); });
}

std::size_t count_graph_classes(int n, long long m) {
  check_graph_order(n, m);
  if (n <= kCachedOrder) return graphs_with_edges(n, m).size();
  std::atomic<std::size_t> count{0};
  parallel_graphs(n, m, 1, [&](std::span<const Row>, int) { ++count; });
  return count;
}

void enumerate_tournaments(int n, const std::function<void(const Digraph&)>& visit) {
  if (n < 1) throw PreconditionError("tournament enumeration needs n >= 1");
  if (n > kMaxEnumerationOrder) {
    throw SizeLimitError("tournament enumeration is limited to order " + std::to_string(kMaxEnumerationOrder));
  }
  if (n <= kCachedOrder) {
    const Level& all = cached_level(n, true);
    for (std::size_t i = 0; i < all.size(); ++i) visit(Digraph::from_rows({all.at(i).begin(), all.at(i).end()}));
    return;
  }
  const Level& parents = cached_level(n - 1, true);
  Extender ext(true);
  for (std::size_t i = 0; i < parents.size(); ++i) {
    ext.begin(parents.at(i));
    for (int s = 0; s < n; ++s) {
      ext.extend(s, [&](std::span<const Row> c) { visit(Digraph::from_rows({c.begin(), c.end()})); });
    }
  }
}

void enumerate_bipartite_tournaments(int n, const std::function<void(const Digraph&)>& visit) {
  if (n < 1) throw PreconditionError("bipartite tournament enumeration needs n >= 1");
  if (n > kMaxBipartiteTournamentSide) {
    throw SizeLimitError("orientations of K_{n,n} are enumerated only for n <= " +
                         std::to_string(kMaxBipartiteTournamentSide));
  }
  std::unordered_set<std::string> seen;
  Canonizer canon(2 * n);
  for (Row first = 0; first < (Row{1} << n); ++first) {
    for_each_sorted_matrix(n, first, [&](std::span<const Row> b) {
      const Digraph d = bt_digraph(b);
      const auto labeling = canon.run(d.out_rows());
      std::string key(reinterpret_cast<const char*>(labeling.code.data()), labeling.code.size() * sizeof(Row));
      if (seen.insert(std::move(key)).second) visit(d);
    });
  }
}

ExtremalRecord sweep_mu(int n, long long m, const SweepConfig& config) {
  check_graph_order(n, m);
  if (n > config.max_vertices) {
    throw SizeLimitError("sweep order " + std::to_string(n) + " exceeds max_vertices " + std::to_string(config.max_vertices));
  }
  return cached(config, "mu", n, m, [&] {
    const int workers = std::max(config.worker_count, 1);
    std::vector<MaxAccumulator> parts(workers);
    if (n % 2 == 0 && 2 * m >= n) {
      parallel_graphs(n, m, workers, [&](std::span<const Row> g, int w) {
        parts[w].offer(count_perfect_matchings_small(g), g);
      });
    }
    return graph_record(n, m, merge_best(parts), parts);
  });
}

std::vector<ExtremalRecord> sweep_mu_range(int n, const SweepConfig& config) {
  const auto [lo, hi] = config.edge_range.value_or(std::make_pair(0LL, max_edges(n)));
  std::vector<ExtremalRecord> out;
  for (long long m = std::max(lo, 0LL); m <= std::min(hi, max_edges(n)); ++m) out.push_back(sweep_mu(n, m, config));
  return out;
}

ExtremalRecord sweep_mu_graph6(std::istream& in) {
  std::string line;
  int n = -1;
  long long m = -1;
  std::vector<MaxAccumulator> parts(1);
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string code;
    if (!(tokens >> code)) continue;
    const Graph g = parse_graph6(code);
    const long long e = g.num_edges();
    if (n < 0) {
      n = g.num_vertices();
      m = e;
    } else if (g.num_vertices() != n || e != m) {
      throw PreconditionError("graph6 list mixes orders or edge counts");
    }
    parts[0].offer(count_perfect_matchings(g).convert_to<std::uint64_t>(), g.rows());
  }
  if (n < 0) throw PreconditionError("empty graph6 list");
  return graph_record(n, m, parts[0].best, parts);
}

ExtremalRecord sweep_tau(int n, const SweepConfig& config) {
  if (n < 1) throw PreconditionError("tau needs n >= 1");
  if (n > kMaxEnumerationOrder) throw SizeLimitError("tau sweeps are limited to order " + std::to_string(kMaxEnumerationOrder));
  return cached(config, "tau", n, max_edges(n), [&] {
    const int workers = std::max(config.worker_count, 1);
    std::vector<MaxAccumulator> parts(workers);
    if (n <= kCachedOrder) {
      const Level& all = cached_level(n, true);
      parallel_for(all.size(), workers, [&](std::size_t i, int w) { parts[w].offer(permanent_small(all.at(i)), all.at(i)); });
    } else {
      // Every tournament is a smaller class plus a vertex of maximum score,
      // so scanning those extensions (without isomorph rejection) covers all
      // classes. Bregman's bound on rows and columns skips most of them.
      std::array<double, kMaxVertices + 1> root_log{};
      for (int r = 1; r <= kMaxVertices; ++r) root_log[r] = log_factorial(r) / r;
      const Level& parents = cached_level(n - 1, true);
      std::atomic<std::uint64_t> global{0};
      std::vector<std::unique_ptr<Extender>> extenders;
      for (int w = 0; w < workers; ++w) extenders.push_back(std::make_unique<Extender>(true));
      parallel_for(parents.size(), workers, [&](std::size_t i, int w) {
        Extender& ext = *extenders[w];
        const auto p = parents.at(i);
        ext.begin(p);
        const int np = n - 1;
        int max_score = 0;
        Row top = 0;
        for (int u = 0; u < np; ++u) max_score = std::max(max_score, popcount(p[u]));
        for (int s = max_score; s <= np; ++s) {
          top = 0;
          for (int u = 0; u < np; ++u) {
            if (popcount(p[u]) == s) top |= bit(u);
          }
          auto visit = [&](Row set) {
            const auto c = ext.build(set);
            double rows_log = 0;
            double cols_log = 0;
            std::array<int, kMaxVertices> in{};
            for (int u = 0; u < n; ++u) {
              const int r = popcount(c[u]);
              if (r == 0) return;
              rows_log += root_log[r];
              for (Row x = c[u]; x; x &= x - 1) ++in[std::countr_zero(x)];
            }
            for (int u = 0; u < n; ++u) {
              if (in[u] == 0) return;
              cols_log += root_log[in[u]];
            }
            const std::uint64_t best = std::max(global.load(std::memory_order_relaxed), parts[w].best);
            if (best > 0 && std::min(rows_log, cols_log) < std::log(static_cast<double>(best)) - 1e-9) return;
            const std::uint64_t value = permanent_small(c);
            parts[w].offer(value, c);
            std::uint64_t seen = global.load(std::memory_order_relaxed);
            while (value > seen && !global.compare_exchange_weak(seen, value, std::memory_order_relaxed)) {
            }
          };
          for_each_subset(low_bits(np) & ~top, s - popcount(top), top, visit);
        }
      });
    }
    const std::uint64_t best = merge_best(parts);
    std::vector<std::vector<Row>> ties;
    for (const auto& part : parts) {
      if (part.best == best) ties.insert(ties.end(), part.ties.begin(), part.ties.end());
    }
    return digraph_record(n, max_edges(n), best, ties);
  });
}

ExtremalRecord sweep_rho(int n, const SweepConfig& config) {
  if (n < 1) throw PreconditionError("rho needs n >= 1");
  if (n > kMaxBipartiteTournamentSide) {
    throw SizeLimitError("rho sweeps are limited to n <= " + std::to_string(kMaxBipartiteTournamentSide));
  }
  return cached(config, "rho", 2 * n, static_cast<long long>(n) * n, [&] {
    const int workers = std::max(config.worker_count, 1);
    std::vector<MaxAccumulator> parts(workers);
    const Row full = low_bits(n);
    parallel_for(std::size_t{1} << n, workers, [&](std::size_t first, int w) {
      for_each_sorted_matrix(n, static_cast<Row>(first), [&](std::span<const Row> b) {
        std::array<Row, kMaxVertices> complement{};
        for (int i = 0; i < n; ++i) complement[i] = ~b[i] & full;
        const std::uint64_t pb = permanent_small(b);
        if (pb == 0) return;
        const std::uint64_t value = pb * permanent_small(std::span<const Row>(complement.data(), n));
        parts[w].offer(value, b);
      });
    });
    const std::uint64_t best = merge_best(parts);
    std::vector<std::vector<Row>> ties;
    for (const auto& part : parts) {
      if (part.best != best) continue;
      for (const auto& b : part.ties) {
        const auto d = bt_digraph(b);
        ties.emplace_back(d.out_rows().begin(), d.out_rows().end());
      }
    }
    return digraph_record(2 * n, static_cast<long long>(n) * n, best, ties);
  });
}

namespace {

/// Removes k components that are single edges; nullopt if there are fewer.
std::optional<Graph> strip_single_edges(const Graph& g, int k) {
  std::vector<bool> drop(g.num_vertices(), false);
  int removed = 0;
  for (int u = 0; u < g.num_vertices() && removed < k; ++u) {
    if (g.degree(u) != 1) continue;
    const int w = std::countr_zero(g.neighbors(u));
    if (w < u || g.degree(w) != 1) continue;
    drop[u] = drop[w] = true;
    ++removed;
  }
  if (removed < k) return std::nullopt;
  std::vector<int> keep;
  for (int u = 0; u < g.num_vertices(); ++u) {
    if (!drop[u]) keep.push_back(u);
  }
  Graph h(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (g.has_edge(keep[i], keep[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return h;
}

Graph perfect_matching_graph(int k) {
  Graph g(2 * k);
  for (int i = 0; i < k; ++i) g.add_edge(2 * i, 2 * i + 1);
  return g;
}

}  // namespace

SparseFamilyReport sparse_family_report(int k, const SweepConfig& config) {
  if (k < 0) throw PreconditionError("sparse family needs k >= 0");
  if (6 + 2 * k > kMaxVertices) throw SizeLimitError("sparse family graph exceeds 64 vertices");
  constexpr int kExhaustiveK = (kMaxSparseEnumerationOrder - 6) / 2;
  SweepConfig sweep_config = config;
  sweep_config.max_vertices = std::max(sweep_config.max_vertices, kMaxSparseEnumerationOrder);
  SparseFamilyReport report;
  report.k = k;
  report.exhaustive = k <= kExhaustiveK;
  if (report.exhaustive) {
    report.record = sweep_mu(6 + 2 * k, 6 + k, sweep_config);
  } else {
    const ExtremalRecord core = sweep_mu(6 + 2 * kExhaustiveK, 6 + kExhaustiveK, sweep_config);
    ExtremalRecord& r = report.record;
    r.n_vertices = 6 + 2 * k;
    r.m_edges = 6 + k;
    r.max_count = core.max_count;
    std::set<std::string> forms;
    int almost_regular = 0;
    for (const auto& w : core.witnesses) {
      const Graph g = parse_graph6(w).disjoint_union(perfect_matching_graph(k - kExhaustiveK));
      if (count_perfect_matchings(g) != core.max_count) throw PreconditionError("sparse family reduction failed");
      if (forms.insert(canonical_form(g, kMaxVertices)).second && is_almost_regular(g)) ++almost_regular;
    }
    r.witnesses.assign(forms.begin(), forms.end());
    set_flags(r, almost_regular);
  }
  const ExtremalRecord base = sweep_mu(6, 6, sweep_config);
  const std::set<std::string> base_forms(base.witnesses.begin(), base.witnesses.end());
  for (const auto& w : report.record.witnesses) {
    const auto h = strip_single_edges(parse_graph6(w), k);
    const bool from_base = h && h->num_edges() == 6 && base_forms.count(canonical_form(*h));
    (from_base ? report.from_six_vertex : report.other).push_back(w);
  }
  return report;
}

bool verify_sparse_family(int k, const SweepConfig& config) {
  const SparseFamilyReport report = sparse_family_report(k, config);
  SweepConfig sweep_config = config;
  sweep_config.max_vertices = std::max(sweep_config.max_vertices, kMaxSparseEnumerationOrder);
  const std::size_t base_count = sweep_mu(6, 6, sweep_config).witnesses.size();
  return report.record.max_count == 2 && report.record.marker() == "*" && report.from_six_vertex.size() == base_count;
}

// ---------------------------------------------------------------------------
// ResultCache

ResultCache::ResultCache(std::filesystem::path directory, std::string kind)
    : file_(std::move(directory) / (kind + ".csv")) {
  load();
}

void ResultCache::load() {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  if (!std::getline(in, line) || line != "#version=" + std::to_string(kVersion)) return;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() < 4) continue;
    ExtremalRecord r;
    try {
      r.n_vertices = std::stoi(fields[0]);
      r.m_edges = std::stoll(fields[1]);
      r.max_count = Count(fields[2]);
    } catch (...) {
      continue;
    }
    const std::string& marker = fields[3];
    r.witnesses.assign(fields.begin() + 4, fields.end());
    r.all_almost_regular = marker.empty();
    r.some_not_almost_regular = !marker.empty();
    r.any_almost_regular = marker != "**";
    records_[{r.n_vertices, r.m_edges}] = std::move(r);
  }
}

std::optional<ExtremalRecord> ResultCache::lookup(int n, long long m) const {
  auto it = records_.find({n, m});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::store(const ExtremalRecord& record) {
  records_[{record.n_vertices, record.m_edges}] = record;
  rewrite();
}

void ResultCache::rewrite() const {
  std::filesystem::create_directories(file_.parent_path());
  const auto tmp = file_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw PreconditionError("cannot write cache file " + tmp);
    out << "#version=" << kVersion << '\n';
    for (const auto& [key, r] : records_) {
      out << r.n_vertices << ',' << r.m_edges << ',' << r.max_count << ',' << r.marker();
      for (const auto& w : r.witnesses) out << ',' << w;
      out << '\n';
    }
  }
  std::filesystem::rename(tmp, file_);
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* dir = std::getenv("EXTREMAL_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir);
}

}  // namespace extremal
