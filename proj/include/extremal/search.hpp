#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "extremal/graph.hpp"
#include "extremal/permanent.hpp"

namespace extremal {

/// Largest order for unrestricted graph and tournament enumeration.
inline constexpr int kMaxEnumerationOrder = 10;
/// Graphs with at most kMaxSparseEdges edges or non-edges may be enumerated
/// up to this order.
inline constexpr int kMaxSparseEnumerationOrder = 12;
inline constexpr int kMaxSparseEdges = 14;
/// Largest side of K_{n,n} whose orientations are searched exhaustively.
inline constexpr int kMaxBipartiteTournamentSide = 5;

/// Maximum of a count over one class of (di)graphs, with every maximizer.
struct ExtremalRecord {
  int n_vertices = 0;
  long long m_edges = 0;
  Count max_count = 0;
  /// Canonical graph6 / digraph6 strings of the maximizers, sorted. Empty
  /// when max_count is 0.
  std::vector<std::string> witnesses;
  bool all_almost_regular = true;
  bool some_not_almost_regular = false;
  /// At least one witness is almost regular.
  bool any_almost_regular = true;

  /// "" when every witness is almost regular, "**" when none is, "*" otherwise.
  std::string marker() const;
  /// max_count followed by the marker, as shown in table cells.
  std::string cell() const;

  friend bool operator==(const ExtremalRecord&, const ExtremalRecord&) = default;
};

struct SweepConfig {
  int max_vertices = kMaxEnumerationOrder;
  /// Inclusive edge range; every m when empty.
  std::optional<std::pair<long long, long long>> edge_range;
  int worker_count = 1;
  /// Directory holding cached sweep results.
  std::optional<std::filesystem::path> cache_path;
};

/// One representative per isomorphism class of graphs on n vertices with m
/// edges, in a fixed order. n <= 10, or n <= 12 when m or n(n-1)/2 - m is
/// at most kMaxSparseEdges.
void enumerate_graphs(int n, long long m, const std::function<void(const Graph&)>& visit);
std::size_t count_graph_classes(int n, long long m);

/// One representative per isomorphism class of tournaments of order n <= 10.
void enumerate_tournaments(int n, const std::function<void(const Digraph&)>& visit);

/// One representative per isomorphism class of orientations of K_{n,n}
/// (swapping the sides counts as an isomorphism), n <= 5. Vertices 0..n-1
/// form one side.
void enumerate_bipartite_tournaments(int n, const std::function<void(const Digraph&)>& visit);

/// mu(n, m): the maximum number of perfect matchings over graphs with n
/// vertices and m edges.
ExtremalRecord sweep_mu(int n, long long m, const SweepConfig& config = {});
/// sweep_mu for every m in config.edge_range (default 0..n(n-1)/2).
std::vector<ExtremalRecord> sweep_mu_range(int n, const SweepConfig& config = {});
/// The same maximum over an external list of graph6 codes (first token of
/// each line), all of one order and edge count. Witnesses are deduplicated up to isomorphism.
ExtremalRecord sweep_mu_graph6(std::istream& in);

/// tau(n): the maximum permanent of a tournament matrix of order n <= 10.
ExtremalRecord sweep_tau(int n, const SweepConfig& config = {});

/// rho(n, n): the maximum number of 2-factors over orientations of K_{n,n},
/// n <= 5.
ExtremalRecord sweep_rho(int n, const SweepConfig& config = {});

/// Maximizers for 6 + 2k vertices and 6 + k edges, split by shape.
struct SparseFamilyReport {
  int k = 0;
  ExtremalRecord record;
  /// Witnesses that are a 6-vertex, 6-edge maximizer plus k disjoint edges.
  std::vector<std::string> from_six_vertex;
  /// Every other witness.
  std::vector<std::string> other;
  /// False when the record was derived from the 12-vertex case.
  bool exhaustive = true;
};

/// Exhaustive while 6 + 2k <= 12. Beyond that every graph with a perfect
/// matching M has at most 6 edges of M touched by the 3 edges outside M, so
/// at least k - 3 edges of M are isolated components; the maximizers are the
/// 12-vertex maximizers plus k - 3 disjoint edges.
SparseFamilyReport sparse_family_report(int k, const SweepConfig& config = {});

/// The maximum is 2, the maximizers are not all almost regular (but some
/// are), and every 6-vertex, 6-edge maximizer plus k disjoint edges is one.
bool verify_sparse_family(int k, const SweepConfig& config = {});

/// Line-oriented store of sweep results: a version header, then
/// `n,m,max_count,marker,witness...` per record. A file with another version
/// is ignored and rewritten.
class ResultCache {
 public:
  static constexpr int kVersion = 1;

  /// `kind` names the file (mu, tau, rho) inside `directory`.
  ResultCache(std::filesystem::path directory, std::string kind);

  std::optional<ExtremalRecord> lookup(int n, long long m) const;
  void store(const ExtremalRecord& record);

  const std::filesystem::path& file() const { return file_; }

 private:
  void load();
  void rewrite() const;

  std::filesystem::path file_;
  std::map<std::pair<int, long long>, ExtremalRecord> records_;
};

/// Cache directory from the environment (EXTREMAL_CACHE_DIR), if set.
std::optional<std::filesystem::path> cache_dir_from_env();

}  // namespace extremal
