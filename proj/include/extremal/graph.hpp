#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace extremal {

/// Width of one adjacency bit-row. Every graph, digraph and 0/1 matrix in the
/// library has at most this many vertices (columns).
inline constexpr int kMaxVertices = 64;

using Row = std::uint64_t;

inline constexpr Row bit(int i) { return Row{1} << i; }
inline constexpr Row low_bits(int n) { return n >= 64 ? ~Row{0} : (Row{1} << n) - 1; }
inline int popcount(Row r) { return std::popcount(r); }

/// Square or rectangular 0/1 matrix stored as row-major bit-vectors.
class ZeroOneMatrix {
 public:
  ZeroOneMatrix() = default;
  ZeroOneMatrix(int rows, int cols);

  static ZeroOneMatrix zeros(int n) { return ZeroOneMatrix(n, n); }
  static ZeroOneMatrix ones(int n);
  static ZeroOneMatrix identity(int n);
  static ZeroOneMatrix from_rows(int cols, std::vector<Row> rows);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  bool is_square() const { return rows() == cols_; }

  bool get(int i, int j) const { return (rows_[i] >> j) & 1U; }
  void set(int i, int j, bool value = true);
  Row row(int i) const { return rows_[i]; }
  std::span<const Row> row_bits() const { return rows_; }

  int row_sum(int i) const { return popcount(rows_[i]); }
  int col_sum(int j) const;
  std::vector<int> row_sums() const;
  std::vector<int> col_sums() const;

  ZeroOneMatrix transposed() const;
  /// J - A.
  ZeroOneMatrix complement() const;
  /// Block-diagonal A (+) B.
  ZeroOneMatrix direct_sum(const ZeroOneMatrix& other) const;

  friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;

 private:
  int cols_ = 0;
  std::vector<Row> rows_;
};

/// Undirected simple graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);
  static Graph from_rows(std::vector<Row> rows);
  static Graph from_edges(int num_vertices, std::span<const std::pair<int, int>> edges);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph complete_bipartite(int a, int b);

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const;

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1U; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  Row neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  std::vector<int> degrees() const;
  std::span<const Row> rows() const { return adj_; }
  std::vector<std::pair<int, int>> edges() const;

  /// Two-colouring if one exists: side[v] in {0,1}.
  std::optional<std::vector<int>> bipartition() const;
  bool is_bipartite() const { return bipartition().has_value(); }

  /// Graph on the vertex set of *this followed by the vertex set of other.
  Graph disjoint_union(const Graph& other) const;
  /// Relabelled copy: vertex v of *this becomes perm[v].
  Graph relabeled(std::span<const int> perm) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Row> adj_;
};

/// Directed simple graph; loops are allowed, at most one arc per ordered pair.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int num_vertices);
  static Digraph from_rows(std::vector<Row> out_rows);
  /// Digraph whose adjacency matrix is `a` (must be square).
  static Digraph from_matrix(const ZeroOneMatrix& a);

  static Digraph directed_cycle(int n);

  int num_vertices() const { return static_cast<int>(out_.size()); }
  int num_arcs() const;

  bool has_arc(int u, int v) const { return (out_[u] >> v) & 1U; }
  void add_arc(int u, int v);
  void remove_arc(int u, int v);

  Row out_neighbors(int v) const { return out_[v]; }
  Row in_neighbors(int v) const;
  int out_degree(int v) const { return popcount(out_[v]); }
  int in_degree(int v) const { return popcount(in_neighbors(v)); }
  std::vector<int> out_degrees() const;
  std::vector<int> in_degrees() const;

  std::span<const Row> out_rows() const { return out_; }
  std::vector<Row> in_rows() const;
  ZeroOneMatrix adjacency_matrix() const;

  bool is_tournament() const;
  Digraph relabeled(std::span<const int> perm) const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<Row> out_;
};

/// Bipartite graph given by its biadjacency matrix (left vertices index rows).
class BipartiteGraph {
 public:
  explicit BipartiteGraph(ZeroOneMatrix biadjacency) : biadjacency_(std::move(biadjacency)) {}

  int left_size() const { return biadjacency_.rows(); }
  int right_size() const { return biadjacency_.cols(); }
  int left_degree(int i) const { return biadjacency_.row_sum(i); }
  int right_degree(int j) const { return biadjacency_.col_sum(j); }
  const ZeroOneMatrix& biadjacency() const { return biadjacency_; }

  /// Left vertex i becomes vertex i, right vertex j becomes left_size + j.
  Graph to_graph() const;

 private:
  ZeroOneMatrix biadjacency_;
};

/// Sorted (nondecreasing) degree list.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<int> degrees);
  static DegreeSequence of(const Graph& g) { return DegreeSequence(g.degrees()); }

  std::span<const int> degrees() const { return degrees_; }
  int min() const { return degrees_.empty() ? 0 : degrees_.front(); }
  int max() const { return degrees_.empty() ? 0 : degrees_.back(); }
  long long sum() const;
  bool is_almost_regular() const { return max() - min() <= 1; }

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<int> degrees_;
};

/// B(D): biadjacency entry (i, j) is 1 iff arc i->j is in d.
BipartiteGraph bipartite_transform(const Digraph& d);

/// Max degree minus min degree is at most one.
bool is_almost_regular(const Graph& g);

/// A pair (high, low) with deg(high) >= deg(low) + 2 whose low vertex has all
/// its neighbours inside N(high). Such a pair admits the edge move that never
/// decreases the perfect matching count.
struct UnbalancedPair {
  int high;
  int low;
};

/// Unbalanced pair with the largest degree gap, ties broken by the lowest
/// (high, low) indices; nullopt when the graph is balanced.
std::optional<UnbalancedPair> find_unbalanced_pair(const Graph& g);

bool is_balanced(const Graph& g);

}  // namespace extremal
