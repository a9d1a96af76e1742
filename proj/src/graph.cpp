#include "extremal/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

void check_order(int n, const char* what) {
  if (n < 0) throw PreconditionError(std::string(what) + ": negative size");
  if (n > kMaxVertices) {
    throw SizeLimitError(std::string(what) + ": " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxVertices) + " vertices");
  }
}

void check_vertex(int v, int n) {
  if (v < 0 || v >= n) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
}

template <class Fn>
void for_each_bit(Row r, Fn&& fn) {
  while (r) {
    fn(std::countr_zero(r));
    r &= r - 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ZeroOneMatrix

ZeroOneMatrix::ZeroOneMatrix(int rows, int cols) : cols_(cols) {
  check_order(rows, "matrix rows");
  check_order(cols, "matrix cols");
  rows_.assign(rows, 0);
}

ZeroOneMatrix ZeroOneMatrix::ones(int n) {
  ZeroOneMatrix a(n, n);
  std::fill(a.rows_.begin(), a.rows_.end(), low_bits(n));
  return a;
}

ZeroOneMatrix ZeroOneMatrix::identity(int n) {
  ZeroOneMatrix a(n, n);
  for (int i = 0; i < n; ++i) a.rows_[i] = bit(i);
  return a;
}

ZeroOneMatrix ZeroOneMatrix::from_rows(int cols, std::vector<Row> rows) {
  ZeroOneMatrix a(static_cast<int>(rows.size()), cols);
  for (Row r : rows) {
    if (r & ~low_bits(cols)) throw PreconditionError("matrix row has bits beyond column count");
  }
  a.rows_ = std::move(rows);
  return a;
}

void ZeroOneMatrix::set(int i, int j, bool value) {
  if (value) {
    rows_[i] |= bit(j);
  } else {
    rows_[i] &= ~bit(j);
  }
}

int ZeroOneMatrix::col_sum(int j) const {
  int s = 0;
  for (Row r : rows_) s += static_cast<int>((r >> j) & 1U);
  return s;
}

std::vector<int> ZeroOneMatrix::row_sums() const {
  std::vector<int> out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = popcount(rows_[i]);
  return out;
}

std::vector<int> ZeroOneMatrix::col_sums() const {
  std::vector<int> out(cols_, 0);
  for (Row r : rows_) for_each_bit(r, [&](int j) { ++out[j]; });
  return out;
}

ZeroOneMatrix ZeroOneMatrix::transposed() const {
  ZeroOneMatrix t(cols_, rows());
  for (int i = 0; i < rows(); ++i) {
    for_each_bit(rows_[i], [&](int j) { t.rows_[j] |= bit(i); });
  }
  return t;
}

ZeroOneMatrix ZeroOneMatrix::complement() const {
  ZeroOneMatrix c(rows(), cols_);
  for (int i = 0; i < rows(); ++i) c.rows_[i] = ~rows_[i] & low_bits(cols_);
  return c;
}

ZeroOneMatrix ZeroOneMatrix::direct_sum(const ZeroOneMatrix& other) const {
  ZeroOneMatrix s(rows() + other.rows(), cols_ + other.cols_);
  for (int i = 0; i < rows(); ++i) s.rows_[i] = rows_[i];
  for (int i = 0; i < other.rows(); ++i) s.rows_[rows() + i] = other.rows_[i] << cols_;
  return s;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int num_vertices) {
  check_order(num_vertices, "graph");
  adj_.assign(num_vertices, 0);
}

Graph Graph::from_rows(std::vector<Row> rows) {
  Graph g(static_cast<int>(rows.size()));
  const int n = g.num_vertices();
  for (int v = 0; v < n; ++v) {
    if (rows[v] & ~low_bits(n)) throw PreconditionError("adjacency row has bits beyond vertex count");
    if ((rows[v] >> v) & 1U) throw PreconditionError("graph adjacency has a self-loop");
    for_each_bit(rows[v], [&](int u) {
      if (!((rows[u] >> v) & 1U)) throw PreconditionError("graph adjacency is not symmetric");
    });
  }
  g.adj_ = std::move(rows);
  return g;
}

Graph Graph::from_edges(int num_vertices, std::span<const std::pair<int, int>> edges) {
  Graph g(num_vertices);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.adj_[v] = low_bits(n) & ~bit(v);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph Graph::complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

int Graph::num_edges() const {
  int twice = 0;
  for (Row r : adj_) twice += popcount(r);
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  check_vertex(u, num_vertices());
  check_vertex(v, num_vertices());
  if (u == v) throw PreconditionError("simple graph cannot have a self-loop");
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u, num_vertices());
  check_vertex(v, num_vertices());
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> out(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) out[v] = popcount(adj_[v]);
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_vertices(); ++u) {
    for_each_bit(adj_[u] & ~low_bits(u + 1), [&](int v) { out.emplace_back(u, v); });
  }
  return out;
}

std::optional<std::vector<int>> Graph::bipartition() const {
  const int n = num_vertices();
  std::vector<int> side(n, -1);
  for (int s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      bool ok = true;
      for_each_bit(adj_[u], [&](int v) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          q.push(v);
        } else if (side[v] == side[u]) {
          ok = false;
        }
      });
      if (!ok) return std::nullopt;
    }
  }
  return side;
}

Graph Graph::disjoint_union(const Graph& other) const {
  Graph g(num_vertices() + other.num_vertices());
  const int shift = num_vertices();
  for (int v = 0; v < num_vertices(); ++v) g.adj_[v] = adj_[v];
  for (int v = 0; v < other.num_vertices(); ++v) g.adj_[shift + v] = other.adj_[v] << shift;
  return g;
}

Graph Graph::relabeled(std::span<const int> perm) const {
  Graph g(num_vertices());
  for (int v = 0; v < num_vertices(); ++v) {
    for_each_bit(adj_[v], [&](int u) { g.adj_[perm[v]] |= bit(perm[u]); });
  }
  return g;
}

// ---------------------------------------------------------------------------
// Digraph

Digraph::Digraph(int num_vertices) {
  check_order(num_vertices, "digraph");
  out_.assign(num_vertices, 0);
}

Digraph Digraph::from_rows(std::vector<Row> out_rows) {
  Digraph d(static_cast<int>(out_rows.size()));
  for (Row r : out_rows) {
    if (r & ~low_bits(d.num_vertices())) throw PreconditionError("arc row has bits beyond vertex count");
  }
  d.out_ = std::move(out_rows);
  return d;
}

Digraph Digraph::from_matrix(const ZeroOneMatrix& a) {
  if (!a.is_square()) throw PreconditionError("adjacency matrix must be square");
  return from_rows(std::vector<Row>(a.row_bits().begin(), a.row_bits().end()));
}

Digraph Digraph::directed_cycle(int n) {
  Digraph d(n);
  for (int v = 0; v < n; ++v) d.add_arc(v, (v + 1) % n);
  return d;
}

int Digraph::num_arcs() const {
  int total = 0;
  for (Row r : out_) total += popcount(r);
  return total;
}

void Digraph::add_arc(int u, int v) {
  check_vertex(u, num_vertices());
  check_vertex(v, num_vertices());
  out_[u] |= bit(v);
}

void Digraph::remove_arc(int u, int v) {
  check_vertex(u, num_vertices());
  check_vertex(v, num_vertices());
  out_[u] &= ~bit(v);
}

Row Digraph::in_neighbors(int v) const {
  Row r = 0;
  for (int u = 0; u < num_vertices(); ++u) r |= ((out_[u] >> v) & 1U) << u;
  return r;
}

std::vector<int> Digraph::out_degrees() const {
  std::vector<int> out(out_.size());
  for (std::size_t v = 0; v < out_.size(); ++v) out[v] = popcount(out_[v]);
  return out;
}

std::vector<int> Digraph::in_degrees() const {
  std::vector<int> out(out_.size(), 0);
  for (Row r : out_) for_each_bit(r, [&](int v) { ++out[v]; });
  return out;
}

std::vector<Row> Digraph::in_rows() const {
  std::vector<Row> in(out_.size(), 0);
  for (int u = 0; u < num_vertices(); ++u) for_each_bit(out_[u], [&](int v) { in[v] |= bit(u); });
  return in;
}

ZeroOneMatrix Digraph::adjacency_matrix() const {
  return ZeroOneMatrix::from_rows(num_vertices(), out_);
}

bool Digraph::is_tournament() const {
  const int n = num_vertices();
  for (int u = 0; u < n; ++u) {
    if ((out_[u] >> u) & 1U) return false;
    for (int v = u + 1; v < n; ++v) {
      if (has_arc(u, v) == has_arc(v, u)) return false;
    }
  }
  return true;
}

Digraph Digraph::relabeled(std::span<const int> perm) const {
  Digraph d(num_vertices());
  for (int v = 0; v < num_vertices(); ++v) {
    for_each_bit(out_[v], [&](int u) { d.out_[perm[v]] |= bit(perm[u]); });
  }
  return d;
}

// ---------------------------------------------------------------------------
// BipartiteGraph / DegreeSequence

Graph BipartiteGraph::to_graph() const {
  const int r = left_size();
  Graph g(r + right_size());
  for (int i = 0; i < r; ++i) {
    for_each_bit(biadjacency_.row(i), [&](int j) { g.add_edge(i, r + j); });
  }
  return g;
}

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  for (int d : degrees_) {
    if (d < 0) throw PreconditionError("negative degree");
  }
  std::sort(degrees_.begin(), degrees_.end());
}

long long DegreeSequence::sum() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), 0LL);
}

// ---------------------------------------------------------------------------

BipartiteGraph bipartite_transform(const Digraph& d) {
  return BipartiteGraph(d.adjacency_matrix());
}

bool is_almost_regular(const Graph& g) {
  return DegreeSequence::of(g).is_almost_regular();
}

std::optional<UnbalancedPair> find_unbalanced_pair(const Graph& g) {
  const int n = g.num_vertices();
  std::optional<UnbalancedPair> best;
  int best_gap = 0;
  for (int hi = 0; hi < n; ++hi) {
    const Row n_hi = g.neighbors(hi);
    const int d_hi = popcount(n_hi);
    for (int lo = 0; lo < n; ++lo) {
      const Row n_lo = g.neighbors(lo);
      const int gap = d_hi - popcount(n_lo);
      if (gap < 2 || gap <= best_gap) continue;
      if ((n_lo & ~n_hi) == 0) {
        best = UnbalancedPair{hi, lo};
        best_gap = gap;
      }
    }
  }
  return best;
}

bool is_balanced(const Graph& g) { return !find_unbalanced_pair(g).has_value(); }

}  // namespace extremal
