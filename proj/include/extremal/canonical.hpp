#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "extremal/graph.hpp"

namespace extremal {

/// Default upper bound on the order of graphs handed to the canonical labeller.
inline constexpr int kDefaultCanonicalLimit = 16;

/// Result of one canonical labelling run.
struct CanonicalLabeling {
  /// order[p] is the input vertex placed at canonical position p.
  std::vector<int> order;
  /// Out-rows of the relabelled (di)graph; equal iff the inputs are isomorphic
  /// (as coloured digraphs).
  std::vector<Row> code;
  /// Automorphisms discovered during the search, as vertex maps.
  std::vector<std::vector<int>> automorphisms;

  /// True iff the automorphism group is trivial. Without automorphisms no
  /// pruning happens, so every leaf is visited and any non-trivial
  /// automorphism would have been found.
  bool rigid() const { return automorphisms.empty(); }
};

/// Canonical labelling of coloured digraphs by equitable partition refinement
/// and a depth-first search over individualisations, pruned with the
/// automorphisms found on the way (first-path and best-path backjumps, orbit
/// pruning at every node). Undirected graphs are symmetric digraphs.
///
/// Holds its scratch space; reuse one instance per thread.
class Canonizer {
 public:
  explicit Canonizer(int vertex_limit = kDefaultCanonicalLimit);

  /// `out_rows[v]` is the out-neighbourhood of v (loops allowed). `colors`,
  /// when non-empty, gives an initial vertex colouring; colour classes are
  /// ordered by colour value and isomorphisms must preserve colours.
  CanonicalLabeling run(std::span<const Row> out_rows, std::span<const int> colors = {});

  int vertex_limit() const { return limit_; }

 private:
  struct Partition {
    std::array<std::uint8_t, kMaxVertices> lab{};
    std::array<std::uint8_t, kMaxVertices> len{};  // len[start] > 0 marks a cell start
    int cells = 0;
  };

  bool refine(Partition& p, std::uint64_t queue_starts) const;
  void individualize(Partition& p, int vertex) const;
  void search(int depth, const Partition& p);
  void leaf(int depth, const Partition& p);
  bool fixed_by(const std::vector<int>& aut, int depth) const;

  int limit_;
  int n_ = 0;
  bool symmetric_ = true;
  std::array<Row, kMaxVertices> out_{};
  std::array<Row, kMaxVertices> in_{};

  std::array<int, kMaxVertices> path_{};
  std::array<int, kMaxVertices> first_path_{};
  std::array<int, kMaxVertices> best_path_{};
  int first_depth_ = -1;
  int best_depth_ = -1;
  std::vector<int> first_lab_;
  std::vector<int> best_lab_;
  std::vector<Row> first_code_;
  std::vector<Row> best_code_;
  std::vector<Row> scratch_code_;
  std::vector<std::vector<int>> automorphisms_;
  int jump_to_ = -1;
};

/// Canonical bytes of a graph: graph6 of its canonical relabelling. Equal iff
/// the graphs are isomorphic. Throws SizeLimitError beyond `vertex_limit`.
std::string canonical_form(const Graph& g, int vertex_limit = kDefaultCanonicalLimit);

/// Canonical bytes of a digraph: digraph6 of its canonical relabelling.
std::string canonical_form_digraph(const Digraph& d, int vertex_limit = kDefaultCanonicalLimit);

Graph canonical_graph(const Graph& g, int vertex_limit = kDefaultCanonicalLimit);
Digraph canonical_digraph(const Digraph& d, int vertex_limit = kDefaultCanonicalLimit);

/// True iff some automorphism of the coloured digraph maps u to v. Decided by
/// comparing canonical forms with u (resp. v) given a private colour.
bool same_orbit(Canonizer& canonizer, std::span<const Row> out_rows, int u, int v);

}  // namespace extremal
