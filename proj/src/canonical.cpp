#include "extremal/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "extremal/errors.hpp"
#include "extremal/graph6.hpp"

namespace extremal {

namespace {

template <class Fn>
void for_each_bit(Row r, Fn&& fn) {
  while (r) {
    fn(std::countr_zero(r));
    r &= r - 1;
  }
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Canonizer::Canonizer(int vertex_limit) : limit_(vertex_limit) {
  if (vertex_limit < 0 || vertex_limit > kMaxVertices) {
    throw PreconditionError("canonical vertex limit must lie in [0, " + std::to_string(kMaxVertices) + "]");
  }
}

CanonicalLabeling Canonizer::run(std::span<const Row> out_rows, std::span<const int> colors) {
  n_ = static_cast<int>(out_rows.size());
  if (n_ > limit_) {
    throw SizeLimitError("canonical form limited to " + std::to_string(limit_) + " vertices, got " +
                         std::to_string(n_));
  }
  if (!colors.empty() && static_cast<int>(colors.size()) != n_) {
    throw PreconditionError("colour vector size does not match vertex count");
  }
  symmetric_ = true;
  for (int v = 0; v < n_; ++v) {
    out_[v] = out_rows[v];
    in_[v] = 0;
  }
  for (int u = 0; u < n_; ++u) for_each_bit(out_[u], [&](int v) { in_[v] |= bit(u); });
  for (int v = 0; v < n_; ++v) symmetric_ = symmetric_ && in_[v] == out_[v];

  first_depth_ = -1;
  best_depth_ = -1;
  jump_to_ = -1;
  automorphisms_.clear();

  CanonicalLabeling result;
  if (n_ == 0) return result;

  // Initial ordered partition: colour classes (loops split off), ascending.
  std::vector<std::pair<long long, int>> keyed(n_);
  for (int v = 0; v < n_; ++v) {
    const long long c = colors.empty() ? 0 : colors[v];
    keyed[v] = {c * 2 + static_cast<long long>((out_[v] >> v) & 1U), v};
  }
  std::sort(keyed.begin(), keyed.end());
  Partition root;
  std::uint64_t queue = 0;
  for (int i = 0; i < n_;) {
    int j = i;
    while (j < n_ && keyed[j].first == keyed[i].first) {
      root.lab[j] = static_cast<std::uint8_t>(keyed[j].second);
      root.len[j] = 0;
      ++j;
    }
    root.len[i] = static_cast<std::uint8_t>(j - i);
    ++root.cells;
    queue |= bit(i);
    i = j;
  }
  refine(root, queue);
  search(0, root);

  result.order = best_lab_;
  result.code = best_code_;
  result.automorphisms = std::move(automorphisms_);
  automorphisms_.clear();
  return result;
}

bool Canonizer::refine(Partition& p, std::uint64_t queue) const {
  std::array<std::pair<int, int>, kMaxVertices> keyed{};
  bool changed = false;
  while (queue && p.cells < n_) {
    const int s = std::countr_zero(queue);
    queue &= queue - 1;
    Row splitter = 0;
    for (int k = s; k < s + p.len[s]; ++k) splitter |= bit(p.lab[k]);

    for (int c = 0; c < n_;) {
      const int size = p.len[c];
      if (size == 1) {
        ++c;
        continue;
      }
      bool uniform = true;
      for (int k = 0; k < size; ++k) {
        const int v = p.lab[c + k];
        int key = popcount(out_[v] & splitter);
        if (!symmetric_) key = key * 65 + popcount(in_[v] & splitter);
        keyed[k] = {key, v};
        uniform = uniform && key == keyed[0].first;
      }
      if (!uniform) {
        std::sort(keyed.begin(), keyed.begin() + size);
        int start = c;
        for (int k = 0; k < size; ++k) {
          p.lab[c + k] = static_cast<std::uint8_t>(keyed[k].second);
          p.len[c + k] = 0;
          if (k + 1 == size || keyed[k + 1].first != keyed[k].first) {
            p.len[start] = static_cast<std::uint8_t>(c + k + 1 - start);
            queue |= bit(start);
            start = c + k + 1;
            ++p.cells;
          }
        }
        --p.cells;
        changed = true;
      }
      c += size;
    }
  }
  return changed;
}

void Canonizer::individualize(Partition& p, int vertex) const {
  int c = 0;
  while (true) {
    const int size = p.len[c];
    int at = -1;
    for (int k = c; k < c + size; ++k) {
      if (p.lab[k] == vertex) at = k;
    }
    if (at >= 0) {
      std::swap(p.lab[c], p.lab[at]);
      p.len[c + 1] = static_cast<std::uint8_t>(size - 1);
      p.len[c] = 1;
      ++p.cells;
      refine(p, bit(c));
      return;
    }
    c += size;
  }
}

bool Canonizer::fixed_by(const std::vector<int>& aut, int depth) const {
  for (int d = 0; d < depth; ++d) {
    if (aut[path_[d]] != path_[d]) return false;
  }
  return true;
}

void Canonizer::search(int depth, const Partition& p) {
  if (p.cells == n_) {
    leaf(depth, p);
    return;
  }
  int target = 0;
  while (p.len[target] == 1) ++target;
  std::array<int, kMaxVertices> children{};
  const int size = p.len[target];
  for (int k = 0; k < size; ++k) children[k] = p.lab[target + k];
  std::sort(children.begin(), children.begin() + size);

  std::vector<int> explored;
  std::vector<int> parent;
  for (int k = 0; k < size; ++k) {
    const int w = children[k];
    if (!explored.empty() && !automorphisms_.empty()) {
      parent.resize(n_);
      std::iota(parent.begin(), parent.end(), 0);
      for (const auto& aut : automorphisms_) {
        if (!fixed_by(aut, depth)) continue;
        for (int v = 0; v < n_; ++v) {
          const int a = find_root(parent, v);
          const int b = find_root(parent, aut[v]);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
      const int rw = find_root(parent, w);
      bool equivalent = false;
      for (int e : explored) equivalent = equivalent || find_root(parent, e) == rw;
      if (equivalent) continue;
    }
    path_[depth] = w;
    Partition child = p;
    individualize(child, w);
    search(depth + 1, child);
    explored.push_back(w);
    if (jump_to_ >= 0) {
      if (jump_to_ < depth) return;
      jump_to_ = -1;
    }
  }
}

void Canonizer::leaf(int depth, const Partition& p) {
  std::array<int, kMaxVertices> pos{};
  for (int i = 0; i < n_; ++i) pos[p.lab[i]] = i;
  scratch_code_.assign(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Row r = 0;
    for_each_bit(out_[p.lab[i]], [&](int w) { r |= bit(pos[w]); });
    scratch_code_[i] = r;
  }
  auto current_lab = [&] {
    std::vector<int> lab(n_);
    for (int i = 0; i < n_; ++i) lab[i] = p.lab[i];
    return lab;
  };
  auto divergence = [&](const std::array<int, kMaxVertices>& other, int other_depth) {
    int d = 0;
    while (d < depth && d < other_depth && path_[d] == other[d]) ++d;
    return d;
  };
  auto record = [&](const std::vector<int>& from) {
    std::vector<int> aut(n_);
    for (int i = 0; i < n_; ++i) aut[from[i]] = p.lab[i];
    automorphisms_.push_back(std::move(aut));
  };

  if (first_depth_ < 0) {
    first_depth_ = best_depth_ = depth;
    first_path_ = best_path_ = path_;
    first_lab_ = best_lab_ = current_lab();
    first_code_ = best_code_ = scratch_code_;
    return;
  }
  if (scratch_code_ == first_code_) {
    record(first_lab_);
    jump_to_ = divergence(first_path_, first_depth_);
    return;
  }
  if (scratch_code_ == best_code_) {
    record(best_lab_);
    jump_to_ = divergence(best_path_, best_depth_);
    return;
  }
  if (scratch_code_ > best_code_) {
    best_depth_ = depth;
    best_path_ = path_;
    best_lab_ = current_lab();
    best_code_ = scratch_code_;
  }
}

// ---------------------------------------------------------------------------

Graph canonical_graph(const Graph& g, int vertex_limit) {
  Canonizer c(vertex_limit);
  return Graph::from_rows(c.run(g.rows()).code);
}

Digraph canonical_digraph(const Digraph& d, int vertex_limit) {
  Canonizer c(vertex_limit);
  return Digraph::from_rows(c.run(d.out_rows()).code);
}

std::string canonical_form(const Graph& g, int vertex_limit) {
  return emit_graph6(canonical_graph(g, vertex_limit));
}

std::string canonical_form_digraph(const Digraph& d, int vertex_limit) {
  return emit_digraph6(canonical_digraph(d, vertex_limit));
}

bool same_orbit(Canonizer& canonizer, std::span<const Row> out_rows, int u, int v) {
  if (u == v) return true;
  std::vector<int> colors(out_rows.size(), 0);
  colors[u] = 1;
  const auto cu = canonizer.run(out_rows, colors).code;
  colors[u] = 0;
  colors[v] = 1;
  return canonizer.run(out_rows, colors).code == cu;
}

}  // namespace extremal
