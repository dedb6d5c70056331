// Copyright 2026 The stablecurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABLECURVE_CANONICAL_HPP
#define STABLECURVE_CANONICAL_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"

namespace stablecurve {

/// Isomorphism-class fingerprint. Equal codes mean isomorphic graphs
/// (weights and any requested root respected); the byte order is a total
/// order used for deterministic tie-breaking.
struct CanonicalCode {
  std::string bytes;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

/// Root of a tree for rooted codes: a vertex id or an edge given by its two
/// endpoint ids.
using TreeRoot = std::variant<int, std::pair<int, int>>;

inline constexpr std::size_t kDefaultGeneralCap = 12;

namespace detail {

/// Index-based adjacency over a tree, built once per query.
struct TreeView {
  explicit TreeView(const DualGraph& graph) : g(&graph), adj(graph.vertex_count()) {
    if (!graph.is_tree()) throw DomainError("expected a tree");
    for (const auto& e : graph.edges()) {
      adj[graph.index_of(e.u)].push_back(graph.index_of(e.v));
      adj[graph.index_of(e.v)].push_back(graph.index_of(e.u));
    }
  }

  int id(std::size_t i) const { return g->vertices()[i].id; }
  int weight(std::size_t i) const { return g->vertices()[i].weight; }
  std::size_t size() const { return adj.size(); }

  std::vector<std::size_t> children(std::size_t v, std::optional<std::size_t> parent) const {
    std::vector<std::size_t> out;
    for (std::size_t w : adj[v])
      if (!parent || w != *parent) out.push_back(w);
    return out;
  }

  /// BFS distances and parents from `start`.
  std::pair<std::vector<int>, std::vector<std::size_t>> bfs(std::size_t start) const {
    std::vector<int> dist(size(), -1);
    std::vector<std::size_t> parent(size(), start);
    std::vector<std::size_t> queue{start};
    dist[start] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      for (std::size_t y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
    return {dist, parent};
  }

  const DualGraph* g;
  std::vector<std::vector<std::size_t>> adj;
};

/// Middle of every longest path: a vertex (second empty) or an edge.
struct TreeCenter {
  std::size_t first = 0;
  std::optional<std::size_t> second;
};

inline TreeCenter tree_center(const TreeView& t) {
  auto farthest = [&](const std::vector<int>& dist) {
    // Smallest index among the farthest vertices keeps this deterministic.
    return static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  };
  const std::size_t x = farthest(t.bfs(0).first);
  auto [dist, parent] = t.bfs(x);
  const std::size_t y = farthest(dist);
  std::vector<std::size_t> path{y};
  while (path.back() != x) path.push_back(parent[path.back()]);
  const std::size_t length = path.size() - 1;
  if (length % 2 == 0) return {path[length / 2], std::nullopt};
  return {path[length / 2], path[length / 2 + 1]};
}

/// AHU-style code of the subtree hanging at v away from parent.
inline std::string rooted_code(const TreeView& t, std::size_t v,
                               std::optional<std::size_t> parent) {
  std::vector<std::string> parts;
  for (std::size_t c : t.children(v, parent)) parts.push_back(rooted_code(t, c, v));
  std::sort(parts.begin(), parts.end());
  std::string out = "(" + std::to_string(t.weight(v));
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

inline std::string edge_code(const TreeView& t, std::size_t a, std::size_t b) {
  std::string ca = rooted_code(t, a, b);
  std::string cb = rooted_code(t, b, a);
  if (cb < ca) std::swap(ca, cb);
  return ca + cb;
}

// General mode: colour refinement followed by a backtracking search for
// the lexicographically smallest adjacency encoding.
class GeneralCanonizer {
 public:
  GeneralCanonizer(const DualGraph& g, std::optional<int> root)
      : n_(g.vertex_count()), mult_(n_, std::vector<int>(n_, 0)), weight_(n_) {
    for (std::size_t i = 0; i < n_; ++i) weight_[i] = g.vertices()[i].weight;
    for (const auto& e : g.edges()) {
      const std::size_t a = g.index_of(e.u);
      const std::size_t b = g.index_of(e.v);
      if (a == b) {
        ++mult_[a][a];
      } else {
        ++mult_[a][b];
        ++mult_[b][a];
      }
    }
    root_index_ = root ? std::optional<std::size_t>(g.index_of(*root)) : std::nullopt;
    refine();
    compute_twins();
  }

  std::string run() {
    std::vector<std::size_t> order;
    order.reserve(n_);
    std::vector<bool> used(n_, false);
    std::vector<int> partial;
    search(order, used, partial);
    std::string out = "G";
    for (int x : best_) out += std::to_string(x) + ",";
    return out;
  }

 private:
  void refine() {
    color_.assign(n_, 0);
    std::vector<std::vector<int>> sig(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      int deg = 0;
      for (std::size_t j = 0; j < n_; ++j) deg += (i == j ? 2 : 1) * mult_[i][j];
      sig[i] = {root_index_ && *root_index_ == i ? 0 : 1, weight_[i], deg, mult_[i][i]};
    }
    std::size_t classes = rank(sig);
    for (;;) {
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<std::pair<int, int>> nb;
        for (std::size_t j = 0; j < n_; ++j)
          if (j != i && mult_[i][j] > 0) nb.emplace_back(color_[j], mult_[i][j]);
        std::sort(nb.begin(), nb.end());
        sig[i] = {color_[i]};
        for (auto [c, m] : nb) {
          sig[i].push_back(c);
          sig[i].push_back(m);
        }
      }
      const std::size_t next = rank(sig);
      if (next == classes) return;
      classes = next;
    }
  }

  std::size_t rank(const std::vector<std::vector<int>>& sig) {
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n_; ++i)
      color_[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    return sorted.size();
  }

  // Vertices u, w are twins when the transposition (u w) is an automorphism.
  void compute_twins() {
    twin_rep_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      twin_rep_[u] = u;
      for (std::size_t w = 0; w < u; ++w) {
        if (twin_rep_[w] != w || color_[w] != color_[u] || mult_[u][u] != mult_[w][w]) continue;
        bool same = true;
        for (std::size_t x = 0; x < n_ && same; ++x)
          if (x != u && x != w && mult_[u][x] != mult_[w][x]) same = false;
        if (same) {
          twin_rep_[u] = w;
          break;
        }
      }
    }
  }

  void search(std::vector<std::size_t>& order, std::vector<bool>& used, std::vector<int>& partial) {
    // Compare the prefix against the best code found so far.
    if (!best_.empty()) {
      const std::size_t k = std::min(partial.size(), best_.size());
      const auto cmp = std::lexicographical_compare_three_way(
          partial.begin(), partial.begin() + static_cast<std::ptrdiff_t>(k), best_.begin(),
          best_.begin() + static_cast<std::ptrdiff_t>(k));
      if (cmp > 0) return;
      if (cmp < 0) best_.clear();
    }
    if (order.size() == n_) {
      best_ = partial;
      return;
    }
    int cell = -1;
    for (std::size_t i = 0; i < n_; ++i)
      if (!used[i] && (cell < 0 || color_[i] < cell)) cell = color_[i];
    std::vector<bool> tried_twin(n_, false);
    for (std::size_t v = 0; v < n_; ++v) {
      if (used[v] || color_[v] != cell) continue;
      const std::size_t rep = twin_rep_[v];
      if (tried_twin[rep]) continue;
      tried_twin[rep] = true;
      const std::size_t mark = partial.size();
      partial.push_back(cell);
      partial.push_back(weight_[v]);
      partial.push_back(mult_[v][v]);
      for (std::size_t p : order) partial.push_back(mult_[v][p]);
      order.push_back(v);
      used[v] = true;
      search(order, used, partial);
      used[v] = false;
      order.pop_back();
      partial.resize(mark);
    }
  }

  std::size_t n_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> weight_;
  std::vector<int> color_;
  std::vector<std::size_t> twin_rep_;
  std::optional<std::size_t> root_index_;
  std::vector<int> best_;
};

}  // namespace detail

/// Unrooted code of a tree, anchored at the center of its diameter.
inline CanonicalCode tree_code(const DualGraph& g) {
  detail::TreeView t(g);
  const auto c = detail::tree_center(t);
  if (!c.second) return {"V" + detail::rooted_code(t, c.first, std::nullopt)};
  return {"E" + detail::edge_code(t, c.first, *c.second)};
}

/// Code of a tree rooted at a vertex or at an edge.
inline CanonicalCode rooted_tree_code(const DualGraph& g, const TreeRoot& root) {
  detail::TreeView t(g);
  if (const int* v = std::get_if<int>(&root))
    return {"r" + detail::rooted_code(t, g.index_of(*v), std::nullopt)};
  const auto [a, b] = std::get<std::pair<int, int>>(root);
  const std::size_t ia = g.index_of(a);
  const std::size_t ib = g.index_of(b);
  if (std::find(t.adj[ia].begin(), t.adj[ia].end(), ib) == t.adj[ia].end())
    throw DomainError("root edge is not an edge of the tree");
  return {"e" + detail::edge_code(t, ia, ib)};
}

/// Exhaustive canonical form for small general multigraphs.
inline CanonicalCode general_code(const DualGraph& g, std::optional<int> root = std::nullopt,
                                  std::size_t cap = kDefaultGeneralCap) {
  if (g.vertex_count() > cap)
    throw CapacityError("general canonical form is capped at " + std::to_string(cap) +
                        " vertices, graph has " + std::to_string(g.vertex_count()));
  return {detail::GeneralCanonizer(g, root).run()};
}

/// Tree mode for trees, general mode otherwise.
inline CanonicalCode canonical_code(const DualGraph& g) {
  if (g.is_tree()) return tree_code(g);
  return general_code(g);
}

}  // namespace stablecurve

#endif  // STABLECURVE_CANONICAL_HPP
