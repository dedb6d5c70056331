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

#ifndef STABLECURVE_ORACLE_HPP
#define STABLECURVE_ORACLE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "stablecurve/aut_order.hpp"
#include "stablecurve/canonical.hpp"
#include "stablecurve/constructor.hpp"
#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"
#include "stablecurve/small_graph.hpp"
#include "stablecurve/sym_model.hpp"

namespace stablecurve {

enum class EnumerationMode { kSimpleTrees, kGeneralGraphs };

struct EnumerationSpec {
  Genus genus = 2;
  EnumerationMode mode = EnumerationMode::kSimpleTrees;
  std::size_t max_vertices = 10;
  Genus max_tree_genus = 10;
  Genus max_general_genus = 4;
};

namespace detail {

/// Rooted trees whose internal nodes have at least two children and whose
/// leaves are elliptic, stored by index; shapes with fewer leaves come first.
class RootedShapes {
 public:
  struct Shape {
    int leaves;
    int height;
    std::vector<std::size_t> kids;  // nondecreasing
  };

  explicit RootedShapes(int max_leaves) {
    shapes_.push_back({1, 0, {}});
    by_leaves_.resize(static_cast<std::size_t>(max_leaves) + 1);
    by_leaves_[1] = {0};
    for (int n = 2; n <= max_leaves; ++n) {
      std::vector<std::size_t> kids;
      extend(n, n, 0, kids);
    }
  }

  const Shape& at(std::size_t i) const { return shapes_[i]; }
  std::size_t size() const { return shapes_.size(); }

  /// Multisets (as nondecreasing index lists) of at least min_parts shapes
  /// with the given leaf total.
  template <class Visit>
  void multisets(int total, std::size_t min_parts, Visit&& visit) const {
    std::vector<std::size_t> parts;
    walk(total, 0, min_parts, parts, visit);
  }

  int add_to(DualGraph& g, std::size_t i) const {
    const Shape& s = shapes_[i];
    if (s.kids.empty()) return g.add_vertex(1);
    const int root = g.add_vertex(0);
    for (std::size_t k : s.kids) g.add_edge(root, add_to(g, k));
    return root;
  }

 private:
  void extend(int n, int remaining, std::size_t from, std::vector<std::size_t>& kids) {
    if (remaining == 0) {
      if (kids.size() < 2) return;
      int h = 0;
      for (std::size_t k : kids) h = std::max(h, shapes_[k].height + 1);
      by_leaves_[static_cast<std::size_t>(n)].push_back(shapes_.size());
      shapes_.push_back({n, h, kids});
      return;
    }
    // Shapes of n leaves are appended while we iterate, so bound by the
    // count that existed before this n started.
    for (std::size_t i = from; i < shapes_.size() && shapes_[i].leaves < n; ++i) {
      if (shapes_[i].leaves > remaining) continue;
      kids.push_back(i);
      extend(n, remaining - shapes_[i].leaves, i, kids);
      kids.pop_back();
    }
  }

  template <class Visit>
  void walk(int remaining, std::size_t from, std::size_t min_parts, std::vector<std::size_t>& parts,
            Visit& visit) const {
    if (remaining == 0) {
      if (parts.size() >= min_parts) visit(parts);
      return;
    }
    for (std::size_t i = from; i < shapes_.size(); ++i) {
      if (shapes_[i].leaves > remaining) continue;
      parts.push_back(i);
      walk(remaining - shapes_[i].leaves, i, min_parts, parts, visit);
      parts.pop_back();
    }
  }

  std::vector<Shape> shapes_;
  std::vector<std::vector<std::size_t>> by_leaves_;
};

}  // namespace detail

/// Every tree with g elliptic leaves and rational interior vertices of
/// valence >= 3, one per isomorphism class. Trees are generated directly
/// from their center: a vertex with >= 3 branches of which the two highest
/// tie, or an edge between two equally high rooted halves.
inline std::vector<DualGraph> enumerate_simple_trees(Genus g, Genus max_genus = 10) {
  if (g < 2) throw DomainError("enumeration needs g >= 2");
  if (g > max_genus) throw CapacityError("tree enumeration is capped at genus " + std::to_string(max_genus));
  const int n = static_cast<int>(g);
  const detail::RootedShapes shapes(n - 1);
  std::vector<DualGraph> out;
  shapes.multisets(n, 3, [&](const std::vector<std::size_t>& parts) {
    std::vector<int> heights;
    for (std::size_t p : parts) heights.push_back(shapes.at(p).height);
    std::sort(heights.rbegin(), heights.rend());
    if (heights[0] != heights[1]) return;
    DualGraph t;
    const int root = t.add_vertex(0);
    for (std::size_t p : parts) t.add_edge(root, shapes.add_to(t, p));
    out.push_back(std::move(t));
  });
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i; j < shapes.size(); ++j) {
      const auto& a = shapes.at(i);
      const auto& b = shapes.at(j);
      if (a.leaves + b.leaves != n || a.height != b.height) continue;
      DualGraph t;
      const int ra = shapes.add_to(t, i);
      t.add_edge(ra, shapes.add_to(t, j));
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace detail {

struct MultigraphSearch {
  std::size_t n0;
  std::vector<int> leaves;  // elliptic leaves per rational vertex
  int edges_left;
  int slack;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<int> mult;
  std::vector<int> deg;
  std::vector<std::size_t> row_end;  // slot index closing row i
  std::vector<DualGraph>* sink;

  void run() {
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = i; j < n0; ++j) slots.emplace_back(i, j);
    mult.assign(slots.size(), 0);
    deg = leaves;
    row_end.assign(n0, 0);
    for (std::size_t s = 0; s < slots.size(); ++s) row_end[slots[s].first] = s;
    dfs(0);
  }

  void dfs(std::size_t s) {
    if (s == slots.size()) {
      if (edges_left == 0) emit();
      return;
    }
    const auto [i, j] = slots[s];
    const int per = i == j ? 2 : 1;
    for (int m = 0; m <= edges_left; ++m) {
      const int di = deg[i] + per * m;
      const int dj = i == j ? di : deg[j] + m;
      if (di > 3 + slack || dj > 3 + slack) break;
      deg[i] += per * m;
      if (i != j) deg[j] += m;
      edges_left -= m;
      mult[s] = m;
      const bool row_ok = s != row_end[i] || deg[i] >= 3;
      if (row_ok) dfs(s + 1);
      edges_left += m;
      deg[i] -= per * m;
      if (i != j) deg[j] -= m;
    }
    mult[s] = 0;
  }

  void emit() {
    DualGraph g;
    for (std::size_t i = 0; i < n0; ++i) g.add_vertex(0);
    for (std::size_t i = 0; i < n0; ++i)
      for (int k = 0; k < leaves[i]; ++k) g.add_edge(static_cast<int>(i), g.add_vertex(1));
    for (std::size_t s = 0; s < slots.size(); ++s)
      for (int k = 0; k < mult[s]; ++k) g.add_edge(static_cast<int>(slots[s].first), static_cast<int>(slots[s].second));
    if (g.is_connected() && is_stable(g)) sink->push_back(std::move(g));
  }
};

inline void leaf_distributions(int total, std::size_t parts, int cap, std::vector<int>& acc,
                               std::vector<std::vector<int>>& out) {
  if (acc.size() == parts) {
    if (total == 0) out.push_back(acc);
    return;
  }
  for (int c = std::min(total, cap); c >= 0; --c) {
    acc.push_back(c);
    leaf_distributions(total - c, parts, c, acc, out);
    acc.pop_back();
  }
}

}  // namespace detail

/// Every connected stable multigraph (loops allowed) of genus g with
/// rational vertices and elliptic leaves, at most max_vertices vertices,
/// one per isomorphism class.
inline std::vector<DualGraph> enumerate_general_graphs(Genus g, std::size_t max_vertices = 10,
                                                       Genus max_genus = 4) {
  if (g < 2) throw DomainError("enumeration needs g >= 2");
  if (g > max_genus) throw CapacityError("general enumeration is capped at genus " + std::to_string(max_genus));
  if (max_vertices > kDefaultGeneralCap)
    throw CapacityError("general enumeration is capped at " + std::to_string(kDefaultGeneralCap) + " vertices");
  const int gi = static_cast<int>(g);
  std::vector<DualGraph> raw;
  if (max_vertices >= 2 && g == 2) {
    DualGraph d;
    const int a = d.add_vertex(1);
    d.add_edge(a, d.add_vertex(1));
    raw.push_back(d);
  }
  for (int n1 = 0; n1 <= gi; ++n1) {
    for (int n0 = 1; n0 <= 2 * gi - 2 && static_cast<std::size_t>(n0 + n1) <= max_vertices; ++n0) {
      const int e0 = gi - n1 + n0 - 1;
      if (e0 < 0) continue;
      const int slack = 2 * e0 + n1 - 3 * n0;
      if (slack < 0) continue;
      std::vector<std::vector<int>> dists;
      std::vector<int> acc;
      detail::leaf_distributions(n1, static_cast<std::size_t>(n0), n1, acc, dists);
      for (const auto& d : dists) {
        detail::MultigraphSearch search{static_cast<std::size_t>(n0), d, e0, slack, {}, {}, {}, {}, &raw};
        search.run();
      }
    }
  }
  std::map<CanonicalCode, DualGraph> unique;
  for (auto& gr : raw) unique.emplace(general_code(gr), std::move(gr));
  std::vector<DualGraph> out;
  for (auto& [code, gr] : unique) out.push_back(std::move(gr));
  return out;
}

inline std::vector<DualGraph> enumerate(const EnumerationSpec& spec) {
  if (spec.mode == EnumerationMode::kSimpleTrees) return enumerate_simple_trees(spec.genus, spec.max_tree_genus);
  return enumerate_general_graphs(spec.genus, spec.max_vertices, spec.max_general_genus);
}

namespace detail {

/// Runs f(i) for i in [0, n) on up to jobs threads.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

struct BruteMaxResult {
  AutOrder order = 0;
  std::vector<DualGraph> optima;
  std::size_t candidates = 0;
};

inline constexpr Genus kDefaultOracleCap = 8;

/// Largest aut_order over all simple trees of genus g, and every tree that
/// attains it (in enumeration order, independent of jobs).
inline BruteMaxResult brute_max(Genus g, unsigned jobs = 1, Genus cap = kDefaultOracleCap) {
  if (g > cap) throw CapacityError("brute_max is capped at genus " + std::to_string(cap));
  const auto trees = enumerate_simple_trees(g, cap);
  std::vector<AutOrder> orders(trees.size());
  detail::parallel_for(trees.size(), jobs, [&](std::size_t i) { orders[i] = aut_order(trees[i]); });
  BruteMaxResult res;
  res.candidates = trees.size();
  for (const auto& o : orders) res.order = std::max(res.order, o);
  for (std::size_t i = 0; i < trees.size(); ++i)
    if (orders[i] == res.order) res.optima.push_back(trees[i]);
  return res;
}

namespace detail {

/// Second, independent GAut evaluator: enumerates every per-vertex symmetry
/// option, keeps the globally consistent assignments and maximizes the
/// product of local orders.
class AssignmentSearch {
 public:
  AssignmentSearch(const DualGraph& tree, std::size_t max_assignments) : g_(tree), limit_(max_assignments) {
    require_model_tree(tree);
    const std::size_t n = tree.vertex_count();
    adj_.resize(n);
    for (const auto& e : tree.edges()) {
      const auto a = tree.index_of(e.u);
      const auto b = tree.index_of(e.v);
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    find_center();
    root_children();
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) plain_[*it] = plain_id(*it);
    for (std::size_t v : order_) options_[v] = local_options(v);
    if (second_) flip_possible_ = plain_[first_] == plain_[*second_];
  }

  AutOrder best() {
    choice_.assign(g_.vertex_count(), 0);
    best_ = 0;
    visited_ = 0;
    assign(0);
    return best_;
  }

 private:
  struct Option {
    int kind;      // 0 none, 1 rotate, 2 dihedral
    int cls;       // plain id of the moved class
    unsigned order;
  };

  void find_center() {
    const std::size_t n = g_.vertex_count();
    std::vector<std::size_t> deg(n);
    std::vector<bool> gone(n, false);
    std::vector<std::size_t> layer;
    for (std::size_t v = 0; v < n; ++v) {
      deg[v] = adj_[v].size();
      if (deg[v] <= 1) layer.push_back(v);
    }
    std::size_t alive = n;
    while (alive > 2) {
      std::vector<std::size_t> next;
      for (std::size_t v : layer) {
        gone[v] = true;
        --alive;
        for (std::size_t w : adj_[v])
          if (!gone[w] && --deg[w] == 1) next.push_back(w);
      }
      layer = next;
    }
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
      if (!gone[v]) rest.push_back(v);
    first_ = rest[0];
    if (rest.size() == 2) second_ = rest[1];
  }

  void root_children() {
    const std::size_t n = g_.vertex_count();
    kids_.assign(n, {});
    pinned_.assign(n, 1);
    plain_.assign(n, -1);
    options_.assign(n, {});
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> queue{first_};
    seen[first_] = true;
    if (second_) {
      queue.push_back(*second_);
      seen[*second_] = true;
    } else {
      pinned_[first_] = 0;
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t v = queue[h];
      for (std::size_t w : adj_[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        kids_[v].push_back(w);
        queue.push_back(w);
      }
    }
    order_ = queue;
  }

  int intern(std::vector<int> key) {
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<int>(ids_.size()));
    return it->second;
  }

  int plain_id(std::size_t v) {
    std::vector<int> key{0, g_.vertices()[v].weight};
    std::vector<int> ks;
    for (std::size_t c : kids_[v]) ks.push_back(plain_[c]);
    std::sort(ks.begin(), ks.end());
    key.insert(key.end(), ks.begin(), ks.end());
    return intern(key);
  }

  std::vector<Option> local_options(std::size_t v) {
    std::vector<Option> opts{{0, -1, 1}};
    std::map<int, unsigned> classes;
    for (std::size_t c : kids_[v]) classes[plain_[c]]++;
    const auto total = static_cast<unsigned>(kids_[v].size());
    const unsigned free_slots = 2U - static_cast<unsigned>(pinned_[v]);
    for (const auto& [cls, m] : classes) {
      if (m >= 2 && total - m <= free_slots) opts.push_back({1, cls, m});
      if (pinned_[v] == 0 && total == m && m >= 3) opts.push_back({2, cls, 2 * m});
    }
    return opts;
  }

  /// Decorated id of v under the current choices, or -1 if inconsistent.
  int decorated(std::size_t v, std::vector<int>& memo) {
    if (memo[v] != -2) return memo[v];
    const Option& opt = options_[v][choice_[v]];
    std::vector<int> ks;
    for (std::size_t c : kids_[v]) {
      const int d = decorated(c, memo);
      if (d < 0) return memo[v] = -1;
      ks.push_back(d);
      if (opt.kind != 0 && plain_[c] == opt.cls) {
        for (std::size_t c2 : kids_[v])
          if (plain_[c2] == opt.cls && decorated(c2, memo) != d) return memo[v] = -1;
      }
    }
    std::sort(ks.begin(), ks.end());
    std::vector<int> key{1, g_.vertices()[v].weight, opt.kind, opt.cls};
    key.insert(key.end(), ks.begin(), ks.end());
    return memo[v] = intern(key);
  }

  void evaluate() {
    if (++visited_ > limit_) throw CapacityError("assignment search exceeds " + std::to_string(limit_) + " assignments");
    std::vector<int> memo(g_.vertex_count(), -2);
    for (std::size_t v : order_)
      if (decorated(v, memo) < 0) return;
    AutOrder total = 1;
    for (std::size_t v : order_) total *= options_[v][choice_[v]].order;
    if (flip_possible_ && decorated(first_, memo) == decorated(*second_, memo)) total *= 2;
    best_ = std::max(best_, total);
  }

  void assign(std::size_t pos) {
    if (pos == order_.size()) {
      evaluate();
      return;
    }
    const std::size_t v = order_[pos];
    for (std::size_t k = 0; k < options_[v].size(); ++k) {
      choice_[v] = k;
      assign(pos + 1);
    }
    choice_[v] = 0;
  }

  const DualGraph& g_;
  std::size_t limit_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::vector<std::size_t>> kids_;
  std::vector<int> pinned_;
  std::vector<int> plain_;
  std::vector<std::vector<Option>> options_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> choice_;
  std::size_t first_ = 0;
  std::optional<std::size_t> second_;
  bool flip_possible_ = false;
  std::map<std::vector<int>, int> ids_;
  AutOrder best_ = 0;
  std::size_t visited_ = 0;
};

}  // namespace detail

/// GAut of a model tree by exhaustive search over symmetry assignments.
inline AutOrder gaut_assignment_search(const DualGraph& tree, std::size_t max_assignments = 1U << 22) {
  return detail::AssignmentSearch(tree, max_assignments).best();
}

}  // namespace stablecurve

#endif  // STABLECURVE_ORACLE_HPP
