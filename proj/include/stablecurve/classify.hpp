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

#ifndef STABLECURVE_CLASSIFY_HPP
#define STABLECURVE_CLASSIFY_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stablecurve/canonical.hpp"
#include "stablecurve/constructor.hpp"
#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"
#include "stablecurve/oracle.hpp"
#include "stablecurve/reductions.hpp"
#include "stablecurve/small_graph.hpp"
#include "stablecurve/sym_model.hpp"

namespace stablecurve {

/// Type 1: one vertex. Type 2: binary tree with 2^(n+1) leaves. Type t in
/// {3,4,5}: t binary trees with 2^n leaves each on a common root.
struct PerfectType {
  int type = 1;
  int scale = 0;

  std::uint64_t leaves() const {
    if (type == 1) return 1;
    if (type == 2) return std::uint64_t{2} << scale;
    return static_cast<std::uint64_t>(type) << scale;
  }
  friend bool operator==(const PerfectType&, const PerfectType&) = default;
};

struct StrictPart {
  PerfectType type;
  std::uint64_t leaves = 0;
  int root = 0;  // a leaf of the fixed subtree
};

struct StrictDecomposition {
  std::vector<int> fixed_vertices;
  std::optional<std::pair<int, int>> center_edge;
  std::vector<StrictPart> parts;  // leaf counts decreasing
};

namespace detail {

/// Depth d when the subtree at v (away from parent) is a complete binary
/// tree with 2^d elliptic leaves.
inline std::optional<int> binary_depth(const DualGraph& g, int v, std::optional<int> parent) {
  std::vector<int> kids;
  for (int w : g.neighbors(v))
    if (!parent || w != *parent) kids.push_back(w);
  if (kids.empty()) return g.weight(v) == 1 ? std::optional<int>(0) : std::nullopt;
  if (g.weight(v) != 0 || kids.size() != 2) return std::nullopt;
  const auto a = binary_depth(g, kids[0], v);
  const auto b = binary_depth(g, kids[1], v);
  if (!a || !b || *a != *b) return std::nullopt;
  return *a + 1;
}

}  // namespace detail

/// Perfect type of the subtree at root, hanging away from `away`.
inline std::optional<PerfectType> perfect_type(const DualGraph& t, int root, std::optional<int> away = std::nullopt) {
  std::vector<int> kids = t.neighbors(root);
  if (away) std::erase(kids, away.value());
  if (kids.empty()) return t.weight(root) == 1 ? std::optional<PerfectType>(PerfectType{1, 0}) : std::nullopt;
  if (t.weight(root) != 0) return std::nullopt;
  if (const auto d = detail::binary_depth(t, root, away); d && *d >= 1) return PerfectType{2, *d - 1};
  if (kids.size() < 3 || kids.size() > 5) return std::nullopt;
  std::optional<int> depth;
  for (int k : kids) {
    const auto d = detail::binary_depth(t, k, root);
    if (!d || (depth && *d != *depth)) return std::nullopt;
    depth = d;
  }
  return PerfectType{static_cast<int>(kids.size()), *depth};
}

/// Perfect type of a whole tree. An edge-centered tree whose halves are
/// equal binary trees is the binary tree rooted at the edge midpoint.
inline std::optional<PerfectType> perfect_type(const DualGraph& t) {
  if (!t.is_tree()) return std::nullopt;
  detail::TreeView view(t);
  const auto c = detail::tree_center(view);
  const int a = t.vertices()[c.first].id;
  if (!c.second) return perfect_type(t, a);
  const int b = t.vertices()[*c.second].id;
  const auto da = detail::binary_depth(t, a, b);
  const auto db = detail::binary_depth(t, b, a);
  if (da && db && *da == *db) return PerfectType{2, *da};
  return std::nullopt;
}

namespace detail {

/// Fixed subtree plus one perfect part per leaf of it; nullopt when some
/// part is not perfect. No numeric conditions are checked here.
struct PartSplit {
  std::vector<int> fixed;
  std::optional<std::pair<int, int>> center_edge;
  std::vector<StrictPart> parts;
  std::vector<std::pair<int, int>> fixed_edges;
  std::vector<int> interior;
};

inline std::optional<PartSplit> split_parts(const DualGraph& t) {
  const FixedSubtree fs = fixed_subtree(t);
  PartSplit s;
  s.fixed = fs.vertices;
  s.center_edge = fs.center_edge;
  if (s.fixed.empty()) {
    const auto whole = perfect_type(t);
    if (!whole || whole->type != 2 || !fs.center_edge) return std::nullopt;
    s.parts.push_back({*whole, whole->leaves(), fs.center_edge->first});
    return s;
  }
  const std::set<int> fixed(s.fixed.begin(), s.fixed.end());
  for (const auto& e : t.edges())
    if (fixed.count(e.u) && fixed.count(e.v)) s.fixed_edges.emplace_back(e.u, e.v);
  for (int u : s.fixed) {
    std::vector<int> inside;
    for (int w : t.neighbors(u))
      if (fixed.count(w)) inside.push_back(w);
    if (inside.size() >= 2) {
      s.interior.push_back(u);
      continue;
    }
    const std::optional<int> away = inside.empty() ? std::nullopt : std::optional<int>(inside[0]);
    const auto type = perfect_type(t, u, away);
    if (!type) return std::nullopt;
    s.parts.push_back({*type, type->leaves(), u});
  }
  std::stable_sort(s.parts.begin(), s.parts.end(), [](const auto& x, const auto& y) { return x.leaves > y.leaves; });
  return s;
}

inline bool sanctioned_pair(const StrictPart& larger, const StrictPart& smaller) {
  // Type 2 with 2^(s+3) leaves followed by Type 3 with 3 * 2^s leaves.
  return larger.type.type == 2 && smaller.type.type == 3 && larger.type.scale == smaller.type.scale + 2;
}

}  // namespace detail

/// Strict optimality: the tree is its fixed subtree G0 plus perfect parts
/// rooted at the leaves of G0, interior G0 vertices have valence exactly 3
/// with every neighbor in G0, and the leaf counts N_1 > N_2 > ... satisfy
/// N_i >= 4 N_{i+1} except for a Type 2 part of 2^(s+3) leaves followed by
/// a Type 3 part of 3 * 2^s.
inline std::optional<StrictDecomposition> is_strict_optimal(const DualGraph& t) {
  if (!is_simple(t)) return std::nullopt;
  const auto split = detail::split_parts(t);
  if (!split) return std::nullopt;
  const std::set<int> fixed(split->fixed.begin(), split->fixed.end());
  for (int u : split->interior) {
    if (t.degree(u) != 3) return std::nullopt;
    for (int w : t.neighbors(u))
      if (!fixed.count(w)) return std::nullopt;
  }
  const auto& parts = split->parts;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (parts[i].leaves <= parts[i + 1].leaves) return std::nullopt;
    if (parts[i].leaves < 4 * parts[i + 1].leaves && !detail::sanctioned_pair(parts[i], parts[i + 1]))
      return std::nullopt;
  }
  return StrictDecomposition{split->fixed, split->center_edge, parts};
}

namespace detail {

inline void require_optimal(const DualGraph& t) {
  if (!is_simple(t)) throw DomainError("neutral moves need a simple tree");
  if (aut_order(t) != max_aut_order(static_cast<Genus>(genus(t))))
    throw DomainError("neutral moves need an optimal tree");
}

inline int fixed_neighbor(const DualGraph& t, int v, const std::vector<int>& fixed) {
  for (int w : t.neighbors(v))
    if (std::binary_search(fixed.begin(), fixed.end(), w)) return w;
  throw DomainError("part root has no neighbor in the fixed subtree");
}

inline std::vector<int> children_away(const DualGraph& t, int v, int parent) {
  std::vector<int> kids;
  for (int w : t.neighbors(v))
    if (w != parent) kids.push_back(w);
  return kids;
}

/// Hangs the detached subtree rooted at piece from every fixed vertex of
/// weight 0 (other than those excluded) and from a new vertex on every
/// fixed edge still present. Results are stabilized.
inline void attach_everywhere(const DualGraph& base, int piece, const PartSplit& split, const std::set<int>& excluded,
                              std::map<CanonicalCode, DualGraph>& out) {
  auto keep = [&](DualGraph g) {
    if (!g.is_connected()) return;
    g = stabilize(g);
    out.emplace(tree_code(g), std::move(g));
  };
  for (int u : split.fixed) {
    if (excluded.count(u) || base.weight(u) != 0) continue;
    DualGraph g = base;
    g.add_edge(u, piece);
    keep(std::move(g));
  }
  for (const auto& [a, b] : split.fixed_edges) {
    DualGraph g = base;
    if (!g.remove_one_edge(a, b)) continue;
    const int x = g.add_vertex(0);
    g.add_edge(a, x);
    g.add_edge(x, b);
    g.add_edge(x, piece);
    keep(std::move(g));
  }
}

inline std::vector<DualGraph> values(std::map<CanonicalCode, DualGraph>& m) {
  std::vector<DualGraph> out;
  for (auto& [code, g] : m) out.push_back(std::move(g));
  return out;
}

}  // namespace detail

/// All results of one neutral move. Type I: for parts with 2^(s+2) and
/// 3 * 2^s leaves, one 2^s-leaf branch of the latter goes to another place
/// on the fixed subtree and the remaining binary tree joins the root of the
/// former. Type II: a root carrying four binary trees hands two of them to a
/// new neighbor.
inline std::vector<DualGraph> neutral_moves(const DualGraph& t) {
  detail::require_optimal(t);
  std::map<CanonicalCode, DualGraph> out;
  const auto split = detail::split_parts(t);
  if (split) {
    for (const auto& big : split->parts) {
      for (const auto& three : split->parts) {
        if (big.type.type != 2 || three.type.type != 3 || big.type.scale != three.type.scale + 1) continue;
        const int ri = big.root;
        const int rj = three.root;
        const int pj = detail::fixed_neighbor(t, rj, split->fixed);
        const int piece = detail::children_away(t, rj, pj).back();
        DualGraph base = t;
        base.remove_one_edge(rj, piece);
        base.remove_one_edge(rj, pj);
        base.add_edge(ri, rj);
        detail::PartSplit trimmed = *split;
        std::erase_if(trimmed.fixed_edges, [&](const auto& e) { return std::minmax(e.first, e.second) == std::minmax(rj, pj); });
        detail::attach_everywhere(base, piece, trimmed, {rj}, out);
      }
    }
  }
  if (const auto whole = perfect_type(t); whole && whole->type == 4) {
    detail::TreeView view(t);
    const int hub = t.vertices()[detail::tree_center(view).first].id;
    const auto kids = t.neighbors(hub);
    DualGraph g = t;
    const int y = g.add_vertex(0);
    for (int k : {kids[2], kids[3]}) {
      g.remove_one_edge(hub, k);
      g.add_edge(y, k);
    }
    g.add_edge(hub, y);
    out.emplace(tree_code(g), g);
  }
  return detail::values(out);
}

/// The reverse of every neutral move that could have produced t.
inline std::vector<DualGraph> inverse_neutral_moves(const DualGraph& t) {
  detail::require_optimal(t);
  std::map<CanonicalCode, DualGraph> out;
  const auto split = detail::split_parts(t);
  if (split && !split->fixed.empty()) {
    for (const auto& three : split->parts) {
      for (const auto& small : split->parts) {
        if (three.type.type != 3 || small.root == three.root) continue;
        const int s = three.type.scale - 1;
        if (s < 0 || small.leaves != (std::uint64_t{1} << s) || !(small.type.type <= 2)) continue;
        const int ri = three.root;
        const int q = small.root;
        const auto ri_parent = split->parts.size() > 1 ? std::optional<int>(detail::fixed_neighbor(t, ri, split->fixed))
                                                       : std::nullopt;
        if (!ri_parent) continue;
        const int c = detail::children_away(t, ri, *ri_parent).back();
        const int pq = detail::fixed_neighbor(t, q, split->fixed);
        DualGraph base = t;
        base.remove_one_edge(q, pq);
        base.remove_one_edge(ri, c);
        base.add_edge(c, q);
        detail::PartSplit trimmed = *split;
        std::erase_if(trimmed.fixed_edges, [&](const auto& e) { return std::minmax(e.first, e.second) == std::minmax(q, pq); });
        detail::attach_everywhere(base, c, trimmed, {q}, out);
      }
    }
  }
  if (const auto whole = perfect_type(t); whole && whole->type == 2 && whole->scale >= 1) {
    detail::TreeView view(t);
    const auto center = detail::tree_center(view);
    if (center.second) {
      const int a = t.vertices()[center.first].id;
      const int b = t.vertices()[*center.second].id;
      DualGraph g = t;
      for (int k : detail::children_away(t, b, a)) {
        g.remove_one_edge(b, k);
        g.add_edge(a, k);
      }
      g.remove_vertex(b);
      out.emplace(tree_code(g), g);
    }
  }
  return detail::values(out);
}

/// Hangs the moved branches at an interior vertex of the fixed subtree from
/// a new vertex, and splits fixed vertices with more than three neighbors,
/// so that every part is rooted at a leaf of the fixed subtree.
inline DualGraph branch_out(const DualGraph& t) {
  DualGraph g = t;
  for (bool changed = true; changed;) {
    changed = false;
    const FixedSubtree fs = fixed_subtree(g);
    const std::set<int> fixed(fs.vertices.begin(), fs.vertices.end());
    for (int u : fs.vertices) {
      std::vector<int> inside;
      std::vector<int> outside;
      for (int w : g.neighbors(u)) (fixed.count(w) ? inside : outside).push_back(w);
      if (inside.size() < 2) continue;
      if (!outside.empty()) {
        detail::regroup(g, u, outside);
        changed = true;
        break;
      }
      if (inside.size() > 3) {
        detail::regroup(g, u, std::vector<int>(inside.begin() + 2, inside.end()));
        changed = true;
        break;
      }
    }
  }
  return g;
}

/// Shortest sequence of neutral moves, valence reductions and branch_out
/// steps from t to a strict optimal tree (t itself first), or nullopt within max_depth.
inline std::optional<std::vector<DualGraph>> path_to_strict(const DualGraph& t, int max_depth = 6) {
  std::map<CanonicalCode, std::optional<CanonicalCode>> parent;
  std::map<CanonicalCode, DualGraph> graph;
  std::deque<std::pair<CanonicalCode, int>> queue;
  const CanonicalCode start = tree_code(t);
  parent.emplace(start, std::nullopt);
  graph.emplace(start, t);
  queue.emplace_back(start, 0);
  while (!queue.empty()) {
    const auto [code, depth] = queue.front();
    queue.pop_front();
    const DualGraph& cur = graph.at(code);
    if (is_strict_optimal(cur)) {
      std::vector<DualGraph> path;
      for (std::optional<CanonicalCode> c = code; c; c = parent.at(*c)) path.push_back(graph.at(*c));
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (depth == max_depth) continue;
    std::vector<DualGraph> next = neutral_moves(cur);
    next.push_back(valence_reduce(cur));
    next.push_back(branch_out(cur));
    for (auto& n : next) {
      const CanonicalCode nc = tree_code(n);
      if (parent.count(nc)) continue;
      parent.emplace(nc, code);
      graph.emplace(nc, std::move(n));
      queue.emplace_back(nc, depth + 1);
    }
  }
  return std::nullopt;
}

enum class EnumerationRegime { kExhaustive, kMoveClosure };

inline std::string to_string(EnumerationRegime r) {
  return r == EnumerationRegime::kExhaustive ? "exhaustive" : "move-closure";
}

struct OptimalEnumeration {
  Genus genus = 0;
  EnumerationRegime regime = EnumerationRegime::kExhaustive;
  std::vector<DualGraph> graphs;  // sorted by canonical code
};

inline constexpr Genus kMaxExhaustiveGenus = 10;

/// Every maximally symmetric tree of genus g up to isomorphism: exhaustive
/// up to `cap`, above it the closure of the constructed optimum under
/// neutral moves and their inverses (complete only heuristically).
inline OptimalEnumeration enumerate_optimal(Genus g, Genus cap = kDefaultOracleCap, unsigned jobs = 1,
                                            std::size_t max_closure = 4096) {
  if (g < 2) throw DomainError("enumerate_optimal needs g >= 2");
  if (cap > kMaxExhaustiveGenus)
    throw CapacityError("exhaustive enumeration is capped at genus " + std::to_string(kMaxExhaustiveGenus));
  OptimalEnumeration res;
  res.genus = g;
  std::map<CanonicalCode, DualGraph> found;
  if (g <= cap) {
    for (auto& t : brute_max(g, jobs, cap).optima) found.emplace(tree_code(t), std::move(t));
  } else {
    res.regime = EnumerationRegime::kMoveClosure;
    const AutOrder best = max_aut_order(g);
    std::deque<CanonicalCode> queue;
    const DualGraph seed = build_optimal(g);
    queue.push_back(tree_code(seed));
    found.emplace(queue.back(), seed);
    while (!queue.empty()) {
      const DualGraph cur = found.at(queue.front());
      queue.pop_front();
      auto next = neutral_moves(cur);
      for (auto& n : inverse_neutral_moves(cur)) next.push_back(std::move(n));
      for (auto& n : next) {
        if (aut_order(n) != best) continue;
        const CanonicalCode c = tree_code(n);
        if (found.emplace(c, n).second) queue.push_back(c);
        if (found.size() > max_closure) throw CapacityError("move closure exceeds " + std::to_string(max_closure) + " trees");
      }
    }
  }
  for (auto& [code, t] : found) res.graphs.push_back(std::move(t));
  return res;
}

}  // namespace stablecurve

#endif  // STABLECURVE_CLASSIFY_HPP
