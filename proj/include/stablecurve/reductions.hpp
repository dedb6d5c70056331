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

#ifndef STABLECURVE_REDUCTIONS_HPP
#define STABLECURVE_REDUCTIONS_HPP

#include <algorithm>
#include <functional>
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
#include "stablecurve/small_graph.hpp"

namespace stablecurve {

struct ReductionStep {
  std::string rule;
  DualGraph before;
  DualGraph after;
};

/// Tree, elliptic leaves, rational interior, valence at most 5, and at most
/// 3 elliptic neighbors at any vertex that also has a rational neighbor
/// (the pure stars with 4 or 5 elliptic leaves are optimal in genus 4, 5).
inline bool is_simple(const DualGraph& g) {
  if (!g.is_tree()) return false;
  for (const auto& v : g.vertices()) {
    if (v.weight > 1) return false;
    if (v.weight == 1) {
      if (g.degree(v.id) > 1) return false;
      continue;
    }
    int elliptic = 0;
    for (int w : g.neighbors(v.id)) elliptic += g.weight(w) == 1;
    const int rational = g.degree(v.id) - elliptic;
    if (g.degree(v.id) > 5 || (rational > 0 && elliptic > 3)) return false;
  }
  return true;
}

/// Each loop becomes an elliptic leaf on its vertex.
inline DualGraph normalize_loops(const DualGraph& input) {
  DualGraph g = input;
  std::vector<int> loop_at;
  for (const auto& e : g.edges())
    if (e.is_loop()) loop_at.push_back(e.u);
  for (int v : loop_at) {
    g.remove_one_edge(v, v);
    g.add_edge(v, g.add_vertex(1));
  }
  return g;
}

/// A component of genus h >= 2 becomes rational with a rational tail
/// carrying h elliptic leaves.
inline DualGraph eliminate_high_genus(const DualGraph& input) {
  DualGraph g = input;
  if (g.loop_count() > 0) throw DomainError("eliminate_high_genus expects a loop-free graph");
  std::vector<std::pair<int, int>> high;
  for (const auto& v : g.vertices())
    if (v.weight >= 2) high.emplace_back(v.id, v.weight);
  for (auto [id, h] : high) {
    g.set_weight(id, 0);
    const int tail = g.add_vertex(0);
    g.add_edge(id, tail);
    for (int i = 0; i < h; ++i) g.add_edge(tail, g.add_vertex(1));
  }
  return g;
}

/// Interior elliptic components become rational with an elliptic leaf.
inline DualGraph elliptic_to_leaf(const DualGraph& input) {
  DualGraph g = input;
  std::vector<int> interior;
  for (const auto& v : g.vertices()) {
    if (v.weight > 1) throw DomainError("elliptic_to_leaf expects weights in {0,1}");
    if (v.weight == 1 && g.degree(v.id) >= 2) interior.push_back(v.id);
  }
  for (int id : interior) {
    g.set_weight(id, 0);
    g.add_edge(id, g.add_vertex(1));
  }
  return g;
}

namespace detail {

inline bool is_theta(const DualGraph& g) {
  if (g.vertex_count() != 2 || g.edge_count() != 3) return false;
  for (const auto& v : g.vertices())
    if (v.weight != 0) return false;
  return g.loop_count() == 0;
}

inline DualGraph genus_two_dumbbell() {
  DualGraph g;
  const int a = g.add_vertex(1);
  g.add_edge(a, g.add_vertex(1));
  return g;
}

}  // namespace detail

/// An n-fold edge u=w becomes u - x - w with a tail on x carrying n-1
/// elliptic leaves. The theta graph goes straight to the dumbbell.
inline DualGraph break_multi_edge(const DualGraph& input) {
  if (input.loop_count() > 0) throw DomainError("break_multi_edge expects a loop-free graph");
  std::map<std::pair<int, int>, int> bundles;
  for (const auto& e : input.edges()) bundles[std::minmax(e.u, e.v)]++;
  bool any = false;
  for (const auto& [ends, n] : bundles) {
    if (n < 2) continue;
    if (input.weight(ends.first) != 0 || input.weight(ends.second) != 0)
      throw DomainError("multi-edge at a component of positive genus");
    any = true;
  }
  if (!any) return input;
  if (detail::is_theta(input)) return detail::genus_two_dumbbell();
  DualGraph g = input;
  for (const auto& [ends, n] : bundles) {
    if (n < 2) continue;
    for (int i = 0; i < n; ++i) g.remove_one_edge(ends.first, ends.second);
    const int x = g.add_vertex(0);
    g.add_edge(ends.first, x);
    g.add_edge(x, ends.second);
    const int tail = g.add_vertex(0);
    g.add_edge(x, tail);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(tail, g.add_vertex(1));
  }
  return stabilize(g);
}

namespace detail {

/// Biconnected blocks of a loop-free graph, as lists of edge positions.
inline std::vector<std::vector<std::size_t>> edge_blocks(const DualGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor, edge)
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto a = g.index_of(g.edges()[i].u);
    const auto b = g.index_of(g.edges()[i].v);
    adj[a].emplace_back(b, i);
    adj[b].emplace_back(a, i);
  }
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> blocks;
  int timer = 0;
  std::function<void(std::size_t, std::optional<std::size_t>)> dfs = [&](std::size_t v, std::optional<std::size_t> via) {
    disc[v] = low[v] = timer++;
    for (auto [w, e] : adj[v]) {
      if (via && e == *via) continue;
      if (disc[w] < 0) {
        stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<std::size_t> block;
          for (;;) {
            const std::size_t top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == e) break;
          }
          blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, std::nullopt);
  return blocks;
}

/// The connected piece containing start once the listed edges are removed.
inline DualGraph component_without(const DualGraph& g, const std::set<std::size_t>& removed, int start) {
  std::set<int> seen{start};
  std::vector<int> todo{start};
  while (!todo.empty()) {
    const int v = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      if (removed.count(i)) continue;
      const Edge& e = g.edges()[i];
      if (e.u != v && e.v != v) continue;
      const int w = e.other(v);
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  DualGraph out;
  for (int v : seen) out.add_vertex_with_id(v, g.weight(v));
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (!removed.count(i) && seen.count(e.u)) out.add_edge(e.u, e.v);
  }
  return out;
}

inline std::optional<CanonicalCode> pendant_code(const DualGraph& pendant, int root) {
  if (pendant.is_tree()) return rooted_tree_code(pendant, root);
  try {
    return general_code(pendant, root);
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Every block that is a cycle of rational components with pairwise
/// isomorphic pendants (so the rotation is a symmetry) becomes a wheel:
/// a rational hub joined to the former cycle vertices, plus an elliptic
/// leaf on the hub.
inline DualGraph break_isolated_cycle(const DualGraph& input) {
  if (input.loop_count() > 0) throw DomainError("break_isolated_cycle expects a loop-free graph");
  std::vector<std::vector<int>> cycles;
  std::set<std::size_t> cycle_edges;
  for (const auto& block : detail::edge_blocks(input)) {
    if (block.size() < 3) continue;
    std::map<int, int> block_degree;
    for (std::size_t e : block) {
      block_degree[input.edges()[e].u]++;
      block_degree[input.edges()[e].v]++;
    }
    if (block_degree.size() != block.size()) continue;
    const bool rational = std::all_of(block_degree.begin(), block_degree.end(),
                                      [&](const auto& kv) { return input.weight(kv.first) == 0; });
    if (!rational) continue;
    const std::set<std::size_t> removed(block.begin(), block.end());
    std::optional<CanonicalCode> shared;
    bool transitive = true;
    for (const auto& [v, deg] : block_degree) {
      const auto code = detail::pendant_code(detail::component_without(input, removed, v), v);
      if (!code || (shared && *code != *shared)) {
        transitive = false;
        break;
      }
      shared = code;
    }
    if (!transitive) continue;
    std::vector<int> members;
    for (const auto& kv : block_degree) members.push_back(kv.first);
    cycles.push_back(members);
    cycle_edges.insert(block.begin(), block.end());
  }
  if (cycles.empty()) return input;
  DualGraph g;
  for (const auto& v : input.vertices()) g.add_vertex_with_id(v.id, v.weight);
  for (std::size_t i = 0; i < input.edge_count(); ++i)
    if (!cycle_edges.count(i)) g.add_edge(input.edges()[i].u, input.edges()[i].v);
  for (const auto& members : cycles) {
    const int hub = g.add_vertex(0);
    for (int v : members) g.add_edge(hub, v);
    g.add_edge(hub, g.add_vertex(1));
  }
  return stabilize(g);
}

/// At the first rational vertex whose stabilizer splits its edges into
/// orbits O_1..O_{k+l} (k of size >= 2, l singletons) with k >= 2 or
/// k + l >= 4, insert a path v_1 .. v_{k+l-1}: O_i hangs at v_i, the last
/// two orbits share the final vertex. Done at every vertex of the orbit of
/// v at once. Returns the input when the symmetry group is out of reach.
inline DualGraph prevalence_split(const DualGraph& input, SmallGraphLimits limits = {}) {
  std::optional<DartGroup> group;
  try {
    group.emplace(input, limits.max_group_order);
  } catch (const CapacityError&) {
    return input;
  }
  const auto& elements = group->elements();
  for (std::size_t v = 0; v < input.vertex_count(); ++v) {
    if (input.vertices()[v].weight != 0) continue;
    std::vector<const DartGroup::Perm*> stab;
    for (const auto& p : elements)
      if (group->image_of_vertex(p, v) == v) stab.push_back(&p);
    // Dart orbits at v under the stabilizer.
    std::vector<std::vector<int>> orbits;
    std::set<int> placed;
    for (int d : group->darts_at(v)) {
      if (placed.count(d)) continue;
      std::set<int> orbit;
      for (const auto* p : stab) orbit.insert((*p)[static_cast<std::size_t>(d)]);
      placed.insert(orbit.begin(), orbit.end());
      orbits.emplace_back(orbit.begin(), orbit.end());
    }
    std::stable_sort(orbits.begin(), orbits.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    const auto k = static_cast<std::size_t>(std::count_if(orbits.begin(), orbits.end(),
                                                          [](const auto& o) { return o.size() >= 2; }));
    if (k < 2 && orbits.size() < 4) continue;
    const std::size_t path_len = orbits.size() - 1;

    // Transport the orbit labelling to every vertex in the orbit of v.
    std::map<std::size_t, const DartGroup::Perm*> carrier;
    for (const auto& p : elements) carrier.emplace(group->image_of_vertex(p, v), &p);
    std::map<int, std::size_t> dart_slot;
    for (const auto& [u, p] : carrier)
      for (std::size_t i = 0; i < orbits.size(); ++i)
        for (int d : orbits[i]) dart_slot[(*p)[static_cast<std::size_t>(d)]] = std::min(i, path_len - 1);

    DualGraph out;
    for (const auto& rec : input.vertices()) out.add_vertex_with_id(rec.id, rec.weight);
    std::map<std::size_t, std::vector<int>> path;
    for (const auto& [u, p] : carrier) {
      std::vector<int> ids{input.vertices()[u].id};
      while (ids.size() < path_len) {
        ids.push_back(out.add_vertex(0));
        out.add_edge(ids[ids.size() - 2], ids.back());
      }
      path[u] = ids;
    }
    auto endpoint = [&](int dart) {
      const std::size_t u = group->vertex_of(dart);
      auto it = dart_slot.find(dart);
      if (it == dart_slot.end()) return input.vertices()[u].id;
      return path.at(u)[it->second];
    };
    for (std::size_t i = 0; i < input.edge_count(); ++i)
      out.add_edge(endpoint(static_cast<int>(2 * i)), endpoint(static_cast<int>(2 * i + 1)));
    DualGraph result = stabilize(out);
    if (!(result == input)) return result;
  }
  return input;
}

namespace detail {

inline bool allowed_valence(int rational, int elliptic) {
  static const std::set<std::pair<int, int>> kAllowed{{0, 3}, {0, 4}, {0, 5}, {3, 0}, {4, 0},
                                                      {5, 0}, {1, 2}, {1, 3}, {2, 1}, {3, 1}};
  return rational + elliptic < 3 || kAllowed.count({rational, elliptic}) > 0;
}

/// Moves the edges v-w (w in branches) onto a fresh vertex hung from v.
inline void regroup(DualGraph& g, int v, const std::vector<int>& branches) {
  const int x = g.add_vertex(0);
  for (int w : branches) {
    g.remove_one_edge(v, w);
    g.add_edge(x, w);
  }
  g.add_edge(v, x);
}

/// Pairs up members of one class; an odd member stays at v.
inline void pair_up(DualGraph& g, int v, const std::vector<int>& members) {
  for (std::size_t i = 0; i + 1 < members.size(); i += 2) regroup(g, v, {members[i], members[i + 1]});
}

/// One rewrite at v; false when v is already fine.
inline bool split_vertex(DualGraph& g, int v) {
  std::vector<int> rational;
  std::vector<int> elliptic;
  for (int w : g.neighbors(v)) (g.weight(w) == 1 ? elliptic : rational).push_back(w);
  const int r = static_cast<int>(rational.size());
  const int e = static_cast<int>(elliptic.size());
  if (allowed_valence(r, e)) return false;
  if (r >= 2 && e >= 2) {
    regroup(g, v, elliptic);
    return true;
  }
  if (e >= 4) {
    pair_up(g, v, elliptic);
    return true;
  }
  // Branch classes, largest first.
  const TreeView view(g);
  const std::size_t iv = g.index_of(v);
  std::map<std::string, std::vector<int>> by_code;
  for (int w : g.neighbors(v)) by_code[rooted_code(view, g.index_of(w), iv)].push_back(w);
  std::vector<std::vector<int>> classes;
  for (auto& [code, members] : by_code) classes.push_back(members);
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  if (classes.size() <= 2) {
    pair_up(g, v, classes.front());
    return true;
  }
  // Chain v = u_1 - u_2 - ... - u_{c-1}; u_i keeps class i, the last link
  // takes the final two classes.
  int link = v;
  for (std::size_t i = 1; i < classes.size(); ++i) {
    if (i + 1 == classes.size()) break;
    std::vector<int> moved;
    for (std::size_t j = i; j < classes.size(); ++j) moved.insert(moved.end(), classes[j].begin(), classes[j].end());
    regroup(g, link, moved);
    link = g.vertices().back().id;
  }
  return true;
}

}  // namespace detail

/// Splits rational vertices until every (rational, elliptic) valence pair is
/// one of (0,3), (0,4), (0,5), (3,0), (4,0), (5,0), (1,2), (1,3), (2,1),
/// (3,1). Isomorphic branches are paired rather than chained.
inline DualGraph valence_reduce(const DualGraph& input) {
  if (!input.is_tree()) throw DomainError("valence_reduce expects a tree");
  for (const auto& v : input.vertices())
    if (v.weight > 1 || (v.weight == 1 && input.degree(v.id) > 1))
      throw DomainError("valence_reduce expects a rational tree with elliptic leaves");
  DualGraph g = input;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.vertex_count() && !changed; ++i) {
      const auto& rec = g.vertices()[i];
      if (rec.weight == 0) changed = detail::split_vertex(g, rec.id);
    }
  }
  if (g == input) return input;
  return stabilize(g);
}

struct ReductionResult {
  DualGraph graph;
  std::vector<ReductionStep> steps;
};

/// Full pipeline from a stable graph to a simple tree of the same genus.
inline ReductionResult reduce(const DualGraph& input, SmallGraphLimits limits = {}) {
  if (!input.is_connected() || !is_stable(input)) throw DomainError("reduce expects a stable graph of genus >= 2");
  const int g0 = genus(input);
  ReductionResult res{input, {}};
  auto record = [&](const std::string& rule, DualGraph next) {
    if (next == res.graph) return false;
    if (genus(next) != g0) throw std::logic_error(rule + " changed the genus");
    res.steps.push_back({rule, res.graph, next});
    res.graph = std::move(next);
    return true;
  };
  auto run = [&](const std::string& rule, const std::function<DualGraph(const DualGraph&)>& fn) {
    const bool changed = record(rule, fn(res.graph));
    if (!is_stable(res.graph)) record("stabilize", stabilize(res.graph));
    return changed;
  };
  run("normalize_loops", normalize_loops);
  run("eliminate_high_genus", eliminate_high_genus);
  run("elliptic_to_leaf", elliptic_to_leaf);
  run("break_multi_edge", break_multi_edge);
  for (int round = 0; round < 16 && !res.graph.is_tree(); ++round) {
    const bool broke = run("break_isolated_cycle", break_isolated_cycle);
    if (res.graph.is_tree()) break;
    const bool split = run("prevalence_split", [&](const DualGraph& g) { return prevalence_split(g, limits); });
    if (!broke && !split) break;
  }
  if (!res.graph.is_tree()) record("tree_fallback", build_optimal(static_cast<Genus>(g0)));
  run("valence_reduce", valence_reduce);
  record("stabilize", stabilize(res.graph));
  return res;
}

}  // namespace stablecurve

#endif  // STABLECURVE_REDUCTIONS_HPP
