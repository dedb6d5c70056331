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

#ifndef STABLECURVE_SMALL_GRAPH_HPP
#define STABLECURVE_SMALL_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "stablecurve/aut_order.hpp"
#include "stablecurve/canonical.hpp"
#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"
#include "stablecurve/sym_model.hpp"

namespace stablecurve {

/// Caps for the general-graph symmetry search.
struct SmallGraphLimits {
  std::size_t max_vertices = kDefaultGeneralCap;
  std::size_t max_group_order = 20000;
};

/// Automorphisms of a weighted multigraph, acting on darts (half-edges).
/// Edge i owns darts 2i (at edges()[i].u) and 2i+1 (at edges()[i].v), so
/// swapping parallel edges and reversing loops are separate elements.
class DartGroup {
 public:
  using Perm = std::vector<int>;

  DartGroup(const DualGraph& g, std::size_t max_order) : g_(&g) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    dart_vertex_.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      dart_vertex_[2 * i] = g.index_of(g.edges()[i].u);
      dart_vertex_[2 * i + 1] = g.index_of(g.edges()[i].v);
    }
    darts_at_.resize(n);
    for (std::size_t d = 0; d < dart_vertex_.size(); ++d) darts_at_[dart_vertex_[d]].push_back(static_cast<int>(d));
    std::vector<int> phi(n, -1);
    std::vector<int> phi_inv(n, -1);
    std::vector<bool> edge_used(m, false);
    Perm image(2 * m, -1);
    enumerate(0, phi, phi_inv, edge_used, image, max_order);
  }

  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t dart_count() const { return dart_vertex_.size(); }
  std::size_t vertex_of(int dart) const { return dart_vertex_[static_cast<std::size_t>(dart)]; }
  const std::vector<int>& darts_at(std::size_t v) const { return darts_at_[v]; }

  /// Vertex permutation induced by an element (index based).
  std::size_t image_of_vertex(const Perm& p, std::size_t v) const {
    if (darts_at_[v].empty()) return v;
    return dart_vertex_[static_cast<std::size_t>(p[static_cast<std::size_t>(darts_at_[v][0])])];
  }

 private:
  bool bind(std::size_t a, std::size_t b, std::vector<int>& phi, std::vector<int>& phi_inv,
            std::vector<std::size_t>& bound) const {
    if (phi[a] >= 0) return phi[a] == static_cast<int>(b);
    if (phi_inv[b] >= 0) return false;
    const auto& va = g_->vertices()[a];
    const auto& vb = g_->vertices()[b];
    if (va.weight != vb.weight || darts_at_[a].size() != darts_at_[b].size()) return false;
    phi[a] = static_cast<int>(b);
    phi_inv[b] = static_cast<int>(a);
    bound.push_back(a);
    return true;
  }

  void enumerate(std::size_t edge, std::vector<int>& phi, std::vector<int>& phi_inv,
                 std::vector<bool>& edge_used, Perm& image, std::size_t max_order) {
    const std::size_t m = edge_used.size();
    if (edge == m) {
      if (elements_.size() >= max_order)
        throw CapacityError("automorphism group exceeds " + std::to_string(max_order) + " elements");
      elements_.push_back(image);
      return;
    }
    const std::size_t a = dart_vertex_[2 * edge];
    const std::size_t b = dart_vertex_[2 * edge + 1];
    for (std::size_t j = 0; j < m; ++j) {
      if (edge_used[j]) continue;
      for (int orient = 0; orient < 2; ++orient) {
        const std::size_t da = 2 * j + static_cast<std::size_t>(orient);
        const std::size_t db = 2 * j + 1 - static_cast<std::size_t>(orient);
        // A loop maps to a loop; reversing it is the second orientation.
        std::vector<std::size_t> bound;
        const bool ok = bind(a, dart_vertex_[da], phi, phi_inv, bound) &&
                        bind(b, dart_vertex_[db], phi, phi_inv, bound);
        if (ok) {
          edge_used[j] = true;
          image[2 * edge] = static_cast<int>(da);
          image[2 * edge + 1] = static_cast<int>(db);
          enumerate(edge + 1, phi, phi_inv, edge_used, image, max_order);
          edge_used[j] = false;
        }
        for (std::size_t x : bound) {
          phi_inv[static_cast<std::size_t>(phi[x])] = -1;
          phi[x] = -1;
        }
      }
    }
  }

  const DualGraph* g_;
  std::vector<std::size_t> dart_vertex_;
  std::vector<std::vector<int>> darts_at_;
  std::vector<Perm> elements_;
};

namespace detail {

/// Checks that a permutation group acting on a set of darts is one of the
/// realizable local actions: trivial, cyclic and regular on one orbit with
/// at most two further fixed darts, or dihedral on one orbit of size >= 3
/// with nothing else.
inline bool realizable_local_action(const std::vector<std::vector<int>>& group, std::size_t points) {
  if (group.size() <= 1) return true;
  // Orbits on the local point set (points are 0..points-1).
  std::vector<int> orbit(points, -1);
  int orbits = 0;
  for (std::size_t p = 0; p < points; ++p) {
    if (orbit[p] >= 0) continue;
    std::vector<std::size_t> stack{p};
    orbit[p] = orbits;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (const auto& g : group) {
        const auto y = static_cast<std::size_t>(g[x]);
        if (orbit[y] < 0) {
          orbit[y] = orbits;
          stack.push_back(y);
        }
      }
    }
    ++orbits;
  }
  std::vector<std::size_t> orbit_size(static_cast<std::size_t>(orbits), 0);
  for (int o : orbit) ++orbit_size[static_cast<std::size_t>(o)];
  std::size_t moving = 0;
  std::size_t m = 0;
  std::size_t fixed = 0;
  for (std::size_t s : orbit_size) {
    if (s > 1) {
      ++moving;
      m = s;
    } else {
      ++fixed;
    }
  }
  if (moving != 1) return false;
  // Element of maximal cycle length m on the moving orbit.
  auto is_full_cycle = [&](const std::vector<int>& g) {
    std::size_t start = 0;
    while (orbit_size[static_cast<std::size_t>(orbit[start])] == 1) ++start;
    std::size_t len = 0;
    std::size_t x = start;
    do {
      x = static_cast<std::size_t>(g[x]);
      ++len;
    } while (x != start);
    return len == m;
  };
  if (group.size() == m) {
    if (fixed > 2) return false;
    return std::any_of(group.begin(), group.end(), is_full_cycle);
  }
  if (group.size() == 2 * m && m >= 3 && fixed == 0) {
    auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
      std::vector<int> r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
      return r;
    };
    auto inverse = [](const std::vector<int>& a) {
      std::vector<int> r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
      return r;
    };
    for (const auto& c : group) {
      if (!is_full_cycle(c)) continue;
      // Rotation subgroup generated by c.
      std::set<std::vector<int>> rotations;
      std::vector<int> power = c;
      for (std::size_t k = 0; k < m; ++k) {
        rotations.insert(power);
        power = compose(c, power);
      }
      const auto c_inv = inverse(c);
      for (const auto& s : group) {
        if (rotations.count(s)) continue;
        if (compose(compose(s, c), inverse(s)) == c_inv) return true;
        break;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Maximal order of a subgroup of the dart automorphism group whose
/// stabilizer at every rational vertex acts realizably on the incident darts.
class SmallGraphSymmetry {
 public:
  SmallGraphSymmetry(const DualGraph& g, SmallGraphLimits limits = {}) : graph_(g) {
    if (!g.is_connected()) throw StructuralError("graph is disconnected");
    if (g.vertex_count() > limits.max_vertices)
      throw CapacityError("general symmetry search is capped at " + std::to_string(limits.max_vertices) +
                          " vertices");
    for (const auto& v : g.vertices()) {
      if (v.weight > 1) throw DomainError("vertex " + std::to_string(v.id) + " has weight > 1");
      if (v.weight == 1 && g.degree(v.id) > 1)
        throw DomainError("elliptic vertex " + std::to_string(v.id) + " is not a leaf");
    }
    DartGroup group(g, limits.max_group_order);
    elements_ = group.elements();
    group_ = &group;
    search();
    group_ = nullptr;
  }

  std::size_t order() const { return best_; }
  std::size_t full_group_order() const { return elements_.size(); }

 private:
  using Perm = DartGroup::Perm;

  // Local test for a single element at every vertex it fixes.
  bool good_element(const Perm& p) const {
    const std::size_t n = graph_.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
      if (graph_.vertices()[v].weight != 0 || group_->image_of_vertex(p, v) != v) continue;
      const auto& darts = group_->darts_at(v);
      std::size_t fixed = 0;
      std::size_t cycle_len = 0;
      bool uniform = true;
      std::set<int> seen;
      for (int d : darts) {
        if (seen.count(d)) continue;
        std::size_t len = 0;
        int x = d;
        do {
          seen.insert(x);
          x = p[static_cast<std::size_t>(x)];
          ++len;
        } while (x != d);
        if (len == 1) {
          ++fixed;
        } else if (cycle_len == 0) {
          cycle_len = len;
        } else if (cycle_len != len) {
          uniform = false;
        }
      }
      if (cycle_len != 0 && (!uniform || fixed > 2)) return false;
    }
    return true;
  }

  bool realizable(const std::vector<std::size_t>& subgroup) const {
    const std::size_t n = graph_.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
      if (graph_.vertices()[v].weight != 0) continue;
      const auto& darts = group_->darts_at(v);
      std::map<int, int> local_index;
      for (std::size_t i = 0; i < darts.size(); ++i) local_index[darts[i]] = static_cast<int>(i);
      std::set<std::vector<int>> induced;
      for (std::size_t id : subgroup) {
        const Perm& p = elements_[id];
        if (group_->image_of_vertex(p, v) != v) continue;
        std::vector<int> local(darts.size());
        for (std::size_t i = 0; i < darts.size(); ++i)
          local[i] = local_index.at(p[static_cast<std::size_t>(darts[i])]);
        induced.insert(std::move(local));
      }
      if (!detail::realizable_local_action({induced.begin(), induced.end()}, darts.size())) return false;
    }
    return true;
  }

  void search() {
    const std::size_t count = elements_.size();
    std::map<Perm, std::size_t> index;
    for (std::size_t i = 0; i < count; ++i) index.emplace(elements_[i], i);
    std::vector<bool> good(count);
    for (std::size_t i = 0; i < count; ++i) good[i] = good_element(elements_[i]);
    auto compose = [&](std::size_t a, std::size_t b) {
      const Perm& pa = elements_[a];
      const Perm& pb = elements_[b];
      Perm r(pa.size());
      for (std::size_t i = 0; i < pa.size(); ++i) r[i] = pa[static_cast<std::size_t>(pb[i])];
      return index.at(r);
    };
    constexpr std::size_t kTableLimit = 2048;
    std::vector<std::uint32_t> table;
    if (count <= kTableLimit) {
      table.resize(count * count);
      for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b) table[a * count + b] = static_cast<std::uint32_t>(compose(a, b));
    }
    auto multiply = [&](std::size_t a, std::size_t b) -> std::size_t {
      return table.empty() ? compose(a, b) : table[a * count + b];
    };
    std::size_t identity = 0;
    for (std::size_t i = 0; i < count; ++i) {
      bool id = true;
      for (std::size_t d = 0; d < elements_[i].size() && id; ++d) id = elements_[i][d] == static_cast<int>(d);
      if (id) identity = i;
    }

    struct Hash {
      std::size_t operator()(const std::vector<bool>& b) const { return std::hash<std::vector<bool>>{}(b); }
    };
    std::unordered_set<std::vector<bool>, Hash> visited;

    // Closure of (members, generators) with one more generator; nullopt when
    // the closure leaves the set of good elements.
    auto closure = [&](const std::vector<std::size_t>& gens) -> std::optional<std::vector<bool>> {
      std::vector<bool> in(count, false);
      std::vector<std::size_t> list{identity};
      in[identity] = true;
      for (std::size_t head = 0; head < list.size(); ++head) {
        for (std::size_t gen : gens) {
          const std::size_t x = multiply(gen, list[head]);
          if (!in[x]) {
            if (!good[x]) return std::nullopt;
            in[x] = true;
            list.push_back(x);
          }
        }
      }
      return in;
    };

    std::function<void(const std::vector<bool>&, const std::vector<std::size_t>&)> dfs =
        [&](const std::vector<bool>& members, const std::vector<std::size_t>& gens) {
          std::vector<std::size_t> list;
          for (std::size_t i = 0; i < count; ++i)
            if (members[i]) list.push_back(i);
          if (list.size() > best_ && realizable(list)) best_ = list.size();
          for (std::size_t g = 0; g < count; ++g) {
            if (members[g] || !good[g]) continue;
            std::vector<std::size_t> next = gens;
            next.push_back(g);
            auto grown = closure(next);
            if (!grown || visited.count(*grown)) continue;
            visited.insert(*grown);
            dfs(*grown, next);
          }
        };
    std::vector<bool> trivial(count, false);
    trivial[identity] = true;
    visited.insert(trivial);
    best_ = 1;
    dfs(trivial, {});
  }

  DualGraph graph_;
  std::vector<Perm> elements_;
  const DartGroup* group_ = nullptr;
  std::size_t best_ = 1;
};

/// GAut order of a small general graph under the same local model as trees.
inline AutOrder gaut_small_graph(const DualGraph& g, SmallGraphLimits limits = {}) {
  return AutOrder(SmallGraphSymmetry(g, limits).order());
}

/// Full order: 6 per elliptic tail times the geometric graph symmetries.
/// Trees use the recursive evaluation; other graphs the subgroup search.
inline AutOrder aut_order(const DualGraph& g, SmallGraphLimits limits = {}) {
  const AutOrder gaut = g.is_tree() ? gaut_tree(g) : gaut_small_graph(g, limits);
  return pow_order(6, static_cast<std::uint64_t>(elliptic_leaf_count(g))) * gaut;
}

}  // namespace stablecurve

#endif  // STABLECURVE_SMALL_GRAPH_HPP
