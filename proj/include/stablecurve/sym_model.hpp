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

#ifndef STABLECURVE_SYM_MODEL_HPP
#define STABLECURVE_SYM_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablecurve/aut_order.hpp"
#include "stablecurve/canonical.hpp"
#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"

namespace stablecurve {

/// Orbit data at one rational vertex: sizes of the classes of isomorphic
/// branches, and whether one further direction (toward the root) is held
/// fixed.
struct LocalStructure {
  std::vector<int> class_multiplicities;
  int pinned = 0;
};

/// The symmetry realized at one vertex: which class turns (if any), and
/// whether the turn is dihedral.
struct LocalChoice {
  int order = 1;
  std::optional<std::size_t> rotating_class;
  bool dihedral = false;
};

/// Best realizable symmetry of the attachment points on P^1. A rotation of
/// order m moves one class of m isomorphic branches and may leave at most
/// 2 - pinned further points in place (0 and infinity); dihedral order 2m
/// needs the class to be alone and unpinned. Ties go to the earliest class.
inline LocalChoice local_choice(const LocalStructure& ls) {
  const int total = std::accumulate(ls.class_multiplicities.begin(), ls.class_multiplicities.end(), 0);
  const int free_points = 2 - ls.pinned;
  LocalChoice best;
  for (std::size_t i = 0; i < ls.class_multiplicities.size(); ++i) {
    const int m = ls.class_multiplicities[i];
    const int rest = total - m;
    if (m < 2 || rest > free_points) continue;
    LocalChoice c{m, i, false};
    if (ls.pinned == 0 && rest == 0 && m >= 3) c = {2 * m, i, true};
    if (c.order > best.order) best = c;
  }
  return best;
}

inline AutOrder local_order(const LocalStructure& ls) { return local_choice(ls).order; }

/// Partition of vertices (by id) and edges into orbits of the geometric
/// automorphism group. Orbits and their members are sorted.
struct OrbitPartition {
  std::vector<std::vector<int>> vertex_orbits;
  std::vector<std::vector<Edge>> edge_orbits;

  std::size_t vertex_orbit_size(int id) const {
    for (const auto& o : vertex_orbits)
      if (std::find(o.begin(), o.end(), id) != o.end()) return o.size();
    throw StructuralError("vertex " + std::to_string(id) + " not in partition");
  }
};

/// Vertices fixed by every geometric automorphism. When the tree is centered
/// on an edge, `center_edge` names it; it is invariant even if its endpoints
/// are swapped.
struct FixedSubtree {
  std::vector<int> vertices;
  std::optional<std::pair<int, int>> center_edge;
};

/// Record of one realized local symmetry, for diagnostics and tests.
struct LocalRecord {
  int vertex = 0;
  LocalStructure structure;
  LocalChoice choice;
};

namespace detail {

inline void require_model_tree(const DualGraph& g) {
  if (!g.is_tree()) throw DomainError("expected a tree");
  for (const auto& v : g.vertices()) {
    if (v.weight > 1)
      throw DomainError("vertex " + std::to_string(v.id) + " has weight " +
                        std::to_string(v.weight) + "; reduce high genus components first");
    if (v.weight == 1 && g.degree(v.id) > 1)
      throw DomainError("elliptic vertex " + std::to_string(v.id) +
                        " is not a leaf; its marked-point symmetries are not modeled");
  }
}

/// Bottom-up evaluation of the recursive order over a tree.
class TreeSymmetryEngine {
 public:
  explicit TreeSymmetryEngine(const DualGraph& g) : view_(g) {}

  struct Node {
    std::string code;
    AutOrder order;
    // Children grouped into isomorphism classes, classes sorted by code.
    std::vector<std::vector<std::size_t>> classes;
    LocalStructure structure;
    LocalChoice choice;
  };

  const Node& node(std::size_t v, std::optional<std::size_t> parent, int pinned) {
    const Key key{v, parent ? *parent + 1 : 0, pinned};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Node n;
    std::map<std::string, std::vector<std::size_t>> by_code;
    AutOrder product = 1;
    std::vector<std::string> child_codes;
    for (std::size_t c : view_.children(v, parent)) {
      const Node& child = node(c, v, 1);
      by_code[child.code].push_back(c);
      child_codes.push_back(child.code);
      product *= child.order;
    }
    std::sort(child_codes.begin(), child_codes.end());
    n.code = "(" + std::to_string(view_.weight(v));
    for (const auto& s : child_codes) n.code += s;
    n.code += ")";
    for (auto& [code, members] : by_code) {
      n.classes.push_back(members);
      n.structure.class_multiplicities.push_back(static_cast<int>(members.size()));
    }
    n.structure.pinned = pinned;
    n.choice = local_choice(n.structure);
    n.order = product * n.choice.order;
    return memo_.emplace(key, std::move(n)).first->second;
  }

  const TreeView& view() const { return view_; }

 private:
  struct Key {
    std::size_t v;
    std::size_t parent_plus_one;
    int pinned;
    auto operator<=>(const Key&) const = default;
  };
  TreeView view_;
  std::map<Key, Node> memo_;
};

}  // namespace detail

/// Everything the symmetry model knows about one tree: the order of GAut,
/// its orbits, and the local symmetry used at each vertex.
class TreeSymmetry {
 public:
  explicit TreeSymmetry(const DualGraph& tree) : tree_(tree) {
    detail::require_model_tree(tree_);
    detail::TreeSymmetryEngine engine(tree_);
    const auto& view = engine.view();
    const auto center = detail::tree_center(view);

    // Each work item is a set of mutually equivalent (vertex, parent) pairs.
    using Member = std::pair<std::size_t, std::optional<std::size_t>>;
    struct Item {
      std::vector<Member> members;
      int pinned;
    };
    std::vector<Item> work;
    if (!center.second) {
      const auto& root = engine.node(center.first, std::nullopt, 0);
      order_ = root.order;
      work.push_back({{{center.first, std::nullopt}}, 0});
    } else {
      const std::size_t a = center.first;
      const std::size_t b = *center.second;
      center_edge_ = std::pair(view.id(a), view.id(b));
      const auto& na = engine.node(a, b, 1);
      const auto& nb = engine.node(b, a, 1);
      order_ = na.order * nb.order;
      const Edge e{view.id(a), view.id(b)};
      if (na.code == nb.code) {
        order_ *= 2;
        work.push_back({{{a, b}, {b, a}}, 1});
      } else {
        work.push_back({{{a, b}}, 1});
        work.push_back({{{b, a}}, 1});
      }
      edge_orbits_.push_back({e});
    }

    for (std::size_t head = 0; head < work.size(); ++head) {
      const Item item = work[head];
      std::vector<int> orbit;
      for (const auto& [v, p] : item.members) orbit.push_back(view.id(v));
      vertex_orbits_.push_back(orbit);
      const auto& rep = engine.node(item.members[0].first, item.members[0].second, item.pinned);
      local_.push_back({view.id(item.members[0].first), rep.structure, rep.choice});
      for (std::size_t cls = 0; cls < rep.classes.size(); ++cls) {
        // Class `cls` of every member, matched by code.
        std::vector<std::vector<std::size_t>> per_member;
        for (const auto& [v, p] : item.members) {
          const auto& n = engine.node(v, p, item.pinned);
          per_member.push_back(n.classes[cls]);
        }
        auto push = [&](std::vector<Member> members) {
          std::vector<Edge> edges;
          for (const auto& [c, parent] : members) edges.push_back({view.id(*parent), view.id(c)});
          edge_orbits_.push_back(std::move(edges));
          work.push_back({std::move(members), 1});
        };
        if (rep.choice.rotating_class == cls) {
          std::vector<Member> members;
          for (std::size_t m = 0; m < item.members.size(); ++m)
            for (std::size_t c : per_member[m]) members.emplace_back(c, item.members[m].first);
          push(std::move(members));
        } else {
          for (std::size_t j = 0; j < per_member[0].size(); ++j) {
            std::vector<Member> members;
            for (std::size_t m = 0; m < item.members.size(); ++m)
              members.emplace_back(per_member[m][j], item.members[m].first);
            push(std::move(members));
          }
        }
      }
    }
    for (auto& o : vertex_orbits_) std::sort(o.begin(), o.end());
    std::sort(vertex_orbits_.begin(), vertex_orbits_.end());
    for (auto& o : edge_orbits_) {
      for (auto& e : o)
        if (e.u > e.v) std::swap(e.u, e.v);
      std::sort(o.begin(), o.end(), [](const Edge& x, const Edge& y) {
        return std::pair(x.u, x.v) < std::pair(y.u, y.v);
      });
    }
    std::sort(edge_orbits_.begin(), edge_orbits_.end(), [](const auto& x, const auto& y) {
      return std::pair(x[0].u, x[0].v) < std::pair(y[0].u, y[0].v);
    });
  }

  const AutOrder& order() const { return order_; }

  OrbitPartition orbits() const { return {vertex_orbits_, edge_orbits_}; }

  FixedSubtree fixed_subtree() const {
    FixedSubtree f;
    for (const auto& o : vertex_orbits_)
      if (o.size() == 1) f.vertices.push_back(o[0]);
    std::sort(f.vertices.begin(), f.vertices.end());
    f.center_edge = center_edge_;
    return f;
  }

  /// One record per vertex orbit (the representative's local symmetry).
  const std::vector<LocalRecord>& local_records() const { return local_; }

  std::optional<std::pair<int, int>> center_edge() const { return center_edge_; }

 private:
  DualGraph tree_;
  AutOrder order_ = 1;
  std::optional<std::pair<int, int>> center_edge_;
  std::vector<std::vector<int>> vertex_orbits_;
  std::vector<std::vector<Edge>> edge_orbits_;
  std::vector<LocalRecord> local_;
};

/// GAut of the subtree hanging at `root`, with the root direction pinned.
/// For a whole tree the root is treated as if attached to something fixed.
inline AutOrder gaut_rooted(const DualGraph& tree, int root) {
  detail::require_model_tree(tree);
  detail::TreeSymmetryEngine engine(tree);
  return engine.node(tree.index_of(root), std::nullopt, 1).order;
}

/// GAut order of a tree, centered at the middle of its diameter.
inline AutOrder gaut_tree(const DualGraph& tree) { return TreeSymmetry(tree).order(); }

inline OrbitPartition geometric_orbits(const DualGraph& tree) { return TreeSymmetry(tree).orbits(); }

inline FixedSubtree fixed_subtree(const DualGraph& tree) { return TreeSymmetry(tree).fixed_subtree(); }

inline int elliptic_leaf_count(const DualGraph& g) {
  return static_cast<int>(
      std::count_if(g.vertices().begin(), g.vertices().end(), [](const VertexRecord& v) { return v.weight == 1; }));
}

}  // namespace stablecurve

#endif  // STABLECURVE_SYM_MODEL_HPP
