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

#ifndef STABLECURVE_DUAL_GRAPH_HPP
#define STABLECURVE_DUAL_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablecurve/errors.hpp"

namespace stablecurve {

/// One irreducible component. Weight is the geometric genus: 0 is a
/// rational component, 1 stands for the j = 0 elliptic curve E.
struct VertexRecord {
  int id = 0;
  int weight = 0;
  friend bool operator==(const VertexRecord&, const VertexRecord&) = default;
};

/// One node of the curve. Loops are edges with u == v; parallel edges are
/// repeated entries.
struct Edge {
  int u = 0;
  int v = 0;
  bool is_loop() const { return u == v; }
  int other(int x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Genus-weighted multigraph with loops: the dual graph of a nodal curve.
///
/// The class checks local well-formedness (unique ids, nonnegative weights,
/// known endpoints). Connectivity is a precondition of most operations and
/// is enforced by the parser, not by construction, so that rewrite passes can
/// build intermediate graphs freely.
class DualGraph {
 public:
  DualGraph() = default;

  DualGraph(std::vector<VertexRecord> vertices, std::vector<Edge> edges) {
    for (const auto& v : vertices) add_vertex_with_id(v.id, v.weight);
    for (const auto& e : edges) add_edge(e.u, e.v);
  }

  const std::vector<VertexRecord>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(int id) const { return index_.count(id) != 0; }

  std::size_t index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw StructuralError("unknown vertex id " + std::to_string(id));
    return it->second;
  }

  int weight(int id) const { return vertices_[index_of(id)].weight; }

  void set_weight(int id, int weight) {
    if (weight < 0) throw StructuralError("negative weight");
    vertices_[index_of(id)].weight = weight;
  }

  int next_id() const {
    int next = 0;
    for (const auto& v : vertices_) next = std::max(next, v.id + 1);
    return next;
  }

  int add_vertex(int weight) {
    const int id = next_id();
    add_vertex_with_id(id, weight);
    return id;
  }

  void add_vertex_with_id(int id, int weight) {
    if (weight < 0)
      throw StructuralError("vertex " + std::to_string(id) +
                            " has negative weight");
    if (has_vertex(id))
      throw StructuralError("duplicate vertex id " + std::to_string(id));
    index_.emplace(id, vertices_.size());
    vertices_.push_back({id, weight});
  }

  void add_edge(int u, int v) {
    if (!has_vertex(u) || !has_vertex(v))
      throw StructuralError("edge {" + std::to_string(u) + "," +
                            std::to_string(v) + "} has an unknown endpoint");
    edges_.push_back({u, v});
  }

  void remove_edge_at(std::size_t position) {
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(position));
  }

  /// Removes one edge joining u and v (in either orientation), if present.
  bool remove_one_edge(int u, int v) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
        remove_edge_at(i);
        return true;
      }
    }
    return false;
  }

  /// Removes a vertex and every incident edge.
  void remove_vertex(int id) {
    index_of(id);
    std::erase_if(edges_, [id](const Edge& e) { return e.u == id || e.v == id; });
    std::erase_if(vertices_, [id](const VertexRecord& v) { return v.id == id; });
    reindex();
  }

  /// Edge-end count; a loop contributes two.
  int degree(int id) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.u == id) + (e.v == id);
    return d;
  }

  /// Neighbor ids, one entry per edge-end (loops list the vertex twice).
  std::vector<int> neighbors(int id) const {
    std::vector<int> out;
    for (const auto& e : edges_) {
      if (e.u == id) out.push_back(e.v);
      if (e.v == id) out.push_back(e.u);
    }
    return out;
  }

  std::size_t loop_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
  }

  bool is_connected() const {
    if (vertices_.empty()) return false;
    std::vector<std::vector<std::size_t>> adj(vertices_.size());
    for (const auto& e : edges_) {
      adj[index_of(e.u)].push_back(index_of(e.v));
      adj[index_of(e.v)].push_back(index_of(e.u));
    }
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          ++reached;
          stack.push_back(y);
        }
      }
    }
    return reached == vertices_.size();
  }

  bool is_tree() const {
    return is_connected() && loop_count() == 0 &&
           edges_.size() + 1 == vertices_.size();
  }

  /// Same vertex set and same edge multiset, ignoring listing order.
  friend bool operator==(const DualGraph& a, const DualGraph& b) {
    auto norm_v = [](std::vector<VertexRecord> v) {
      std::sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.id < y.id; });
      return v;
    };
    auto norm_e = [](std::vector<Edge> e) {
      for (auto& x : e)
        if (x.u > x.v) std::swap(x.u, x.v);
      std::sort(e.begin(), e.end(), [](auto& x, auto& y) {
        return std::pair(x.u, x.v) < std::pair(y.u, y.v);
      });
      return e;
    };
    return norm_v(a.vertices_) == norm_v(b.vertices_) &&
           norm_e(a.edges_) == norm_e(b.edges_);
  }

 private:
  void reindex() {
    index_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i].id, i);
  }

  std::vector<VertexRecord> vertices_;
  std::vector<Edge> edges_;
  std::map<int, std::size_t> index_;
};

/// Arithmetic genus: sum of weights plus the first Betti number.
inline int genus(const DualGraph& g) {
  if (!g.is_connected()) throw StructuralError("genus of a disconnected graph");
  int total = 0;
  for (const auto& v : g.vertices()) total += v.weight;
  return total + static_cast<int>(g.edge_count()) -
         static_cast<int>(g.vertex_count()) + 1;
}

/// Rational components need three special points, elliptic ones one, and
/// the total genus must be at least two.
inline bool is_stable(const DualGraph& g) {
  if (!g.is_connected()) return false;
  for (const auto& v : g.vertices()) {
    const int d = g.degree(v.id);
    if (v.weight == 0 && d < 3) return false;
    if (v.weight == 1 && d < 1) return false;
  }
  return genus(g) >= 2;
}

/// Contracts unstable rational components until none remain: rational
/// leaves are deleted and rational bridges of valence two are replaced by a
/// single edge (a loop if both sides meet the same vertex).
inline DualGraph stabilize(const DualGraph& input) {
  if (genus(input) < 2) throw DomainError("stabilize requires genus >= 2");
  DualGraph g = input;
  for (;;) {
    std::optional<int> victim;
    for (const auto& v : g.vertices()) {
      if (v.weight == 0 && g.degree(v.id) <= 2 && (!victim || v.id < *victim))
        victim = v.id;
    }
    if (!victim) return g;
    const int v = *victim;
    const std::vector<int> nbrs = g.neighbors(v);
    if (nbrs.size() == 2 && nbrs[0] != v) {
      g.remove_vertex(v);
      g.add_edge(nbrs[0], nbrs[1]);
    } else {
      // Leaves and isolated vertices; a lone self-loop cannot occur at
      // genus >= 2 in a connected graph.
      g.remove_vertex(v);
    }
  }
}

}  // namespace stablecurve

#endif  // STABLECURVE_DUAL_GRAPH_HPP
