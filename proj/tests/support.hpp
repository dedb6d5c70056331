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

// Small graph builders and random generators shared by the test suites.

#ifndef STABLECURVE_TESTS_SUPPORT_HPP
#define STABLECURVE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "stablecurve/stablecurve.hpp"

namespace stablecurve {

inline void PrintTo(const DualGraph& g, std::ostream* os) { *os << serialize_graph(g); }

}  // namespace stablecurve

namespace sctest {

using stablecurve::DualGraph;

inline DualGraph make(std::vector<int> weights, std::vector<std::pair<int, int>> edges) {
  DualGraph g;
  for (std::size_t i = 0; i < weights.size(); ++i) g.add_vertex_with_id(static_cast<int>(i), weights[i]);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline DualGraph dumbbell() { return make({1, 1}, {{0, 1}}); }

/// Rational hub with `leaves` elliptic leaves.
inline DualGraph star(int leaves) {
  DualGraph g;
  const int hub = g.add_vertex(0);
  for (int i = 0; i < leaves; ++i) g.add_edge(hub, g.add_vertex(1));
  return g;
}

/// Genus 4: two rational vertices, each with two elliptic leaves, joined.
inline DualGraph doubled_pair() { return make({0, 0, 1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}}); }

/// Genus 7, strict: hub with three pairs and one elliptic leaf.
inline DualGraph seven_left() {
  return make({0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1},
              {{0, 1}, {1, 2}, {1, 3}, {0, 4}, {4, 5}, {4, 6}, {0, 7}, {7, 8}, {7, 9}, {0, 10}});
}

/// Genus 7, not strict: hub with two pairs and a vertex carrying three leaves.
inline DualGraph seven_right() {
  return make({0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1},
              {{0, 1}, {1, 2}, {1, 3}, {0, 4}, {4, 5}, {4, 6}, {0, 7}, {7, 8}, {7, 9}, {7, 10}});
}

inline DualGraph theta() { return make({0, 0}, {{0, 1}, {0, 1}, {0, 1}}); }

/// Cycle of n rational vertices, each with one elliptic leaf.
inline DualGraph leafy_cycle(int n) {
  DualGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex_with_id(i, 0);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(i, g.add_vertex(1));
  }
  return g;
}

/// Same graph with vertex ids permuted and edges shuffled and flipped.
inline DualGraph relabel(const DualGraph& g, std::mt19937& rng) {
  std::vector<int> ids(g.vertex_count());
  std::iota(ids.begin(), ids.end(), 100);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<std::size_t> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  DualGraph out;
  for (std::size_t i : order) out.add_vertex_with_id(ids[i], g.vertices()[i].weight);
  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  for (const auto& e : edges) {
    int a = ids[g.index_of(e.u)];
    int b = ids[g.index_of(e.v)];
    if (rng() % 2) std::swap(a, b);
    out.add_edge(a, b);
  }
  return out;
}

/// Random tree with elliptic leaves and rational interior of valence >= 3:
/// grow by hanging leaves on rational vertices or subdividing edges.
inline DualGraph random_simple_tree(int genus, std::mt19937& rng) {
  DualGraph g = dumbbell();
  for (int have = 2; have < genus; ++have) {
    std::vector<int> rational;
    for (const auto& v : g.vertices())
      if (v.weight == 0) rational.push_back(v.id);
    const bool subdivide = rational.empty() || rng() % 2 == 0;
    if (subdivide) {
      const std::size_t i = rng() % g.edge_count();
      const auto e = g.edges()[i];
      g.remove_edge_at(i);
      const int x = g.add_vertex(0);
      g.add_edge(e.u, x);
      g.add_edge(x, e.v);
      g.add_edge(x, g.add_vertex(1));
    } else {
      g.add_edge(rational[rng() % rational.size()], g.add_vertex(1));
    }
  }
  return g;
}

/// Random connected stable graph with rational vertices, elliptic leaves,
/// loops and parallel edges allowed.
inline DualGraph random_stable_graph(std::mt19937& rng, int max_rational = 4, int max_extra_edges = 3) {
  for (;;) {
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_rational));
    DualGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex_with_id(i, 0);
    for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<int>(rng() % static_cast<unsigned>(i)));
    const int extra = static_cast<int>(rng() % static_cast<unsigned>(max_extra_edges + 1));
    for (int k = 0; k < extra; ++k)
      g.add_edge(static_cast<int>(rng() % static_cast<unsigned>(n)), static_cast<int>(rng() % static_cast<unsigned>(n)));
    for (int i = 0; i < n; ++i)
      while (g.degree(i) < 3) g.add_edge(i, g.add_vertex(1));
    if (stablecurve::is_stable(g)) return g;
  }
}

}  // namespace sctest

#endif  // STABLECURVE_TESTS_SUPPORT_HPP
