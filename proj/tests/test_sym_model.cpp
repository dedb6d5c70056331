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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "stablecurve/stablecurve.hpp"
#include "support.hpp"

namespace sc = stablecurve;
using sctest::make;

namespace {

sc::AutOrder order_of(std::vector<int> classes, int pinned) { return sc::local_order({std::move(classes), pinned}); }

}  // namespace

TEST(LocalOrder, Table) {
  EXPECT_EQ(order_of({3}, 0), 6);
  EXPECT_EQ(order_of({3, 1}, 0), 3);
  EXPECT_EQ(order_of({1, 1, 1}, 1), 1);
  EXPECT_EQ(order_of({5}, 0), 10);
  EXPECT_EQ(order_of({2}, 0), 2);
  EXPECT_EQ(order_of({2}, 1), 2);
  EXPECT_EQ(order_of({4}, 1), 4);
  EXPECT_EQ(order_of({3, 1, 1}, 0), 3);
  EXPECT_EQ(order_of({3, 1, 1}, 1), 1);
  EXPECT_EQ(order_of({2, 2}, 0), 2);
  EXPECT_EQ(order_of({2, 2, 2}, 0), 1);
  EXPECT_EQ(order_of({}, 1), 1);
}

TEST(LocalOrder, TiesGoToEarliestClass) {
  const auto c = sc::local_choice({{2, 2}, 0});
  ASSERT_TRUE(c.rotating_class);
  EXPECT_EQ(*c.rotating_class, 0U);
  EXPECT_FALSE(c.dihedral);
  EXPECT_TRUE(sc::local_choice({{4}, 0}).dihedral);
}

TEST(GautRooted, Examples) {
  EXPECT_EQ(sc::gaut_rooted(make({0, 1, 1}, {{0, 1}, {0, 2}}), 0), 2);
  // Hub with three pairs, rooted at the hub.
  const auto six = make({0, 0, 1, 1, 0, 1, 1, 0, 1, 1},
                        {{0, 1}, {1, 2}, {1, 3}, {0, 4}, {4, 5}, {4, 6}, {0, 7}, {7, 8}, {7, 9}});
  EXPECT_EQ(sc::gaut_rooted(six, 0), 24);
  EXPECT_EQ(sc::gaut_rooted(make({1}, {}), 0), 1);
}

TEST(GautTree, Examples) {
  EXPECT_EQ(sc::gaut_tree(sctest::dumbbell()), 2);
  EXPECT_EQ(sc::aut_order(sctest::dumbbell()), 72);
  EXPECT_EQ(sc::gaut_tree(sctest::star(3)), 6);
  EXPECT_EQ(sc::gaut_tree(sctest::star(4)), 8);
  EXPECT_EQ(sc::gaut_tree(sctest::doubled_pair()), 8);
  EXPECT_EQ(sc::gaut_tree(sctest::seven_left()), 24);
  EXPECT_EQ(sc::gaut_tree(sctest::seven_right()), 24);
}

TEST(AutOrder, Examples) {
  EXPECT_EQ(sc::aut_order(sctest::star(3)), 1296);
  EXPECT_EQ(sc::aut_order(sctest::star(5)), 77760);
}

TEST(SymModel, InteriorEllipticIsDomainError) {
  const auto g = make({1, 1, 1}, {{0, 1}, {1, 2}});
  EXPECT_THROW(sc::gaut_tree(g), sc::DomainError);
  EXPECT_THROW(sc::gaut_small_graph(g), sc::DomainError);
  EXPECT_THROW(sc::gaut_tree(make({0, 2, 1, 1}, {{0, 1}, {0, 2}, {0, 3}})), sc::DomainError);
}

TEST(GautSmallGraph, Examples) {
  // Triangle with one elliptic leaf per vertex: dihedral of order 6.
  EXPECT_EQ(sc::gaut_small_graph(sctest::leafy_cycle(3)), 6);
  // Theta: D3 at both vertices plus the swap of the two vertices.
  EXPECT_EQ(sc::gaut_small_graph(sctest::theta()), 12);
  EXPECT_EQ(sc::gaut_small_graph(sctest::leafy_cycle(4)), 8);
}

TEST(GautSmallGraph, AgreesWithTreesWithinCaps) {
  std::size_t checked = 0;
  for (sc::Genus g = 2; g <= 6; ++g) {
    for (const auto& t : sc::enumerate_simple_trees(g)) {
      if (t.vertex_count() > 12) continue;
      try {
        EXPECT_EQ(sc::gaut_small_graph(t), sc::gaut_tree(t)) << sc::serialize_graph(t);
        ++checked;
      } catch (const sc::CapacityError&) {
        // Symmetric groups on many parallel leaves exceed the element cap.
      }
    }
  }
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = sctest::random_simple_tree(2 + static_cast<int>(rng() % 6), rng);
    if (t.vertex_count() > 12) continue;
    try {
      EXPECT_EQ(sc::gaut_small_graph(t), sc::gaut_tree(t)) << sc::serialize_graph(t);
      ++checked;
    } catch (const sc::CapacityError&) {
    }
  }
  EXPECT_GT(checked, 150U);
}

TEST(GautSmallGraph, Caps) {
  EXPECT_THROW(sc::gaut_small_graph(sctest::star(12)), sc::CapacityError);
}

TEST(GautTree, RelabelingInvariance) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = sctest::random_simple_tree(2 + static_cast<int>(rng() % 20), rng);
    EXPECT_EQ(sc::gaut_tree(t), sc::gaut_tree(sctest::relabel(t, rng)));
  }
}

TEST(GautTree, ProductAtAsymmetricEdgeCenter) {
  std::mt19937 rng(11);
  int seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto t = sctest::random_simple_tree(3 + static_cast<int>(rng() % 12), rng);
    const sc::TreeSymmetry sym(t);
    const auto c = sym.center_edge();
    if (!c) continue;
    sc::DualGraph cut = t;
    cut.remove_one_edge(c->first, c->second);
    const auto sa = sc::detail::component_without(cut, {}, c->first);
    const auto sb = sc::detail::component_without(cut, {}, c->second);
    if (sc::rooted_tree_code(sa, c->first) == sc::rooted_tree_code(sb, c->second)) continue;
    ++seen;
    EXPECT_EQ(sym.order(), sc::gaut_rooted(sa, c->first) * sc::gaut_rooted(sb, c->second));
  }
  EXPECT_GT(seen, 10);
}

TEST(Orbits, StarAndSevenAndDumbbell) {
  const auto star = sc::geometric_orbits(sctest::star(3));
  EXPECT_EQ(star.vertex_orbit_size(1), 3U);
  EXPECT_EQ(sc::fixed_subtree(sctest::star(3)).vertices, std::vector<int>{0});

  const auto fs = sc::fixed_subtree(sctest::seven_left());
  EXPECT_EQ(fs.vertices, (std::vector<int>{0, 10}));

  const auto db = sc::fixed_subtree(sctest::dumbbell());
  EXPECT_TRUE(db.vertices.empty());
  ASSERT_TRUE(db.center_edge);
  EXPECT_EQ(sc::geometric_orbits(sctest::dumbbell()).vertex_orbit_size(0), 2U);
}

TEST(Orbits, FixedSubtreeIsConnectedAndOrbitsCover) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = sctest::random_simple_tree(2 + static_cast<int>(rng() % 16), rng);
    const auto fs = sc::fixed_subtree(t);
    if (fs.vertices.empty()) {
      EXPECT_TRUE(fs.center_edge);
      continue;
    }
    const std::set<int> keep(fs.vertices.begin(), fs.vertices.end());
    sc::DualGraph sub;
    for (int v : fs.vertices) sub.add_vertex_with_id(v, t.weight(v));
    for (const auto& e : t.edges())
      if (keep.count(e.u) && keep.count(e.v)) sub.add_edge(e.u, e.v);
    EXPECT_TRUE(sub.is_connected());
    std::size_t covered = 0;
    for (const auto& o : sc::geometric_orbits(t).vertex_orbits) covered += o.size();
    EXPECT_EQ(covered, t.vertex_count());
  }
}

TEST(LocalRecords, OrdersAreOneTwoMOr2M) {
  for (sc::Genus g = 2; g <= 8; ++g) {
    for (const auto& t : sc::brute_max(g).optima) {
      const sc::TreeSymmetry sym(t);
      for (const auto& rec : sym.local_records()) {
        const auto& cls = rec.structure.class_multiplicities;
        const int o = rec.choice.order;
        const bool plain = o == 1 || o == 2 || std::find(cls.begin(), cls.end(), o) != cls.end();
        const bool twice = o % 2 == 0 && std::find(cls.begin(), cls.end(), o / 2) != cls.end();
        EXPECT_TRUE(plain || twice);
        if (rec.choice.dihedral) {
          EXPECT_EQ(rec.structure.pinned, 0);
          EXPECT_EQ(cls.size(), 1U);
        }
      }
    }
  }
}

TEST(TerminalSymmetry, BranchesBelowMovedVerticesArePerfect) {
  for (sc::Genus g = 2; g <= 8; ++g) {
    for (const auto& t : sc::brute_max(g).optima) {
      const sc::TreeSymmetry sym(t);
      const sc::detail::TreeView view(t);
      const auto center = sc::detail::tree_center(view);
      auto dist = view.bfs(center.first).first;
      if (center.second) {
        const auto other = view.bfs(*center.second).first;
        for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = std::min(dist[i], other[i]);
      }
      for (const auto& o : sym.orbits().vertex_orbits) {
        if (o.size() < 2) continue;
        for (int v : o) {
          const std::size_t iv = t.index_of(v);
          std::optional<int> up;
          for (std::size_t w : view.adj[iv])
            if (dist[w] < dist[iv]) up = view.id(w);
          if (!up && center.second) up = view.id(iv == center.first ? *center.second : center.first);
          EXPECT_TRUE(sc::perfect_type(t, v, up).has_value()) << sc::serialize_graph(t) << " at " << v;
          std::set<std::string> branches;
          const std::optional<std::size_t> parent = up ? std::optional(t.index_of(*up)) : std::nullopt;
          for (std::size_t c : view.children(iv, parent)) branches.insert(sc::detail::rooted_code(view, c, iv));
          EXPECT_LE(branches.size(), 1U) << sc::serialize_graph(t) << " at " << v;
        }
      }
    }
  }
}
