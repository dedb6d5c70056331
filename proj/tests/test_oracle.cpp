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

#include <set>

#include "stablecurve/stablecurve.hpp"
#include "support.hpp"

namespace sc = stablecurve;

namespace {

bool leafy_tree(const sc::DualGraph& t) {
  if (!t.is_tree()) return false;
  for (const auto& v : t.vertices()) {
    if (v.weight > 1) return false;
    if (v.weight == 1 && t.degree(v.id) != 1) return false;
    if (v.weight == 0 && t.degree(v.id) < 3) return false;
  }
  return true;
}

}  // namespace

TEST(EnumerateSimpleTrees, Counts) {
  const std::vector<std::size_t> expected{1, 1, 2, 3, 7, 13, 32, 73};
  for (sc::Genus g = 2; g <= 9; ++g) {
    const auto trees = sc::enumerate_simple_trees(g);
    EXPECT_EQ(trees.size(), expected[g - 2]) << g;
    std::set<sc::CanonicalCode> codes;
    for (const auto& t : trees) {
      EXPECT_EQ(sc::genus(t), static_cast<int>(g));
      EXPECT_TRUE(leafy_tree(t));
      EXPECT_TRUE(sc::is_stable(t));
      codes.insert(sc::tree_code(t));
    }
    EXPECT_EQ(codes.size(), trees.size());
  }
}

TEST(EnumerateSimpleTrees, ContainsRandomSimpleTrees) {
  std::mt19937 rng(4);
  std::map<sc::Genus, std::set<sc::CanonicalCode>> known;
  for (int trial = 0; trial < 300; ++trial) {
    const sc::Genus g = 2 + rng() % 7;
    const auto t = sctest::random_simple_tree(static_cast<int>(g), rng);
    if (!sc::is_simple(t)) continue;
    auto& codes = known[g];
    if (codes.empty())
      for (const auto& e : sc::enumerate_simple_trees(g)) codes.insert(sc::tree_code(e));
    EXPECT_TRUE(codes.count(sc::tree_code(t))) << sc::serialize_graph(t);
  }
}

TEST(EnumerateGeneralGraphs, Counts) {
  const std::vector<std::size_t> expected{5, 26, 213};
  for (sc::Genus g = 2; g <= 4; ++g) {
    const auto graphs = sc::enumerate_general_graphs(g);
    EXPECT_EQ(graphs.size(), expected[g - 2]) << g;
    std::set<sc::CanonicalCode> codes;
    std::size_t trees = 0;
    for (const auto& gr : graphs) {
      EXPECT_EQ(sc::genus(gr), static_cast<int>(g));
      EXPECT_TRUE(sc::is_stable(gr));
      EXPECT_LE(gr.vertex_count(), 10U);
      for (const auto& v : gr.vertices()) EXPECT_LE(v.weight, 1);
      codes.insert(sc::general_code(gr));
      trees += leafy_tree(gr);
    }
    EXPECT_EQ(codes.size(), graphs.size());
    EXPECT_EQ(trees, sc::enumerate_simple_trees(g).size());
  }
}

TEST(EnumerateGeneralGraphs, GenusTwoList) {
  std::set<sc::CanonicalCode> got;
  for (const auto& gr : sc::enumerate_general_graphs(2)) got.insert(sc::general_code(gr));
  using sctest::make;
  const std::set<sc::CanonicalCode> want{
      sc::general_code(sctest::dumbbell()),
      sc::general_code(sctest::theta()),
      sc::general_code(make({0}, {{0, 0}, {0, 0}})),
      sc::general_code(make({0, 1}, {{0, 0}, {0, 1}})),
      sc::general_code(make({0, 0}, {{0, 0}, {0, 1}, {1, 1}})),
  };
  EXPECT_EQ(got, want);
}

TEST(Enumerate, Dispatch) {
  sc::EnumerationSpec spec;
  spec.genus = 3;
  EXPECT_EQ(sc::enumerate(spec).size(), 1U);
  spec.mode = sc::EnumerationMode::kGeneralGraphs;
  EXPECT_EQ(sc::enumerate(spec).size(), 26U);
}

TEST(Enumerate, Capacity) {
  EXPECT_THROW(sc::enumerate_simple_trees(11), sc::CapacityError);
  EXPECT_THROW(sc::enumerate_general_graphs(5), sc::CapacityError);
  EXPECT_THROW(sc::enumerate_general_graphs(3, 13), sc::CapacityError);
  EXPECT_THROW(sc::enumerate_simple_trees(1), sc::DomainError);
  EXPECT_THROW(sc::brute_max(9), sc::CapacityError);
}

TEST(BruteMax, MatchesFormulaAndCounts) {
  const std::vector<std::size_t> optima{1, 1, 2, 1, 1, 2, 2};
  for (sc::Genus g = 2; g <= 8; ++g) {
    const auto res = sc::brute_max(g, 2);
    EXPECT_EQ(res.order, sc::max_aut_order(g)) << g;
    EXPECT_EQ(res.optima.size(), optima[g - 2]) << g;
    EXPECT_EQ(res.candidates, sc::enumerate_simple_trees(g).size());
    bool found = false;
    for (const auto& t : res.optima) found |= sc::tree_code(t) == sc::tree_code(sc::build_optimal(g));
    EXPECT_TRUE(found) << g;
  }
}

TEST(BruteMax, SevenHasBothHubShapes) {
  std::set<sc::CanonicalCode> got;
  for (const auto& t : sc::brute_max(7).optima) got.insert(sc::tree_code(t));
  EXPECT_EQ(got, (std::set<sc::CanonicalCode>{sc::tree_code(sctest::seven_left()),
                                              sc::tree_code(sctest::seven_right())}));
}

TEST(BruteMax, DeterministicAcrossJobs) {
  const auto one = sc::brute_max(8, 1);
  const auto many = sc::brute_max(8, 4);
  EXPECT_EQ(one.order, many.order);
  ASSERT_EQ(one.optima.size(), many.optima.size());
  for (std::size_t i = 0; i < one.optima.size(); ++i)
    EXPECT_EQ(sc::serialize_graph(one.optima[i]), sc::serialize_graph(many.optima[i]));
}

TEST(GeneralGraphs, OnlyTreesAttainTheMaximum) {
  for (sc::Genus g = 2; g <= 4; ++g) {
    sc::AutOrder best_cycle = 0;
    for (const auto& gr : sc::enumerate_general_graphs(g))
      if (!gr.is_tree()) best_cycle = std::max(best_cycle, sc::aut_order(gr));
    EXPECT_LT(best_cycle, sc::max_aut_order(g)) << g;
  }
}

TEST(AssignmentSearch, Examples) {
  EXPECT_EQ(sc::gaut_assignment_search(sctest::dumbbell()), 2);
  EXPECT_EQ(sc::gaut_assignment_search(sctest::star(3)), 6);
  EXPECT_EQ(sc::gaut_assignment_search(sctest::star(5)), 10);
  EXPECT_EQ(sc::gaut_assignment_search(sctest::seven_left()), 24);
  EXPECT_EQ(sc::gaut_assignment_search(sctest::doubled_pair()), 8);
  EXPECT_THROW(sc::gaut_assignment_search(sc::build_optimal(16), 10), sc::CapacityError);
}

TEST(AssignmentSearch, AgreesWithRecursiveModel) {
  for (sc::Genus g = 2; g <= 7; ++g)
    for (const auto& t : sc::enumerate_simple_trees(g)) EXPECT_EQ(sc::gaut_assignment_search(t), sc::gaut_tree(t));
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = sctest::random_simple_tree(2 + static_cast<int>(rng() % 12), rng);
    EXPECT_EQ(sc::gaut_assignment_search(t), sc::gaut_tree(t)) << sc::serialize_graph(t);
  }
}
