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

#ifndef STABLECURVE_CONSTRUCTOR_HPP
#define STABLECURVE_CONSTRUCTOR_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "stablecurve/aut_order.hpp"
#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"

namespace stablecurve {

using Genus = std::uint64_t;

enum class PairGroup { kOneOne, kOneZero };

/// Greedy left-to-right pairing of the bits of g: zeros between groups are
/// skipped, each group is a 1 and the bit after it, and a trailing unpaired
/// 1 is "lonely".
struct BinaryPairing {
  Genus g = 0;
  std::vector<PairGroup> groups;
  bool lonely = false;
  std::uint64_t k = 0;  // groups "11"
  std::uint64_t l = 0;  // groups "10"
  Genus N = 0;          // g - 1 if lonely, else g
};

inline int bit_length(Genus g) { return static_cast<int>(std::bit_width(g)); }

inline BinaryPairing binary_pairing(Genus g) {
  if (g < 2) throw DomainError("binary pairing needs g >= 2");
  BinaryPairing p;
  p.g = g;
  const int len = bit_length(g);
  auto bit = [&](int i) { return ((g >> (len - 1 - i)) & 1U) != 0; };
  for (int i = 0; i < len;) {
    if (!bit(i)) {
      ++i;
    } else if (i + 1 < len) {
      p.groups.push_back(bit(i + 1) ? PairGroup::kOneOne : PairGroup::kOneZero);
      i += 2;
    } else {
      p.lonely = true;
      ++i;
    }
  }
  for (auto grp : p.groups) (grp == PairGroup::kOneOne ? p.k : p.l)++;
  p.N = p.lonely ? g - 1 : g;
  return p;
}

/// Which construction applies in genus g, decided by the leading bits.
struct MainTheoremCase {
  enum class Kind { kGenusTwo, kThree, kFour, kFive };
  Kind kind = Kind::kGenusTwo;
  int n = 0;
  Genus appendix = 0;  // a for kThree, b for kFour
};

inline MainTheoremCase classify_genus(Genus g) {
  if (g < 2) throw DomainError("classify_genus needs g >= 2");
  if (g == 2) return {MainTheoremCase::Kind::kGenusTwo, 0, 0};
  const int len = bit_length(g);
  const int n = len - 2;
  if ((g >> n) == 3U) return {MainTheoremCase::Kind::kThree, n, g - (Genus{3} << n)};
  // Leading "10": g = 4 * 2^(len-3) + b.
  const int m = len - 3;
  if (g == (Genus{5} << m)) return {MainTheoremCase::Kind::kFive, m, 0};
  return {MainTheoremCase::Kind::kFour, m, g - (Genus{4} << m)};
}

/// The maximal order written as 6^g * 2^e2 * 3^e3 * 5^e5.
struct FactoredOrder {
  Genus g = 0;
  std::uint64_t e2 = 0;
  std::uint64_t e3 = 0;
  std::uint64_t e5 = 0;
  std::string formula_case;  // "g=2", "3*2^n", "5*2^n" or "generic"

  AutOrder value() const {
    return pow_order(6, g) * pow_order(2, e2) * pow_order(3, e3) * pow_order(5, e5);
  }

  std::string to_string() const {
    std::string s = "6^" + std::to_string(g);
    if (e2) s += " * 2^" + std::to_string(e2);
    if (e3) s += " * 3^" + std::to_string(e3);
    if (e5) s += " * 5^" + std::to_string(e5);
    return s;
  }
};

inline FactoredOrder max_aut_order_factored(Genus g) {
  if (g < 2) throw DomainError("max_aut_order needs g >= 2");
  if (g == 2) return {g, 1, 0, 0, "g=2"};
  const MainTheoremCase c = classify_genus(g);
  if (c.kind == MainTheoremCase::Kind::kThree && c.appendix == 0) return {g, g - 2, 1, 0, "3*2^n"};
  if (c.kind == MainTheoremCase::Kind::kFive) return {g, g - 4, 0, 1, "5*2^n"};
  const BinaryPairing p = binary_pairing(g);
  // N - 3k - l >= 0 always: each group consumes at least two bits of value.
  return {g, p.N - 3 * p.k - p.l, p.k, 0, "generic"};
}

/// Order of the automorphism group of a maximally symmetric stable curve.
inline AutOrder max_aut_order(Genus g) { return max_aut_order_factored(g).value(); }

/// Dimension of the family of maximally symmetric curves (0 if finite).
inline std::uint64_t moduli_dimension(Genus g) {
  const BinaryPairing p = binary_pairing(g);
  const std::uint64_t positive = p.k + p.l + (g - p.N);
  return positive > 3 ? positive - 3 : 0;
}

namespace detail {

/// Complete binary tree with 2^depth elliptic leaves; returns its root.
inline int add_binary_tree(DualGraph& g, int depth) {
  if (depth == 0) return g.add_vertex(1);
  const int root = g.add_vertex(0);
  for (int i = 0; i < 2; ++i) g.add_edge(root, add_binary_tree(g, depth - 1));
  return root;
}

/// Rooted tree of genus a with the largest GAut when its root is pinned
/// (attached to something fixed). Leading bits "11" give three binary trees
/// on a common node, leading "10" a binary tree; the remaining genus is an
/// appendage built the same way.
inline int add_rooted_optimal(DualGraph& g, Genus a) {
  if (a == 1) return g.add_vertex(1);
  const int len = bit_length(a);
  const int depth = len - 2;
  if ((a >> depth) == 2U) {
    const int root = g.add_vertex(0);
    for (int i = 0; i < 2; ++i) g.add_edge(root, add_binary_tree(g, depth));
    const Genus rest = a - (Genus{1} << (len - 1));
    if (rest > 0) g.add_edge(root, add_rooted_optimal(g, rest));
    return root;
  }
  const int hub = g.add_vertex(0);
  for (int i = 0; i < 3; ++i) g.add_edge(hub, add_binary_tree(g, depth));
  const Genus rest = a - (Genus{3} << depth);
  if (rest == 0) return hub;
  if (rest == 1) {
    g.add_edge(hub, g.add_vertex(1));
    return hub;
  }
  // Keep the host and the appendage off the hub so its three trees can turn.
  const int joint = g.add_vertex(0);
  g.add_edge(joint, hub);
  g.add_edge(joint, add_rooted_optimal(g, rest));
  return joint;
}

}  // namespace detail

/// A maximally symmetric dual graph of genus g. For g = 1 this is the lone
/// elliptic vertex, which is only meaningful as an appendage.
inline DualGraph build_optimal(Genus g) {
  if (g < 1) throw DomainError("build_optimal needs g >= 1");
  DualGraph out;
  if (g == 1) {
    out.add_vertex(1);
    return out;
  }
  const MainTheoremCase c = classify_genus(g);
  if ((c.kind == MainTheoremCase::Kind::kThree && c.appendix == 0) || c.kind == MainTheoremCase::Kind::kFive) {
    const int arms = c.kind == MainTheoremCase::Kind::kThree ? 3 : 5;
    const int hub = out.add_vertex(0);
    for (int i = 0; i < arms; ++i) out.add_edge(hub, detail::add_binary_tree(out, c.n));
    return out;
  }
  detail::add_rooted_optimal(out, g);
  return stabilize(out);
}

}  // namespace stablecurve

#endif  // STABLECURVE_CONSTRUCTOR_HPP
