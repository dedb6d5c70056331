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

#ifndef STABLECURVE_AUT_ORDER_HPP
#define STABLECURVE_AUT_ORDER_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace stablecurve {

/// Exact order of an automorphism group. Orders leave the 64-bit range
/// around genus 25, so everything is carried as an arbitrary-precision int.
using AutOrder = boost::multiprecision::cpp_int;

inline AutOrder pow_order(unsigned base, std::uint64_t exponent) {
  AutOrder result = 1;
  AutOrder b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

inline std::string to_string(const AutOrder& order) { return order.str(); }

}  // namespace stablecurve

#endif  // STABLECURVE_AUT_ORDER_HPP
