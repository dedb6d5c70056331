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

#ifndef STABLECURVE_STABLECURVE_HPP
#define STABLECURVE_STABLECURVE_HPP

#include "stablecurve/errors.hpp"
#include "stablecurve/aut_order.hpp"
#include "stablecurve/dual_graph.hpp"
#include "stablecurve/canonical.hpp"
#include "stablecurve/graph_io.hpp"
#include "stablecurve/sym_model.hpp"
#include "stablecurve/small_graph.hpp"
#include "stablecurve/constructor.hpp"
#include "stablecurve/reductions.hpp"
#include "stablecurve/oracle.hpp"
#include "stablecurve/classify.hpp"

#endif  // STABLECURVE_STABLECURVE_HPP
