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

#ifndef STABLECURVE_GRAPH_IO_HPP
#define STABLECURVE_GRAPH_IO_HPP

#include <cstddef>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "stablecurve/dual_graph.hpp"
#include "stablecurve/errors.hpp"

namespace stablecurve {

namespace detail {

inline int json_int(const nlohmann::json& value, const std::string& where, std::size_t pos) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer", pos);
  return value.get<int>();
}

}  // namespace detail

/// Parses `{"vertices":[{"id":..,"weight":..},..],"edges":[[u,v],..]}`.
/// Disconnected graphs are rejected with a StructuralError.
inline DualGraph parse_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", 0);
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("missing \"vertices\" array", 0);
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ParseError("missing \"edges\" array", 0);

  DualGraph g;
  const auto& vs = doc["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const auto& v = vs[i];
    if (!v.is_object() || !v.contains("id") || !v.contains("weight"))
      throw ParseError(where + ": expected {\"id\":int,\"weight\":int}", i);
    const int id = detail::json_int(v["id"], where + ".id", i);
    const int weight = detail::json_int(v["weight"], where + ".weight", i);
    if (weight < 0) throw ParseError(where + ": negative weight", i);
    if (g.has_vertex(id)) throw ParseError(where + ": duplicate id " + std::to_string(id), i);
    g.add_vertex_with_id(id, weight);
  }
  const auto& es = doc["edges"];
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const auto& e = es[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [id,id]", i);
    const int u = detail::json_int(e[0], where, i);
    const int v = detail::json_int(e[1], where, i);
    if (!g.has_vertex(u) || !g.has_vertex(v))
      throw ParseError(where + ": unknown vertex id " + std::to_string(g.has_vertex(u) ? v : u), i);
    g.add_edge(u, v);
  }
  if (!g.is_connected()) throw StructuralError("graph is empty or disconnected");
  return g;
}

/// Compact JSON in the exact key order the parser documents.
inline std::string serialize_graph(const DualGraph& g) {
  std::ostringstream out;
  out << "{\"vertices\":[";
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const auto& v = g.vertices()[i];
    out << (i ? "," : "") << "{\"id\":" << v.id << ",\"weight\":" << v.weight << "}";
  }
  out << "],\"edges\":[";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    out << (i ? "," : "") << "[" << e.u << "," << e.v << "]";
  }
  out << "]}";
  return out.str();
}

/// Undirected DOT. Rational vertices are open circles, elliptic ones filled,
/// higher genus vertices carry their weight as label.
inline std::string to_dot(const DualGraph& g) {
  std::ostringstream out;
  out << "graph G {\n  node [shape=circle, width=0.2, fixedsize=true];\n";
  for (const auto& v : g.vertices()) {
    out << "  n" << v.id << " [";
    if (v.weight == 0)
      out << "label=\"\"";
    else if (v.weight == 1)
      out << "label=\"\", style=filled, fillcolor=black";
    else
      out << "label=\"" << v.weight << "\", fixedsize=false";
    out << "];\n";
  }
  for (const auto& e : g.edges()) out << "  n" << e.u << " -- n" << e.v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace stablecurve

#endif  // STABLECURVE_GRAPH_IO_HPP
