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

// Command-line front end for the stablecurve library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stablecurve/stablecurve.hpp"

namespace sc = stablecurve;

namespace {

struct Options {
  std::string format = "json";
  std::string output;
  std::string input;
  std::string csv;
  sc::Genus genus = 0;
  sc::Genus max_genus = sc::kDefaultOracleCap;
  sc::Genus cap = sc::kDefaultOracleCap;
  unsigned jobs = 1;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw sc::DomainError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw sc::DomainError("cannot write " + o.output);
  out << text;
}

std::string render(const Options& o, const sc::DualGraph& g) {
  return o.format == "dot" ? sc::to_dot(g) : sc::serialize_graph(g) + "\n";
}

std::string render_list(const Options& o, const std::vector<sc::DualGraph>& graphs, nlohmann::ordered_json head) {
  if (o.format == "dot") {
    std::string s;
    for (const auto& g : graphs) s += sc::to_dot(g);
    return s;
  }
  head["count"] = graphs.size();
  head["graphs"] = nlohmann::ordered_json::array();
  for (const auto& g : graphs) head["graphs"].push_back(nlohmann::ordered_json::parse(sc::serialize_graph(g)));
  return head.dump() + "\n";
}

int cmd_order(const Options& o) {
  const auto f = sc::max_aut_order_factored(o.genus);
  std::ostringstream s;
  s << sc::to_string(f.value()) << "\n" << f.to_string() << "\n" << "case: " << f.formula_case << "\n";
  const auto p = sc::binary_pairing(o.genus);
  s << "pairing: k=" << p.k << " l=" << p.l << " N=" << p.N << " lonely=" << (p.lonely ? "yes" : "no") << "\n";
  emit(o, s.str());
  return 0;
}

int cmd_construct(const Options& o) {
  if (o.genus < 2) throw sc::DomainError("construct needs g >= 2");
  emit(o, render(o, sc::build_optimal(o.genus)));
  return 0;
}

int cmd_gaut(const Options& o) {
  const auto g = sc::parse_graph(read_input(o.input));
  const sc::AutOrder gaut = g.is_tree() ? sc::gaut_tree(g) : sc::gaut_small_graph(g);
  const sc::AutOrder full = sc::pow_order(6, static_cast<std::uint64_t>(sc::elliptic_leaf_count(g))) * gaut;
  emit(o, "gaut " + sc::to_string(gaut) + "\naut " + sc::to_string(full) + "\n");
  return 0;
}

int cmd_reduce(const Options& o) {
  const auto g = sc::parse_graph(read_input(o.input));
  const auto r = sc::reduce(g);
  for (const auto& step : r.steps) std::cerr << step.rule << "\n";
  emit(o, render(o, r.graph));
  return 0;
}

int cmd_verify(const Options& o) {
  std::ostringstream s;
  std::ostringstream csv;
  csv << "genus,order,optima\n";
  bool all = true;
  s << "genus  oracle=formula  constructor-optimal  assignment=tree  optima\n";
  for (sc::Genus g = 2; g <= o.max_genus; ++g) {
    const auto brute = sc::brute_max(g, o.jobs, std::max(o.cap, o.max_genus));
    const bool formula = brute.order == sc::max_aut_order(g);
    const auto built = sc::tree_code(sc::build_optimal(g));
    bool member = false;
    for (const auto& t : brute.optima) member = member || sc::tree_code(t) == built;
    bool dual = true;
    for (const auto& t : sc::enumerate_simple_trees(g, std::max(o.cap, o.max_genus)))
      dual = dual && sc::gaut_assignment_search(t) == sc::gaut_tree(t);
    all = all && formula && member && dual;
    auto mark = [](bool b) { return b ? "PASS" : "FAIL"; };
    s << g << "      " << mark(formula) << "            " << mark(member) << "                 " << mark(dual)
      << "             " << brute.optima.size() << "\n";
    csv << g << "," << sc::to_string(brute.order) << "," << brute.optima.size() << "\n";
  }
  s << (all ? "all checks passed" : "some checks failed") << "\n";
  emit(o, s.str());
  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) throw sc::DomainError("cannot write " + o.csv);
    out << csv.str();
  }
  return all ? 0 : 1;
}

int cmd_enumerate(const Options& o) {
  const auto e = sc::enumerate_optimal(o.genus, o.cap, o.jobs);
  nlohmann::ordered_json head;
  head["genus"] = e.genus;
  head["regime"] = sc::to_string(e.regime);
  emit(o, render_list(o, e.graphs, head));
  return 0;
}

int cmd_classify(const Options& o) {
  const auto g = sc::parse_graph(read_input(o.input));
  std::ostringstream s;
  const bool simple = sc::is_simple(g);
  bool optimal = false;
  s << "simple: " << (simple ? "yes" : "no") << "\n";
  if (simple) {
    optimal = sc::aut_order(g) == sc::max_aut_order(static_cast<sc::Genus>(sc::genus(g)));
    s << "optimal: " << (optimal ? "yes" : "no") << "\n";
  }
  if (const auto p = sc::perfect_type(g)) s << "perfect: type " << p->type << " scale " << p->scale << "\n";
  const auto strict = sc::is_strict_optimal(g);
  s << "strict: " << (strict ? "yes" : "no") << "\n";
  if (strict) {
    for (const auto& part : strict->parts)
      s << "part: type " << part.type.type << " scale " << part.type.scale << " leaves " << part.leaves << " root "
        << part.root << "\n";
  } else if (optimal) {
    if (const auto path = sc::path_to_strict(g))
      s << "steps to strict: " << path->size() - 1 << "\n";
    else
      s << "steps to strict: none found\n";
  }
  emit(o, s.str());
  return 0;
}

int cmd_neutral(const Options& o) {
  const auto g = sc::parse_graph(read_input(o.input));
  emit(o, render_list(o, sc::neutral_moves(g), nlohmann::ordered_json::object()));
  return 0;
}

int cmd_dimension(const Options& o) {
  emit(o, std::to_string(sc::moduli_dimension(o.genus)) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximally symmetric stable curves via their dual graphs"};
  app.require_subcommand(1);
  Options o;
  auto format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  };
  auto output = [&](CLI::App* c) { c->add_option("--output", o.output, "write to a file instead of stdout"); };
  auto genus = [&](CLI::App* c) { c->add_option("g", o.genus, "genus")->required(); };
  auto input = [&](CLI::App* c) { c->add_option("graph", o.input, "graph JSON file, or - for stdin")->required(); };
  auto jobs = [&](CLI::App* c) { c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber); };
  auto cap = [&](CLI::App* c) { c->add_option("--cap", o.cap, "largest genus searched exhaustively"); };

  auto* order = app.add_subcommand("order", "maximal automorphism order in genus g");
  genus(order);
  output(order);
  auto* construct = app.add_subcommand("construct", "a maximally symmetric dual graph");
  genus(construct);
  format(construct);
  output(construct);
  auto* gaut = app.add_subcommand("gaut", "geometric and full automorphism orders of a graph");
  input(gaut);
  output(gaut);
  auto* reduce = app.add_subcommand("reduce", "rewrite a stable graph into a simple tree");
  input(reduce);
  format(reduce);
  output(reduce);
  auto* verify = app.add_subcommand("verify", "check formula, constructor and oracle against each other");
  verify->add_option("--max-genus", o.max_genus, "largest genus to check");
  verify->add_option("--csv", o.csv, "also write genus,order,optima rows here");
  jobs(verify);
  cap(verify);
  output(verify);
  auto* enumerate = app.add_subcommand("enumerate-optimal", "all maximally symmetric trees in genus g");
  genus(enumerate);
  format(enumerate);
  output(enumerate);
  jobs(enumerate);
  cap(enumerate);
  auto* classify = app.add_subcommand("classify", "perfect type and strict optimality of a tree");
  input(classify);
  output(classify);
  auto* neutral = app.add_subcommand("neutral-moves", "every tree one neutral move away");
  input(neutral);
  format(neutral);
  output(neutral);
  auto* dimension = app.add_subcommand("dimension", "dimension of the family of optima");
  genus(dimension);
  output(dimension);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*order) return cmd_order(o);
    if (*construct) return cmd_construct(o);
    if (*gaut) return cmd_gaut(o);
    if (*reduce) return cmd_reduce(o);
    if (*verify) return cmd_verify(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*classify) return cmd_classify(o);
    if (*neutral) return cmd_neutral(o);
    if (*dimension) return cmd_dimension(o);
  } catch (const sc::ParseError& e) {
    std::cerr << "error: " << e.what() << " (at " << e.position() << ")\n";
    return 1;
  } catch (const sc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
