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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "stablecurve/stablecurve.hpp"

namespace sc = stablecurve;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(STABLECURVE_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("stablecurve_cli_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, Order) {
  const auto r = run("order 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "77760\n6^5 * 2^1 * 5^1\ncase: 5*2^n\npairing: k=0 l=1 N=4 lonely=yes\n");
  EXPECT_EQ(run("order 215").out.substr(0, sc::max_aut_order(215).str().size()), sc::max_aut_order(215).str());
}

TEST(Cli, ConstructRoundTrips) {
  const auto r = run("construct 12");
  ASSERT_EQ(r.status, 0);
  const auto g = sc::parse_graph(r.out);
  EXPECT_EQ(sc::tree_code(g), sc::tree_code(sc::build_optimal(12)));
  const auto dot = run("construct 3 --format dot");
  EXPECT_EQ(dot.out.rfind("graph G {", 0), 0U);
}

TEST(Cli, GautAndReduce) {
  const auto theta = temp_file("theta.json", R"({"vertices":[{"id":0,"weight":0},{"id":1,"weight":0}],"edges":[[0,1],[0,1],[0,1]]})");
  EXPECT_EQ(run("gaut " + theta.string()).out, "gaut 12\naut 12\n");
  const auto r = run("reduce " + theta.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(sc::tree_code(sc::parse_graph(r.out)), sc::tree_code(sc::build_optimal(2)));
  std::filesystem::remove(theta);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "stablecurve_cli_out.json";
  EXPECT_EQ(run("construct 4 --output " + path.string()).status, 0);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(sc::genus(sc::parse_graph(text)), 4);
  std::filesystem::remove(path);
}

TEST(Cli, EnumerateOptimal) {
  const auto j = nlohmann::json::parse(run("enumerate-optimal 7").out);
  EXPECT_EQ(j["genus"], 7);
  EXPECT_EQ(j["regime"], "exhaustive");
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["graphs"].size(), 2U);
  EXPECT_EQ(nlohmann::json::parse(run("enumerate-optimal 12").out)["regime"], "move-closure");
}

TEST(Cli, ClassifyAndNeutralMoves) {
  const auto seven = temp_file("seven.json", sc::serialize_graph(sc::build_optimal(7)));
  const auto c = run("classify " + seven.string());
  EXPECT_NE(c.out.find("strict: yes"), std::string::npos);
  const auto n = nlohmann::json::parse(run("neutral-moves " + seven.string()).out);
  EXPECT_EQ(n["count"], 0);
  std::filesystem::remove(seven);
  const auto right = temp_file("right.json", R"({"vertices":[{"id":0,"weight":0},{"id":1,"weight":0},)"
                                             R"({"id":2,"weight":1},{"id":3,"weight":1},{"id":4,"weight":0},)"
                                             R"({"id":5,"weight":1},{"id":6,"weight":1},{"id":7,"weight":0},)"
                                             R"({"id":8,"weight":1},{"id":9,"weight":1},{"id":10,"weight":1}],)"
                                             R"("edges":[[0,1],[1,2],[1,3],[0,4],[4,5],[4,6],[0,7],[7,8],[7,9],[7,10]]})");
  const auto moved = nlohmann::json::parse(run("neutral-moves " + right.string()).out);
  ASSERT_EQ(moved["count"], 1);
  EXPECT_EQ(sc::tree_code(sc::parse_graph(moved["graphs"][0].dump())), sc::tree_code(sc::build_optimal(7)));
  std::filesystem::remove(right);
  const auto twenty_one = temp_file("21.json", sc::serialize_graph(sc::build_optimal(21)));
  EXPECT_NE(run("classify " + twenty_one.string()).out.find("steps to strict: 1"), std::string::npos);
  std::filesystem::remove(twenty_one);
}

TEST(Cli, DimensionAndVerify) {
  EXPECT_EQ(run("dimension 85").out, "1\n");
  EXPECT_EQ(run("dimension 7").out, "0\n");
  const auto v = run("verify --max-genus 5 --jobs 2");
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("order 1").status, 1);
  EXPECT_EQ(run("construct 9 --format svg").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("--help").status, 0);
  const auto bad = temp_file("bad.json", "{bad");
  EXPECT_EQ(run("gaut " + bad.string()).status, 1);
  std::filesystem::remove(bad);
  EXPECT_EQ(run("gaut /nonexistent/graph.json").status, 1);
}
