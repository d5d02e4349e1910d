// Copyright 2026 The bqasim Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bqa/cli.hpp"
#include "bqa/instances.hpp"

using namespace bqa;

namespace {

std::string tmp(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("levels: header, shape, and byte-identical reruns") {
  const std::string out1 = tmp("bqa_levels1.csv");
  CHECK(run_cli({"levels", "--points", "11", "--out", out1}) == 0);
  const std::string a = slurp(out1);
  CHECK(run_cli({"levels", "--points", "11", "--out", out1}) == 0);
  const std::string b = slurp(out1);
  CHECK(a == b);
  CHECK(a.rfind("# {", 0) == 0);
  CHECK(count_lines(a) == 1 + 1 + 11);  // header, column names, rows

  // header is parseable JSON carrying version and argv
  const auto header = nlohmann::json::parse(a.substr(2, a.find('\n') - 2));
  CHECK(header["version"] == kVersion);
  CHECK(header["command"] == "levels");
  CHECK(header["argv"].is_array());

  // midpoint spectrum in units of A0 is {-1, 0, 1}
  std::stringstream ss(a);
  std::string line;
  std::getline(ss, line);
  std::getline(ss, line);
  for (int k = 0; k <= 5; ++k) std::getline(ss, line);
  double u, e0, e1, e2;
  std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &u, &e0, &e1, &e2);
  CHECK(u == doctest::Approx(0.5));
  CHECK(e0 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(e1 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(e2 == doctest::Approx(1.0).epsilon(1e-9));

  std::filesystem::remove(out1);
}

TEST_CASE("replay re-executes from the embedded header") {
  const std::string out1 = tmp("bqa_replay_src.csv");
  const std::string out2 = tmp("bqa_replay_dst.csv");
  CHECK(run_cli({"single", "--a0tf", "5", "--points", "5", "--tol", "1e-7",
                 "--out", out1}) == 0);
  CHECK(run_cli({"replay", out1, "--out", out2}) == 0);
  // identical except the --out path recorded in the argv header line
  std::string a = slurp(out1), b = slurp(out2);
  a = a.substr(a.find('\n'));
  b = b.substr(b.find('\n'));
  CHECK(a == b);
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}

TEST_CASE("single sweep mode emits one row per annealing time") {
  const std::string out = tmp("bqa_sweep.csv");
  CHECK(run_cli({"single", "--sweep-tf", "0.5:4:4", "--tol", "1e-7", "--out", out}) == 0);
  CHECK(count_lines(slurp(out)) == 2 + 4);
  std::filesystem::remove(out);
}

TEST_CASE("ferro trajectory has the configured shape") {
  const std::string out = tmp("bqa_ferro.csv");
  CHECK(run_cli({"ferro", "--n", "3", "--tf", "20", "--points", "6", "--tol", "1e-7",
                 "--out", out}) == 0);
  const std::string text = slurp(out);
  CHECK(count_lines(text) == 2 + 6);
  CHECK(text.find("bqa_success") != std::string::npos);
  CHECK(text.find("qa_success") != std::string::npos);
  std::filesystem::remove(out);
}

TEST_CASE("random-bench writes a histogram and JSON-lines records") {
  const std::string out = tmp("bqa_bench.csv");
  const std::string records = tmp("bqa_bench.jsonl");
  CHECK(run_cli({"random-bench", "--n", "3", "--seeds", "0..2", "--tf", "40",
                 "--tol", "1e-7", "--records", records, "--out", out}) == 0);
  const std::string text = slurp(out);
  CHECK(count_lines(text) == 2 + 20);  // 20 bins at width 0.05

  std::ifstream in(records);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec.contains("seed"));
    CHECK(rec.contains("method"));
    CHECK(rec["success"].get<double>() >= 0.0);
    CHECK(rec["success"].get<double>() <= 1.0);
    CHECK(rec.contains("zero_leakage"));
    CHECK(rec.contains("energy"));
    CHECK(rec.contains("nontrivial"));
    ++rows;
  }
  CHECK(rows == 6);  // 3 seeds x 2 methods
  std::filesystem::remove(out);
  std::filesystem::remove(records);
}

TEST_CASE("phase writes the diagram and the protocol overlay") {
  const std::string out = tmp("bqa_phase.csv");
  CHECK(run_cli({"phase", "--a-max", "0.1", "--b-min", "-0.6", "--b-max", "-0.4",
                 "--grid", "0.05", "--out", out}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("A,B,m_s,order,energyDensity") != std::string::npos);
  CHECK(text.find("first_order_side") != std::string::npos);
  const std::string overlay = slurp(out + ".overlay.csv");
  CHECK(overlay.find("A_over_jz,B_over_jz") != std::string::npos);
  std::filesystem::remove(out);
  std::filesystem::remove(out + ".overlay.csv");
}

TEST_CASE("nested-check reports deviations") {
  const std::string out = tmp("bqa_nested.csv");
  CHECK(run_cli({"nested-check", "--n", "1", "--tf", "5", "--samples", "4",
                 "--tol", "1e-9", "--out", out}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("max_prob_deviation") != std::string::npos);
  std::filesystem::remove(out);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"single", "--protocol", "nonsense", "--out", "-"}) == 1);
  CHECK(run_cli({"no-such-command"}) == 1);
  CHECK(run_cli({"sampling", "--instance", "/nonexistent.json", "--out", "-"}) == 1);
  // capacity: 2^30 enumeration is refused
  const std::string big = tmp("bqa_big.json");
  {
    ProblemInstance inst;
    inst.n = 30;
    inst.fields.assign(30, 0.5);
    inst.bonds.push_back({0, 1, 1.0});
    save_instance(inst, big);
  }
  CHECK(run_cli({"sampling", "--instance", big, "--out", "-"}) == 3);
  std::filesystem::remove(big);
}
