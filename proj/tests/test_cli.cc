// Copyright 2026 The scarce-rl Authors.
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SCARCE_RL_CLI;
const std::string kSrc = SCARCE_RL_SOURCE_DIR;

struct TempDir {
  TempDir() {
    char tmpl[] = "/tmp/scarce_rl_cli_XXXXXX";
    path = mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return path + "/" + name; }
  std::string path;
};

// Runs the CLI with stdout sent to `out` (or discarded); returns the exit code.
int cli(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = kCli + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string spec(const std::string& name) { return kSrc + "/specs/" + name; }

}  // namespace

TEST_CASE("run writes one CSV row per run") {
  TempDir tmp;
  REQUIRE(cli("run " + spec("env_a_qseq.json") + " -o " + tmp.file("out.csv")) == 0);
  const auto rows = lines(slurp(tmp.file("out.csv")));
  CHECK(rows.size() == 11);
  CHECK(rows[0].rfind("agent,env,run,seed", 0) == 0);
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir tmp;
  const std::string args = "run " + spec("env_b_ga.json") + " --runs 1 --seed 42 -o ";
  REQUIRE(cli(args + tmp.file("a.csv")) == 0);
  REQUIRE(cli(args + tmp.file("b.csv")) == 0);
  CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
  CHECK(lines(slurp(tmp.file("a.csv"))).size() == 2);
  CHECK(slurp(tmp.file("a.csv")).find(",0,42,") != std::string::npos);

  REQUIRE(cli("run " + spec("env_a_bo3.json") + " --threads 4 --format json -o " +
              tmp.file("p.json")) == 0);
  REQUIRE(cli("run " + spec("env_a_bo3.json") + " --format json -o " +
              tmp.file("s.json")) == 0);
  CHECK(slurp(tmp.file("p.json")) == slurp(tmp.file("s.json")));
  const auto j = nlohmann::json::parse(slurp(tmp.file("s.json")));
  CHECK(j["experiments"][0]["runs"].size() == 10);
}

TEST_CASE("run error exits") {
  CHECK(cli("run /nonexistent/spec.json") == 2);
  CHECK(cli("run " + spec("env_a_ga.json") + " --format xml") == 2);
  CHECK(cli("run") == 2);
  CHECK(cli("frobnicate") == 2);
  TempDir tmp;
  std::ofstream(tmp.file("bad.json")) << R"({"agent":"ga","colour":"red"})";
  CHECK(cli("run " + tmp.file("bad.json")) == 2);
  std::ofstream(tmp.file("short.json"))
      << R"({"agent":"qlearning_seq_break","runs":1,"episodes":2})";
  CHECK(cli("run " + tmp.file("short.json")) == 1);
  CHECK(cli("run " + spec("env_a_ga.json") + " -o /nonexistent/dir/out.csv") == 1);
}

TEST_CASE("compare") {
  TempDir tmp;
  SUBCASE("baseline only") {
    REQUIRE(cli("compare " + spec("env_a_random.json") + " -o " + tmp.file("c.csv")) == 0);
    const auto rows = lines(slurp(tmp.file("c.csv")));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("random_search,", 0) == 0);
    CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "100");
  }
  SUBCASE("five-agent suite") {
    const std::string specs = spec("env_a_random.json") + " " + spec("env_a_ga.json") +
                              " " + spec("env_a_plainq.json") + " " +
                              spec("env_a_qseq.json") + " " +
                              spec("env_a_fullbreak.json");
    REQUIRE(cli("compare " + specs + " --runs 3", tmp.file("table.txt")) == 0);
    const auto text = lines(slurp(tmp.file("table.txt")));
    REQUIRE(text.size() == 6);
    CHECK(text[1].rfind("random_search", 0) == 0);
    CHECK(text[1].find("100.0%") != std::string::npos);

    REQUIRE(cli("compare " + specs + " --runs 3 --format json", tmp.file("t.json")) == 0);
    const auto j = nlohmann::json::parse(slurp(tmp.file("t.json")));
    REQUIRE(j["rows"].size() == 5);
    CHECK(j["rows"][0]["agent"] == "random_search");
    CHECK(j["rows"][4]["agent"] == "full_sequence_break");
  }
  SUBCASE("mismatched envs") {
    CHECK(cli("compare " + spec("env_a_random.json") + " " + spec("env_b_ga.json")) == 2);
  }
  SUBCASE("no baseline") {
    CHECK(cli("compare " + spec("env_a_ga.json")) == 2);
  }
}

TEST_CASE("landscape") {
  TempDir tmp;
  REQUIRE(cli("landscape env_a --year 1 -n 40 -o " + tmp.file("l.csv")) == 0);
  CHECK(lines(slurp(tmp.file("l.csv"))).size() == 1601);

  REQUIRE(cli("landscape env_a -n 2 -o " + tmp.file("small.csv")) == 0);
  const auto small = lines(slurp(tmp.file("small.csv")));
  CHECK(small.size() == 5);

  REQUIRE(cli("landscape env_b --year 3 -n 7 -o " + tmp.file("raw.csv")) == 0);
  REQUIRE(cli("landscape env_b --year 3 -n 7 --scale-display -o " +
              tmp.file("scaled.csv")) == 0);
  const auto raw = lines(slurp(tmp.file("raw.csv")));
  const auto scaled = lines(slurp(tmp.file("scaled.csv")));
  REQUIRE(raw.size() == scaled.size());
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const double a = std::stod(raw[i].substr(raw[i].rfind(',') + 1));
    const double b = std::stod(scaled[i].substr(scaled[i].rfind(',') + 1));
    CHECK(b == a / 100.0);
  }

  REQUIRE(cli("landscape " + kSrc + "/configs/env_a.json -n 3 --format json",
              tmp.file("l.json")) == 0);
  CHECK(nlohmann::json::parse(slurp(tmp.file("l.json")))["cells"].size() == 9);
  CHECK(cli("landscape env_a --year 9") == 2);
  CHECK(cli("landscape /nonexistent.json") != 0);
}

TEST_CASE("demo against an in-process oracle") {
  TempDir tmp;
  REQUIRE(cli("demo --agent qlearning_seq_break --env env_b --seed 5 -o " +
              tmp.file("d.json")) == 0);
  const auto j = nlohmann::json::parse(slurp(tmp.file("d.json")));
  CHECK(j["identical"] == true);
  CHECK(cli("demo --agent nope") == 2);
}
