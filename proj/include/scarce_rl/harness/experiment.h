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

#ifndef SCARCE_RL_HARNESS_EXPERIMENT_H_
#define SCARCE_RL_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scarce_rl/core/action.h"

namespace scarce_rl {

// One experiment: `runs` independent runs of one agent on one environment,
// each with a fresh env, a fresh agent and its own seed.
struct ExperimentSpec {
  std::string env = "env_a";  // env_a, env_b or a config file path
  std::string agent;
  nlohmann::json agent_config = nlohmann::json::object();
  int runs = 10;
  // Episode allowance per run; the evaluation allowance is 5 per episode.
  int episodes = 20;
  std::vector<std::uint64_t> seeds;

  // Throws std::invalid_argument on inconsistent fields.
  void validate() const;
};

// Parses {env, agent, agent_config?, runs?, episodes?, seeds?}. Missing
// seeds default to 1..runs. Unknown keys are rejected.
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec load_experiment_spec(const std::string& path);

// Command-line overrides. `seed` replaces the seed list by seed, seed+1, ...;
// `runs` alone truncates the list or extends it past its last element.
struct SpecOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> episodes;
};
void apply_overrides(ExperimentSpec& spec, const SpecOverrides& overrides);

struct RunResult {
  int run = 0;  // 0-based index into the seed list
  std::uint64_t seed = 0;
  EpisodeRecord best;
  double score = 0.0;  // what the agent is ranked on
  int evaluations_used = 0;
  int episodes_used = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<RunResult> runs;  // ordered by run index
  double mean_score = 0.0;
  double std_score = 0.0;  // sample standard deviation, 0 for one run
};

// Failure inside one run; the message names the run index and seed.
class RunError : public std::runtime_error {
 public:
  RunError(int run, const std::string& what)
      : std::runtime_error(what), run_(run) {}
  int run() const { return run_; }

 private:
  int run_;
};

// Runs every seed. `threads` > 1 spreads runs over worker threads; results
// are identical to a sequential execution. Configuration errors throw
// std::invalid_argument before any run starts.
ExperimentResult run_experiment(const ExperimentSpec& spec, int threads = 1);

struct ComparisonRow {
  std::string agent;
  double mean_best_reward = 0.0;
  double std_best_reward = 0.0;
  double pct_of_baseline = 0.0;
};

// Rows in input order, percentages relative to the first random_search
// experiment. Throws std::invalid_argument when there is none or when the
// experiments differ in env or seeds.
std::vector<ComparisonRow> compare_agents(
    std::span<const ExperimentResult> results);

// Runs every spec, then compares. Env and seeds are checked before running.
std::vector<ExperimentResult> run_comparison(
    std::span<const ExperimentSpec> specs, int threads = 1);

}  // namespace scarce_rl

#endif  // SCARCE_RL_HARNESS_EXPERIMENT_H_
