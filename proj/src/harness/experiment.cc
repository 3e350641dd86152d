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

#include "scarce_rl/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "scarce_rl/agents/agent.h"
#include "scarce_rl/core/budget.h"
#include "scarce_rl/core/rng.h"
#include "scarce_rl/environments/env_config.h"
#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

void ExperimentSpec::validate() const {
  if (agent.empty()) throw std::invalid_argument("spec: agent is required");
  if (runs < 1) throw std::invalid_argument("spec: runs must be >= 1");
  if (episodes < 1) throw std::invalid_argument("spec: episodes must be >= 1");
  if (static_cast<int>(seeds.size()) != runs) {
    throw std::invalid_argument(
        fmt::format("spec: {} seeds given for {} runs", seeds.size(), runs));
  }
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
  static const std::set<std::string> kKeys = {"env",  "agent",    "agent_config",
                                              "runs", "episodes", "seeds"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) {
      throw std::invalid_argument("spec: unknown key \"" + key + "\"");
    }
  }
  ExperimentSpec s;
  try {
    s.env = j.value("env", s.env);
    s.agent = j.at("agent").get<std::string>();
    if (j.contains("agent_config") && !j["agent_config"].is_null()) {
      s.agent_config = j["agent_config"];
    }
    s.episodes = j.value("episodes", s.episodes);
    if (j.contains("seeds")) {
      s.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
      s.runs = j.value("runs", static_cast<int>(s.seeds.size()));
    } else {
      s.runs = j.value("runs", s.runs);
      for (int i = 1; i <= s.runs; ++i) s.seeds.push_back(i);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec: ") + e.what());
  }
  s.validate();
  return s;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  return {{"env", spec.env},
          {"agent", spec.agent},
          {"agent_config", spec.agent_config},
          {"runs", spec.runs},
          {"episodes", spec.episodes},
          {"seeds", spec.seeds}};
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return spec_from_json(j);
}

void apply_overrides(ExperimentSpec& spec, const SpecOverrides& o) {
  if (o.episodes) spec.episodes = *o.episodes;
  if (o.runs) {
    if (*o.runs < 1) throw std::invalid_argument("runs must be >= 1");
    spec.runs = *o.runs;
  }
  if (o.seed) {
    spec.seeds.clear();
    for (int i = 0; i < spec.runs; ++i) spec.seeds.push_back(*o.seed + i);
  } else if (o.runs) {
    const std::size_t n = static_cast<std::size_t>(spec.runs);
    if (spec.seeds.size() > n) spec.seeds.resize(n);
    std::uint64_t next = spec.seeds.empty() ? 1 : spec.seeds.back() + 1;
    while (spec.seeds.size() < n) spec.seeds.push_back(next++);
  }
  spec.validate();
}

namespace {

RunResult run_once(const ExperimentSpec& spec, const EnvConfig& base, int run) {
  const std::uint64_t seed = spec.seeds[run];
  EnvConfig config = base;
  // Noise stream per run, independent of the agent's stream.
  set_env_seed(config, splitmix64(env_seed(base) ^ splitmix64(seed)));
  BudgetedEnv env(config, Budget(spec.episodes * kHorizon, spec.episodes));
  SeededRng rng(seed);
  const AgentResult r = make_agent(spec.agent, spec.agent_config)->run(env, rng);
  RunResult out;
  out.run = run;
  out.seed = seed;
  out.best = r.best;
  out.score = r.score;
  out.evaluations_used = env.budget().used_evaluations();
  out.episodes_used = env.budget().used_episodes();
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();
  const EnvConfig base = resolve_env(spec.env);
  validate(base);
  make_agent(spec.agent, spec.agent_config);  // config errors surface here

  ExperimentResult out;
  out.spec = spec;
  out.runs.resize(spec.runs);
  std::vector<std::exception_ptr> errors(spec.runs);

  auto work = [&](int i) {
    try {
      out.runs[i] = run_once(spec, base, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const int workers = std::clamp(threads, 1, spec.runs);
  if (workers == 1) {
    for (int i = 0; i < spec.runs; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < spec.runs; i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Lowest failing run index wins so the report does not depend on timing.
  for (int i = 0; i < spec.runs; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw RunError(i, fmt::format("run {} (seed {}): {}", i, spec.seeds[i],
                                    e.what()));
    }
  }

  double sum = 0.0;
  for (const RunResult& r : out.runs) sum += r.score;
  out.mean_score = sum / spec.runs;
  if (spec.runs > 1) {
    double ss = 0.0;
    for (const RunResult& r : out.runs) {
      ss += (r.score - out.mean_score) * (r.score - out.mean_score);
    }
    out.std_score = std::sqrt(ss / (spec.runs - 1));
  }
  return out;
}

namespace {

void check_paired(const ExperimentSpec& first, const ExperimentSpec& other) {
  if (other.env != first.env) {
    throw std::invalid_argument("compared specs use different envs: " +
                                first.env + " vs " + other.env);
  }
  if (other.seeds != first.seeds) {
    throw std::invalid_argument("compared specs use different seeds");
  }
  if (other.episodes != first.episodes) {
    throw std::invalid_argument("compared specs use different episode caps");
  }
}

int baseline_index(std::span<const ExperimentSpec> specs) {
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].agent == "random_search") return static_cast<int>(i);
  }
  throw std::invalid_argument("comparison needs a random_search baseline");
}

}  // namespace

std::vector<ComparisonRow> compare_agents(
    std::span<const ExperimentResult> results) {
  std::vector<ExperimentSpec> specs;
  for (const ExperimentResult& r : results) specs.push_back(r.spec);
  const int base = baseline_index(specs);
  for (const ExperimentSpec& s : specs) check_paired(specs.front(), s);

  const double base_mean = results[base].mean_score;
  std::vector<ComparisonRow> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    ComparisonRow row;
    row.agent = results[i].spec.agent;
    row.mean_best_reward = results[i].mean_score;
    row.std_best_reward = results[i].std_score;
    // Ratio first, so an equal mean gives exactly 100.
    row.pct_of_baseline = static_cast<int>(i) == base
                              ? 100.0
                              : 100.0 * (results[i].mean_score / base_mean);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentResult> run_comparison(
    std::span<const ExperimentSpec> specs, int threads) {
  if (specs.empty()) throw std::invalid_argument("no specs to compare");
  baseline_index(specs);
  for (const ExperimentSpec& s : specs) {
    s.validate();
    check_paired(specs.front(), s);
  }
  std::vector<ExperimentResult> out;
  for (const ExperimentSpec& s : specs) out.push_back(run_experiment(s, threads));
  return out;
}

}  // namespace scarce_rl
