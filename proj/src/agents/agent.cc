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

#include "scarce_rl/agents/agent.h"

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "scarce_rl/agents/bayesopt.h"
#include "scarce_rl/agents/evolutionary.h"
#include "scarce_rl/agents/qlearning.h"

namespace scarce_rl {

bool BestTracker::offer(const EpisodeRecord& record) {
  const double score = record.partial_total(scored_years_);
  if (best_ && !(score > best_score_)) return false;
  best_ = record;
  best_score_ = score;
  return true;
}

AgentResult make_result(const BestTracker& tracker) {
  return {tracker.best(), tracker.best_score(), tracker.scored_years()};
}

namespace {

using Setter = std::function<void(const nlohmann::json&)>;

// Applies `config` through per-key setters; unknown keys are errors.
void apply_keys(const std::string& agent, const nlohmann::json& config,
                const std::map<std::string, Setter>& setters) {
  if (config.is_null()) return;
  if (!config.is_object()) {
    throw std::invalid_argument(agent + ": agent_config must be an object");
  }
  for (const auto& [key, value] : config.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument(agent + ": unknown config key \"" + key +
                                  "\"");
    }
    try {
      it->second(value);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(agent + ": bad value for \"" + key +
                                  "\": " + e.what());
    }
  }
}

template <typename T>
Setter set(T& field) {
  return [&field](const nlohmann::json& v) { field = v.get<T>(); };
}

GaConfig parse_ga(const nlohmann::json& j) {
  GaConfig c;
  apply_keys("ga", j,
             {{"population_size", set(c.population_size)},
              {"mutation_noise", set(c.mutation_noise)},
              {"mutation_rate", set(c.mutation_rate)},
              {"elitist", set(c.elitist)},
              {"crossover_mode", [&c](const nlohmann::json& v) {
                 const auto s = v.get<std::string>();
                 if (s == "random") {
                   c.crossover_mode = CrossoverMode::kRandom;
                 } else if (s == "ordered") {
                   c.crossover_mode = CrossoverMode::kOrdered;
                 } else {
                   throw std::invalid_argument("ga: crossover_mode must be "
                                               "\"random\" or \"ordered\"");
                 }
               }}});
  c.validate();
  return c;
}

std::map<std::string, Setter> q_setters(QConfig& c) {
  return {{"gamma", set(c.gamma)},
          {"epsilon0", set(c.epsilon0)},
          {"episodes_phase2", set(c.episodes_phase2)},
          {"grid_resolution_coarse", set(c.grid_resolution_coarse)},
          {"grid_resolution_fine", set(c.grid_resolution_fine)},
          {"refine_distance", set(c.refine_distance)},
          {"refine_probes", set(c.refine_probes)},
          {"epsilon_floor", set(c.epsilon_floor)},
          {"probe_mode",
           [&c](const nlohmann::json& v) {
             const auto s = v.get<std::string>();
             if (s == "packed") {
               c.probe_mode = ProbeMode::kPacked;
             } else if (s == "firstslot-only") {
               c.probe_mode = ProbeMode::kFirstSlotOnly;
             } else {
               throw std::invalid_argument(
                   "probe_mode must be \"packed\" or \"firstslot-only\"");
             }
           }},
          {"plain_schedule", [&c](const nlohmann::json& v) {
             const auto s = v.get<std::string>();
             if (s == "stretched") {
               c.plain_schedule = PlainSchedule::kStretched;
             } else if (s == "linear") {
               c.plain_schedule = PlainSchedule::kLinear;
             } else {
               throw std::invalid_argument(
                   "plain_schedule must be \"stretched\" or \"linear\"");
             }
           }}};
}

BoParams parse_bo(const std::string& id, const nlohmann::json& j) {
  BoParams p;
  apply_keys(id, j,
             {{"lengthscale", set(p.gp.lengthscale)},
              {"variance", set(p.gp.variance)},
              {"jitter", set(p.gp.jitter)},
              {"lengthscale_joint", set(p.lengthscale_joint)},
              {"kappa_explore", set(p.kappa_explore)},
              {"kappa_exploit", set(p.kappa_exploit)},
              {"grid_step", set(p.grid_step)},
              {"random_candidates", set(p.random_candidates)},
              {"local_candidates", set(p.local_candidates)},
              {"local_sigma", set(p.local_sigma)},
              {"bo1_year1_points", set(p.bo1_year1_points)},
              {"frontier_min_observations", set(p.frontier_min_observations)},
              {"bo2_seed_episodes", set(p.bo2_seed_episodes)},
              {"bo3_seed_episodes", set(p.bo3_seed_episodes)},
              {"bo3_refit_every", set(p.bo3_refit_every)},
              {"weight_resolution", set(p.weight_resolution)},
              {"bo3_jitter", set(p.bo3_jitter)},
              {"bo3_kappa", set(p.bo3_kappa)},
              {"filler", [&p](const nlohmann::json& v) {
                 const auto s = v.get<std::string>();
                 if (s == "random") {
                   p.filler = FillerMode::kRandom;
                 } else if (s == "incumbent") {
                   p.filler = FillerMode::kIncumbent;
                 } else {
                   throw std::invalid_argument(
                       "filler must be \"random\" or \"incumbent\"");
                 }
               }}});
  p.validate();
  return p;
}

class RandomSearchAgent : public Agent {
 public:
  explicit RandomSearchAgent(const nlohmann::json& j) {
    apply_keys("random_search", j, {{"horizon", set(horizon_)}});
    if (horizon_ < 1 || horizon_ > kHorizon) {
      throw std::invalid_argument("random_search: horizon must lie in 1..5");
    }
  }
  std::string id() const override { return "random_search"; }
  AgentResult run(EpisodicEnv& env, SeededRng& rng) override {
    const EpisodeRecord best = run_random_search(env, rng, horizon_);
    return {best, best.partial_total(horizon_), horizon_};
  }

 private:
  int horizon_ = kHorizon;
};

class GaAgent : public Agent {
 public:
  explicit GaAgent(const nlohmann::json& j) : config_(parse_ga(j)) {}
  std::string id() const override { return "ga"; }
  AgentResult run(EpisodicEnv& env, SeededRng& rng) override {
    const GaResult r = run_ga(env, config_, rng);
    return {r.best, r.best.total, kHorizon};
  }

 private:
  GaConfig config_;
};

class FullBreakAgent : public Agent {
 public:
  explicit FullBreakAgent(const nlohmann::json& j) {
    apply_keys("full_sequence_break", j,
               {{"refine_distance", set(refine_distance_)}});
    if (!(refine_distance_ > 0.0 && refine_distance_ <= 1.0)) {
      throw std::invalid_argument(
          "full_sequence_break: refine_distance must lie in (0, 1]");
    }
  }
  std::string id() const override { return "full_sequence_break"; }
  AgentResult run(EpisodicEnv& env, SeededRng& rng) override {
    const FullBreakResult r = run_full_sequence_break(env, rng, refine_distance_);
    return {r.best, r.best.total, kHorizon};
  }

 private:
  double refine_distance_ = 0.1;
};

class PlainQAgent : public Agent {
 public:
  explicit PlainQAgent(const nlohmann::json& j) {
    auto setters = q_setters(config_);
    setters.emplace("episodes", set(episodes_));
    apply_keys("qlearning", j, setters);
    config_.validate();
  }
  std::string id() const override { return "qlearning"; }
  AgentResult run(EpisodicEnv& env, SeededRng& rng) override {
    const int episodes =
        episodes_ > 0 ? episodes_ : env.budget().remaining_episodes();
    const QLearningResult r = run_plain_qlearning(env, config_, rng, episodes);
    return {r.best, r.best.total, kHorizon};
  }

 private:
  QConfig config_;
  int episodes_ = 0;  // 0: whatever the budget allows
};

class SeqBreakAgent : public Agent {
 public:
  explicit SeqBreakAgent(const nlohmann::json& j) {
    apply_keys("qlearning_seq_break", j, q_setters(config_));
    config_.validate();
  }
  std::string id() const override { return "qlearning_seq_break"; }
  AgentResult run(EpisodicEnv& env, SeededRng& rng) override {
    const QLearningResult r = run_qlearning_seq_break(env, config_, rng);
    return {r.best, r.best.total, kHorizon};
  }

 private:
  QConfig config_;
};

class BoAgent : public Agent {
 public:
  BoAgent(std::string id, const nlohmann::json& j)
      : id_(std::move(id)), params_(parse_bo(id_, j)) {}
  std::string id() const override { return id_; }
  AgentResult run(EpisodicEnv& env, SeededRng& rng) override {
    if (id_ == "bo1") {
      const Bo1Result r = run_bo1(env, params_, rng);
      return {r.best, r.best.total, kHorizon};
    }
    if (id_ == "bo2") {
      const EpisodeRecord best = run_bo2(env, params_, rng);
      return {best, best.total, kHorizon};
    }
    const Bo3Result r = run_bo3(env, params_, rng);
    return {r.best, r.best_subtotal, 2};
  }

 private:
  std::string id_;
  BoParams params_;
};

}  // namespace

std::vector<std::string> known_agent_ids() {
  return {"random_search", "ga",  "full_sequence_break", "qlearning",
          "qlearning_seq_break", "bo1", "bo2", "bo3"};
}

std::unique_ptr<Agent> make_agent(const std::string& id,
                                  const nlohmann::json& config) {
  if (id == "random_search") return std::make_unique<RandomSearchAgent>(config);
  if (id == "ga") return std::make_unique<GaAgent>(config);
  if (id == "full_sequence_break") {
    return std::make_unique<FullBreakAgent>(config);
  }
  if (id == "qlearning") return std::make_unique<PlainQAgent>(config);
  if (id == "qlearning_seq_break") {
    return std::make_unique<SeqBreakAgent>(config);
  }
  if (id == "bo1" || id == "bo2" || id == "bo3") {
    return std::make_unique<BoAgent>(id, config);
  }
  throw std::invalid_argument("unknown agent \"" + id + "\"");
}

}  // namespace scarce_rl
