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

#include "scarce_rl/agents/evolutionary.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "scarce_rl/agents/agent.h"
#include "scarce_rl/agents/refinement.h"

namespace scarce_rl {

void GaConfig::validate() const {
  if (population_size < 2) {
    throw std::invalid_argument("population_size must be at least 2");
  }
  if (!(mutation_noise >= 0.0)) {
    throw std::invalid_argument("mutation_noise must be non-negative");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw std::invalid_argument("mutation_rate must lie in [0, 1]");
  }
}

Policy random_policy(SeededRng& rng) {
  Policy p;
  for (int y = 0; y < kHorizon; ++y) {
    const double itn = rng.uniform();
    const double irs = rng.uniform();
    p[y] = Action(itn, irs);
  }
  return p;
}

void assign_fitness(std::vector<PopulationMember>& population) {
  if (population.empty()) return;
  auto [lo, hi] = std::minmax_element(
      population.begin(), population.end(),
      [](const auto& a, const auto& b) { return a.reward < b.reward; });
  const double min = lo->reward;
  const double span = hi->reward - min;
  for (PopulationMember& m : population) {
    m.fitness = span > 0.0 ? (m.reward - min) / span : 1.0;
  }
}

std::vector<double> roulette_probabilities(
    std::span<const PopulationMember> population) {
  if (population.empty()) {
    throw std::invalid_argument("roulette over an empty population");
  }
  double sum = 0.0;
  for (const PopulationMember& m : population) {
    if (m.fitness < 0.0) throw std::invalid_argument("negative fitness");
    sum += m.fitness;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("fitness sum must be positive");
  std::vector<double> p;
  p.reserve(population.size());
  for (const PopulationMember& m : population) p.push_back(m.fitness / sum);
  return p;
}

std::size_t roulette_select(std::span<const PopulationMember> population,
                            SeededRng& rng) {
  const std::vector<double> p = roulette_probabilities(population);
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last_positive = i;
    cumulative += p[i];
    if (u < cumulative) return i;
  }
  // Round-off left the cumulative sum a hair below 1.
  return last_positive;
}

Policy crossover_at(const Policy& p1, const Policy& p2, int cut) {
  if (cut < 1 || cut >= kHorizon) {
    throw std::invalid_argument("crossover cut must lie in 1..4");
  }
  Policy child = p2;
  for (int y = 0; y < cut; ++y) child[y] = p1[y];
  return child;
}

Policy crossover(const Policy& p1, const Policy& p2, CrossoverMode mode,
                 SeededRng& rng) {
  if (mode == CrossoverMode::kOrdered) {
    const int cut = 1 + static_cast<int>(rng.uniform_index(kHorizon - 1));
    return crossover_at(p1, p2, cut);
  }
  Policy child;
  for (int y = 0; y < kHorizon; ++y) {
    child[y] = rng.bernoulli(0.5) ? p1[y] : p2[y];
  }
  return child;
}

Policy mutate(const Policy& p, const GaConfig& config, SeededRng& rng) {
  std::array<bool, kHorizon> selected{};
  bool any = false;
  if (config.mutation_rate > 0.0) {
    while (!any) {
      for (int y = 0; y < kHorizon; ++y) {
        selected[y] = rng.bernoulli(config.mutation_rate);
        any = any || selected[y];
      }
    }
  } else {
    selected[rng.uniform_index(kHorizon)] = true;
  }

  Policy child = p;
  const double n = config.mutation_noise;
  for (int y = 0; y < kHorizon; ++y) {
    if (!selected[y]) continue;
    const double itn = p[y].itn() + rng.uniform(-n, n);
    const double irs = p[y].irs() + rng.uniform(-n, n);
    child[y] = clamp_action(itn, irs);
  }
  return child;
}

EpisodeRecord run_random_search(EpisodicEnv& env, SeededRng& rng,
                                int scored_years) {
  BestTracker tracker(scored_years);
  while (can_play_episode(env)) {
    tracker.offer(evaluate_policy(env, random_policy(rng)));
  }
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  return tracker.best();
}

GaResult run_ga(EpisodicEnv& env, const GaConfig& config, SeededRng& rng) {
  config.validate();
  GaResult out;
  BestTracker tracker;
  auto evaluate = [&](const Policy& p) {
    const EpisodeRecord rec = evaluate_policy(env, p);
    tracker.offer(rec);
    out.population.push_back({p, rec.total, 0.0});
  };

  for (int i = 0; i < config.population_size && can_play_episode(env); ++i) {
    evaluate(random_policy(rng));
  }
  while (can_play_episode(env)) {
    assign_fitness(out.population);
    std::vector<PopulationMember> wheel = out.population;
    if (config.elitist) {
      std::stable_sort(wheel.begin(), wheel.end(),
                       [](const auto& a, const auto& b) {
                         return a.reward > b.reward;
                       });
      wheel.resize(2);
      // Both finalists stay selectable even when one has min-max fitness 0.
      for (PopulationMember& m : wheel) m.fitness = 1.0;
    }
    const Policy& mother = wheel[roulette_select(wheel, rng)].policy;
    const Policy& father = wheel[roulette_select(wheel, rng)].policy;
    const Policy child =
        mutate(crossover(mother, father, config.crossover_mode, rng), config,
               rng);
    evaluate(child);
  }
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  assign_fitness(out.population);
  out.best = tracker.best();
  return out;
}

FullBreakResult run_full_sequence_break(EpisodicEnv& env, SeededRng& rng,
                                        double refine_distance) {
  FullBreakResult out;
  std::array<Action, kHorizon> best_action{};
  std::array<double, kHorizon> best_reward{};
  bool seen = false;

  auto play = [&](const Policy& p) {
    const EpisodeRecord rec = evaluate_policy(env, p);
    out.episodes.push_back(rec);
    return rec;
  };

  const std::vector<Action> coarse = discretize_action_space(0.3);
  for (const Action& a : coarse) {
    if (!can_play_episode(env)) break;
    Policy p;
    for (int y = 0; y < kHorizon; ++y) p[y] = a;
    const EpisodeRecord rec = play(p);
    for (int y = 0; y < kHorizon; ++y) {
      if (!seen || rec.yearly_rewards[y] > best_reward[y]) {
        best_reward[y] = rec.yearly_rewards[y];
        best_action[y] = a;
      }
    }
    seen = true;
  }
  if (!seen) throw BudgetExhausted("no budget left for a single episode");

  std::array<RefinementState, kHorizon> states;
  for (int y = 0; y < kHorizon; ++y) {
    states[y] = start_refinement(best_action[y], refine_distance, rng);
  }
  while (can_play_episode(env)) {
    Policy probe;
    for (int y = 0; y < kHorizon; ++y) probe[y] = states[y].a_next;
    const EpisodeRecord rec = play(probe);
    for (int y = 0; y < kHorizon; ++y) {
      const double r = rec.yearly_rewards[y];
      states[y] =
          refine_step(states[y], r, best_reward[y], refine_distance, rng);
      if (r > best_reward[y]) {
        best_reward[y] = r;
        best_action[y] = probe[y];
      }
    }
  }

  out.best = EpisodeRecord::from_rewards(Policy(best_action), best_reward);
  return out;
}

}  // namespace scarce_rl
