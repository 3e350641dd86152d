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

#ifndef SCARCE_RL_AGENTS_EVOLUTIONARY_H_
#define SCARCE_RL_AGENTS_EVOLUTIONARY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "scarce_rl/core/action.h"
#include "scarce_rl/core/rng.h"
#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

struct PopulationMember {
  Policy policy;
  double reward = 0.0;
  // Min-max normalized reward within the current population.
  double fitness = 0.0;
};

enum class CrossoverMode { kRandom, kOrdered };

struct GaConfig {
  int population_size = 6;
  double mutation_noise = 0.05;
  double mutation_rate = 0.2;
  CrossoverMode crossover_mode = CrossoverMode::kRandom;
  // Restrict the wheel to the two best members.
  bool elitist = false;

  void validate() const;
};

Policy random_policy(SeededRng& rng);

// Sets fitness to (reward - min) / (max - min); all members get 1 when every
// reward is equal.
void assign_fitness(std::vector<PopulationMember>& population);

// p_j = f_j / sum_i f_i. Throws std::invalid_argument for an empty
// population or a non-positive fitness sum.
std::vector<double> roulette_probabilities(
    std::span<const PopulationMember> population);

// Index of the selected member. Members with zero probability are never
// returned.
std::size_t roulette_select(std::span<const PopulationMember> population,
                            SeededRng& rng);

Policy crossover(const Policy& p1, const Policy& p2, CrossoverMode mode,
                 SeededRng& rng);
// Years 1..cut from p1, years cut+1..5 from p2; cut in 1..4.
Policy crossover_at(const Policy& p1, const Policy& p2, int cut);

Policy mutate(const Policy& p, const GaConfig& config, SeededRng& rng);

// Plays 20 uniform random policies (as many as the budget allows). Episodes
// are ranked on their first `scored_years` yearly rewards.
EpisodeRecord run_random_search(EpisodicEnv& env, SeededRng& rng,
                                int scored_years = kHorizon);

struct GaResult {
  EpisodeRecord best;
  std::vector<PopulationMember> population;
};

GaResult run_ga(EpisodicEnv& env, const GaConfig& config, SeededRng& rng);

struct FullBreakResult {
  // Per-year argmax actions with their recorded rewards; not replayed.
  EpisodeRecord best;
  std::vector<EpisodeRecord> episodes;
};

// Grids all five years at once on the 0.3 lattice for 16 episodes, then
// refines every year's incumbent in parallel for the remaining episodes.
FullBreakResult run_full_sequence_break(EpisodicEnv& env, SeededRng& rng,
                                        double refine_distance = 0.1);

}  // namespace scarce_rl

#endif  // SCARCE_RL_AGENTS_EVOLUTIONARY_H_
