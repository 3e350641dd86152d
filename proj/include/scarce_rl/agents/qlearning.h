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

#ifndef SCARCE_RL_AGENTS_QLEARNING_H_
#define SCARCE_RL_AGENTS_QLEARNING_H_

#include <optional>
#include <vector>

#include "scarce_rl/agents/refinement.h"
#include "scarce_rl/core/action.h"
#include "scarce_rl/core/rng.h"
#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

// Where phase-1 probes of the first-year search are played.
enum class ProbeMode {
  // All five step slots of four episodes carry probes; every probe reward is
  // attributed to the first-year surface. 20 evaluations, 4 episodes.
  kPacked,
  // Only the first step of an episode carries a probe; the remaining years
  // of those episodes run ordinary Q-learning steps.
  kFirstSlotOnly,
};

// Exploration decay for plain Q-learning.
enum class PlainSchedule {
  // 0.8 - e / (1.2 * episodes): the sequence-breaking schedule stretched to
  // the run length.
  kStretched,
  // Linear from epsilon0 down to epsilon_floor over the run.
  kLinear,
};

struct QConfig {
  double gamma = 0.9;
  double epsilon0 = 0.8;
  int episodes_phase2 = 16;
  double grid_resolution_coarse = 0.3;
  double grid_resolution_fine = 0.1;
  double refine_distance = 0.1;
  int refine_probes = 4;
  ProbeMode probe_mode = ProbeMode::kPacked;
  PlainSchedule plain_schedule = PlainSchedule::kStretched;
  double epsilon_floor = 0.05;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// Tabular action values over (year, grid action), with visit counts that
// start at 1 and drive the 1/N learning rate.
class QTable {
 public:
  explicit QTable(std::vector<Action> grid);

  const std::vector<Action>& grid() const { return grid_; }
  // Throws std::invalid_argument for actions that are not grid points.
  int index_of(const Action& a) const;

  double value(int year, int action_index) const;
  int visits(int year, int action_index) const;
  double max_value(int year) const;
  // Lowest index among the maximal entries.
  int argmax(int year) const;

  // Q <- Q + (1/N)(reward + gamma * max_a' Q(next_year, a') - Q), then
  // N <- N + 1. A missing next_year is terminal and bootstraps with 0.
  void update(int year, const Action& action, double reward,
              std::optional<int> next_year, double gamma);

 private:
  std::size_t slot(int year, int action_index) const;

  std::vector<Action> grid_;
  std::vector<double> values_;
  std::vector<int> visits_;
};

// 0.8 - e / (16 * 1.2) for e in 0..15.
double epsilon_schedule(int episode);
// The same slope, stretched over `episodes` episodes.
double stretched_epsilon(int episode, int episodes, double epsilon0 = 0.8);
double linear_epsilon(int episode, int episodes, double epsilon0,
                      double floor);

// With probability epsilon a uniform grid action, otherwise the greedy one.
Action epsilon_greedy(const QTable& table, int year, double epsilon,
                      SeededRng& rng);

// Greedy action per year.
Policy greedy_policy(const QTable& table);

struct FirstYearSearch {
  Action a_max;
  double reward_max = 0.0;
  int evaluations_used = 0;
  // Coarse-grid probes in the order they were played.
  std::vector<Action> grid_probes;
  // Refinement probes in the order they were played.
  std::vector<Action> refine_probes;
  // Policies and rewards of the episodes the search played.
  std::vector<EpisodeRecord> episodes;
};

// Coarse 4x4 grid over the first-year surface followed by directional
// refinement. In kPacked mode the probes fill every step of four episodes.
// In kFirstSlotOnly mode only step 1 carries a probe and `table` (when
// given) learns from the remaining years with exploration epsilon0.
FirstYearSearch first_year_search(EpisodicEnv& env, const QConfig& config,
                                  SeededRng& rng, QTable* table = nullptr);

struct QLearningResult {
  EpisodeRecord best;
  QTable table;
  std::optional<FirstYearSearch> first_year;
  // Every episode the learning phase played, in order.
  std::vector<EpisodeRecord> episodes;
};

// Epsilon-greedy tabular Q-learning over all five years.
QLearningResult run_plain_qlearning(EpisodicEnv& env, const QConfig& config,
                                    SeededRng& rng, int episodes);

// First-year search, then Q-learning on years 2..5 with year 1 pinned to
// the first-year incumbent. best.policy is the returned plan.
QLearningResult run_qlearning_seq_break(EpisodicEnv& env,
                                        const QConfig& config,
                                        SeededRng& rng);

}  // namespace scarce_rl

#endif  // SCARCE_RL_AGENTS_QLEARNING_H_
