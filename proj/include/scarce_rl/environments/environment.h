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

#ifndef SCARCE_RL_ENVIRONMENTS_ENVIRONMENT_H_
#define SCARCE_RL_ENVIRONMENTS_ENVIRONMENT_H_

#include <memory>
#include <span>
#include <vector>

#include "scarce_rl/core/action.h"
#include "scarce_rl/core/budget.h"
#include "scarce_rl/core/rng.h"
#include "scarce_rl/environments/env_config.h"

namespace scarce_rl {

// Reward simulator. Years always advance by one regardless of the action,
// so the only state is the year and the actions already taken.
class EnvironmentModel {
 public:
  virtual ~EnvironmentModel() = default;

  // Reward of `action` in `year` (1-based) given the actions of years
  // 1..year-1. Draws noise when the model is noisy.
  virtual double step(int year, const Action& action,
                      std::span<const Action> history) = 0;
  // Start-of-episode hook. The noise stream is not rewound.
  virtual void reset() {}
};

class CarryoverEnv : public EnvironmentModel {
 public:
  explicit CarryoverEnv(EnvConfigA config);
  double step(int year, const Action& action,
              std::span<const Action> history) override;
  const EnvConfigA& config() const { return config_; }

 private:
  EnvConfigA config_;
  SeededRng noise_rng_;
};

class HistoryEnv : public EnvironmentModel {
 public:
  explicit HistoryEnv(EnvConfigB config);
  double step(int year, const Action& action,
              std::span<const Action> history) override;
  const EnvConfigB& config() const { return config_; }

 private:
  EnvConfigB config_;
  SeededRng noise_rng_;
};

// Validates the config and builds the matching model.
std::unique_ptr<EnvironmentModel> make_environment(const EnvConfig& config);

// Outcome of one metered step. `year` is the year the next step would play;
// when `done` is set it stays at the final year.
struct StepResult {
  double reward = 0.0;
  int year = 1;
  bool done = false;
  int remaining_evaluations = 0;
  int remaining_episodes = 0;
};

// What every agent consumes: an episodic, budget-metered environment. Local
// (BudgetedEnv) and remote (RemoteEnv) implementations are interchangeable.
class EpisodicEnv {
 public:
  virtual ~EpisodicEnv() = default;

  // Throws BudgetExhausted or EpisodeDone.
  virtual StepResult step(const Action& action) = 0;
  // Starts a new episode. Resetting mid-episode forfeits that episode.
  virtual void reset() = 0;
  virtual Budget budget() const = 0;
  // Year the next step plays (1-based).
  virtual int current_year() const = 0;
  virtual bool episode_done() const = 0;
};

class BudgetedEnv : public EpisodicEnv {
 public:
  BudgetedEnv(std::unique_ptr<EnvironmentModel> inner, Budget budget = {});
  BudgetedEnv(const EnvConfig& config, Budget budget = {});

  StepResult step(const Action& action) override;
  void reset() override;
  Budget budget() const override { return budget_; }
  int current_year() const override { return year_; }
  bool episode_done() const override { return done_; }

  const std::vector<Action>& history() const { return history_; }

 private:
  std::unique_ptr<EnvironmentModel> inner_;
  Budget budget_;
  int year_ = 1;
  bool done_ = false;
  std::vector<Action> history_;
};

// Plays a whole policy from year 1. Resets first when an episode is in
// progress or finished. Checks up front that a full episode fits in the
// remaining budget and throws BudgetExhausted otherwise.
EpisodeRecord evaluate_policy(EpisodicEnv& env, const Policy& policy);

// True when env can still play a complete episode from a fresh start.
bool can_play_episode(const EpisodicEnv& env);

}  // namespace scarce_rl

#endif  // SCARCE_RL_ENVIRONMENTS_ENVIRONMENT_H_
