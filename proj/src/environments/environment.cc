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

#include "scarce_rl/environments/environment.h"

#include <stdexcept>
#include <utility>

namespace scarce_rl {

CarryoverEnv::CarryoverEnv(EnvConfigA config)
    : config_(std::move(config)), noise_rng_(config_.seed) {
  validate(config_);
}

double CarryoverEnv::step(int year, const Action& action,
                          std::span<const Action> history) {
  if (history.size() != static_cast<std::size_t>(year - 1)) {
    throw std::invalid_argument("history must hold exactly year - 1 actions");
  }
  std::optional<Action> prev;
  if (!history.empty()) prev = history.back();
  return year_reward_a(year, action, prev, config_, &noise_rng_);
}

HistoryEnv::HistoryEnv(EnvConfigB config)
    : config_(std::move(config)), noise_rng_(config_.seed) {
  validate(config_);
}

double HistoryEnv::step(int year, const Action& action,
                        std::span<const Action> history) {
  return year_reward_b(year, action, history, config_, &noise_rng_);
}

std::unique_ptr<EnvironmentModel> make_environment(const EnvConfig& config) {
  return std::visit(
      [](const auto& c) -> std::unique_ptr<EnvironmentModel> {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, EnvConfigA>) {
          return std::make_unique<CarryoverEnv>(c);
        } else {
          return std::make_unique<HistoryEnv>(c);
        }
      },
      config);
}

BudgetedEnv::BudgetedEnv(std::unique_ptr<EnvironmentModel> inner,
                         Budget budget)
    : inner_(std::move(inner)), budget_(budget) {
  if (!inner_) throw std::invalid_argument("BudgetedEnv needs a model");
  history_.reserve(kHorizon);
}

BudgetedEnv::BudgetedEnv(const EnvConfig& config, Budget budget)
    : BudgetedEnv(make_environment(config), budget) {}

StepResult BudgetedEnv::step(const Action& action) {
  if (budget_.remaining_evaluations() <= 0) {
    throw BudgetExhausted("evaluation budget exhausted");
  }
  if (done_) throw EpisodeDone("episode finished; reset before stepping");
  const bool starts_episode = history_.empty();
  budget_.charge_evaluation(starts_episode);
  if (starts_episode) inner_->reset();

  StepResult r;
  r.reward = inner_->step(year_, action, history_);
  history_.push_back(action);
  if (year_ == kHorizon) {
    done_ = true;
    budget_.close_episode();
  } else {
    ++year_;
  }
  r.year = year_;
  r.done = done_;
  r.remaining_evaluations = budget_.remaining_evaluations();
  r.remaining_episodes = budget_.remaining_episodes();
  return r;
}

void BudgetedEnv::reset() {
  if (!history_.empty() && !done_) budget_.close_episode();
  history_.clear();
  year_ = 1;
  done_ = false;
}

bool can_play_episode(const EpisodicEnv& env) {
  const Budget b = env.budget();
  return b.remaining_evaluations() >= kHorizon && b.remaining_episodes() >= 1;
}

EpisodeRecord evaluate_policy(EpisodicEnv& env, const Policy& policy) {
  if (env.current_year() != 1 || env.episode_done()) env.reset();
  if (!can_play_episode(env)) {
    throw BudgetExhausted("not enough budget left for a full episode");
  }
  std::array<double, kHorizon> rewards{};
  for (int y = 0; y < kHorizon; ++y) rewards[y] = env.step(policy[y]).reward;
  return EpisodeRecord::from_rewards(policy, rewards);
}

}  // namespace scarce_rl
