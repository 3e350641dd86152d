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

#ifndef SCARCE_RL_CORE_BUDGET_H_
#define SCARCE_RL_CORE_BUDGET_H_

#include <stdexcept>
#include <string>

namespace scarce_rl {

// Raised when a step would exceed the evaluation or episode allowance.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised when stepping past the final year without a reset.
class EpisodeDone : public std::logic_error {
 public:
  explicit EpisodeDone(const std::string& what) : std::logic_error(what) {}
};

// Evaluation allowance shared by every agent: 100 per-year reward queries,
// grouped into at most 20 episodes.
class Budget {
 public:
  static constexpr int kDefaultEvaluations = 100;
  static constexpr int kDefaultEpisodes = 20;

  Budget() = default;
  // Throws std::invalid_argument on negative limits.
  Budget(int max_evaluations, int max_episodes);

  // A budget large enough that no realistic run reaches it.
  static Budget unlimited();

  int max_evaluations() const { return max_evaluations_; }
  int max_episodes() const { return max_episodes_; }
  int used_evaluations() const { return used_evaluations_; }
  int used_episodes() const { return used_episodes_; }
  int remaining_evaluations() const {
    return max_evaluations_ - used_evaluations_;
  }
  int remaining_episodes() const { return max_episodes_ - used_episodes_; }

  // Charges one evaluation. `starts_episode` marks the first step of an
  // episode, which additionally requires an unused episode slot.
  void charge_evaluation(bool starts_episode);
  // Counts a finished (or forfeited) episode.
  void close_episode();

  friend bool operator==(const Budget&, const Budget&) = default;

 private:
  int max_evaluations_ = kDefaultEvaluations;
  int max_episodes_ = kDefaultEpisodes;
  int used_evaluations_ = 0;
  int used_episodes_ = 0;
};

}  // namespace scarce_rl

#endif  // SCARCE_RL_CORE_BUDGET_H_
