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

#include "scarce_rl/core/budget.h"

#include <limits>

namespace scarce_rl {

Budget::Budget(int max_evaluations, int max_episodes)
    : max_evaluations_(max_evaluations), max_episodes_(max_episodes) {
  if (max_evaluations < 0 || max_episodes < 0) {
    throw std::invalid_argument("budget limits must be non-negative");
  }
}

Budget Budget::unlimited() {
  return Budget(std::numeric_limits<int>::max() / 2,
                std::numeric_limits<int>::max() / 2);
}

void Budget::charge_evaluation(bool starts_episode) {
  if (used_evaluations_ >= max_evaluations_) {
    throw BudgetExhausted("evaluation budget exhausted");
  }
  if (starts_episode && used_episodes_ >= max_episodes_) {
    throw BudgetExhausted("episode budget exhausted");
  }
  ++used_evaluations_;
}

void Budget::close_episode() {
  if (used_episodes_ < max_episodes_) ++used_episodes_;
}

}  // namespace scarce_rl
