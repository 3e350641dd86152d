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

#ifndef SCARCE_RL_CORE_ACTION_H_
#define SCARCE_RL_CORE_ACTION_H_

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace scarce_rl {

// Number of simulated years per episode. Single definition point.
inline constexpr int kHorizon = 5;

// One year's intervention pair. Both coordinates are population coverage
// fractions and always lie in [0, 1].
class Action {
 public:
  Action() = default;
  // Throws std::invalid_argument when a coordinate is outside [0, 1] or NaN.
  Action(double itn, double irs);

  double itn() const { return itn_; }
  double irs() const { return irs_; }

  friend bool operator==(const Action&, const Action&) = default;

 private:
  double itn_ = 0.0;
  double irs_ = 0.0;
};

// Clamps each coordinate into [0, 1]. NaN maps to 0.
Action clamp_action(double itn, double irs);

double squared_distance(const Action& a, const Action& b);

// Row-major grid over the unit square (itn outer, irs inner).
//
// resolution 0.1 yields {0.0, ..., 0.9}^2 (100 pairs, 1.0 excluded) and 0.3
// yields {0.0, 0.3, 0.6, 0.9}^2. Any other resolution in (0, 1] walks
// 0, r, 2r, ... up to 1. Coordinates are index * r in one multiplication,
// rounded to one decimal when r itself has one decimal digit.
std::vector<Action> discretize_action_space(double resolution);

// Index of `a` inside `grid`, or -1 when it is not a grid point (compared
// with a 1e-9 tolerance per coordinate).
int grid_index(const std::vector<Action>& grid, const Action& a);

// A fixed five-year plan.
class Policy {
 public:
  Policy() = default;
  explicit Policy(const std::array<Action, kHorizon>& actions)
      : actions_(actions) {}
  // Throws std::invalid_argument unless exactly kHorizon actions are given.
  explicit Policy(const std::vector<Action>& actions);

  const Action& operator[](int year_index) const {
    return actions_[year_index];
  }
  Action& operator[](int year_index) { return actions_[year_index]; }
  const std::array<Action, kHorizon>& actions() const { return actions_; }

  auto begin() const { return actions_.begin(); }
  auto end() const { return actions_.end(); }

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::array<Action, kHorizon> actions_{};
};

// Result of playing one policy for a full episode.
struct EpisodeRecord {
  Policy policy;
  std::array<double, kHorizon> yearly_rewards{};
  double total = 0.0;

  // total is the left-to-right sum of the yearly rewards.
  static EpisodeRecord from_rewards(const Policy& policy,
                                    const std::array<double, kHorizon>& rewards);

  // Sum of the first `years` yearly rewards, same summation order as total.
  double partial_total(int years) const;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

// JSON forms. An Action is a two-element array [itn, irs]; a Policy is an
// array of five such pairs.
void to_json(nlohmann::json& j, const Action& a);
void from_json(const nlohmann::json& j, Action& a);
void to_json(nlohmann::json& j, const Policy& p);
void from_json(const nlohmann::json& j, Policy& p);
void to_json(nlohmann::json& j, const EpisodeRecord& r);
void from_json(const nlohmann::json& j, EpisodeRecord& r);

std::string policy_to_json_string(const Policy& p);

}  // namespace scarce_rl

#endif  // SCARCE_RL_CORE_ACTION_H_
