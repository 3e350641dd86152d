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

#ifndef SCARCE_RL_ENVIRONMENTS_ENV_CONFIG_H_
#define SCARCE_RL_ENVIRONMENTS_ENV_CONFIG_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "scarce_rl/core/action.h"
#include "scarce_rl/core/rng.h"

namespace scarce_rl {

// Isotropic Gaussian reward feature on the unit square.
struct GaussianBump {
  Action center;
  double amplitude = 0.0;  // may be negative
  double width = 0.1;      // > 0, Euclidean action-space distance

  double value_at(const Action& a) const;

  friend bool operator==(const GaussianBump&, const GaussianBump&) = default;
};

// Noise-free reward surface of one year: the sum of its bumps.
struct YearSurface {
  std::vector<GaussianBump> bumps;

  double value_at(const Action& a) const;

  friend bool operator==(const YearSurface&, const YearSurface&) = default;
};

// Reward of year i depends on the current and the immediately preceding
// action: base_i(a) scaled by a similarity factor to the previous action.
struct EnvConfigA {
  std::string name = "custom";
  std::array<YearSurface, kHorizon> years{};
  double carryover_strength = 0.5;  // [0, 1]
  double carryover_width = 0.5;     // > 0
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  // When set, every year's 40x40 base-surface maximum must lie within 5%.
  std::optional<double> year_max;

  friend bool operator==(const EnvConfigA&, const EnvConfigA&) = default;
};

// Reward of year i depends on the current action and the mean of all
// previous actions through a blended effective action.
struct EnvConfigB {
  std::string name = "custom";
  std::array<YearSurface, kHorizon> years{};
  double history_weight = 0.4;  // [0, 1]
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> year_max;

  friend bool operator==(const EnvConfigB&, const EnvConfigB&) = default;
};

using EnvConfig = std::variant<EnvConfigA, EnvConfigB>;

// Throws std::invalid_argument on out-of-range fields or a failed
// year_max scan.
void validate(const EnvConfigA& config);
void validate(const EnvConfigB& config);
void validate(const EnvConfig& config);

const std::string& env_name(const EnvConfig& config);
double env_noise_std(const EnvConfig& config);
std::uint64_t env_seed(const EnvConfig& config);
void set_env_seed(EnvConfig& config, std::uint64_t seed);

// Maximum of a surface over the n x n grid {i / (n - 1)}^2.
double scan_surface_max(const YearSurface& surface, int grid_n = 40);

// year is 1-based. prev_action must be empty exactly when year == 1.
// When noise_rng is given and noise_std > 0, Normal(0, noise_std) noise
// drawn from it is added.
double year_reward_a(int year, const Action& action,
                     const std::optional<Action>& prev_action,
                     const EnvConfigA& config, SeededRng* noise_rng = nullptr);

// history holds the actions of years 1..year-1.
double year_reward_b(int year, const Action& action,
                     std::span<const Action> history, const EnvConfigB& config,
                     SeededRng* noise_rng = nullptr);

// Canonical stand-ins for the two challenge environments.
EnvConfigA default_env_a();
EnvConfigB default_env_b();

// JSON file format. "model" selects the reward model ("carryover" for A,
// "history" for B); when absent, a "history_weight" key selects B.
nlohmann::json env_config_to_json(const EnvConfig& config);
EnvConfig env_config_from_json(const nlohmann::json& j);
EnvConfig load_env_config(const std::string& path);

// "env_a" and "env_b" name the defaults; anything else is a config path.
EnvConfig resolve_env(const std::string& id_or_path);

}  // namespace scarce_rl

#endif  // SCARCE_RL_ENVIRONMENTS_ENV_CONFIG_H_
