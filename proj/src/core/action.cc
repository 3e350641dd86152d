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

#include "scarce_rl/core/action.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scarce_rl {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

// Per-axis coordinates for discretize_action_space.
std::vector<double> axis_points(double r) {
  std::vector<double> pts;
  // Exact one-decimal grids: the 0.1 grid stops at 0.9 so it has exactly
  // 100 pairs; 0.3 is the explicit 4x4 list.
  if (std::abs(r - 0.1) < 1e-12) {
    for (int k = 0; k < 10; ++k) pts.push_back(k / 10.0);
    return pts;
  }
  if (std::abs(r - 0.3) < 1e-12) return {0.0, 0.3, 0.6, 0.9};

  const double tenths = r * 10.0;
  const bool one_decimal = std::abs(tenths - std::round(tenths)) < 1e-9;
  for (int k = 0;; ++k) {
    double v = k * r;
    if (v > 1.0 + 1e-9) break;
    if (one_decimal) v = std::round(v * 10.0) / 10.0;
    pts.push_back(std::min(v, 1.0));
  }
  return pts;
}

}  // namespace

Action::Action(double itn, double irs) : itn_(itn), irs_(irs) {
  if (!in_unit_interval(itn) || !in_unit_interval(irs)) {
    throw std::invalid_argument("action coordinates must lie in [0, 1]");
  }
}

Action clamp_action(double itn, double irs) {
  auto clamp01 = [](double v) {
    if (std::isnan(v)) return 0.0;
    return std::clamp(v, 0.0, 1.0);
  };
  return Action(clamp01(itn), clamp01(irs));
}

double squared_distance(const Action& a, const Action& b) {
  const double dx = a.itn() - b.itn();
  const double dy = a.irs() - b.irs();
  return dx * dx + dy * dy;
}

std::vector<Action> discretize_action_space(double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw std::invalid_argument("resolution must lie in (0, 1]");
  }
  const std::vector<double> axis = axis_points(resolution);
  std::vector<Action> grid;
  grid.reserve(axis.size() * axis.size());
  for (double itn : axis) {
    for (double irs : axis) grid.emplace_back(itn, irs);
  }
  return grid;
}

int grid_index(const std::vector<Action>& grid, const Action& a) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i].itn() - a.itn()) < 1e-9 &&
        std::abs(grid[i].irs() - a.irs()) < 1e-9) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

Policy::Policy(const std::vector<Action>& actions) {
  if (actions.size() != static_cast<std::size_t>(kHorizon)) {
    throw std::invalid_argument("a policy has exactly 5 actions");
  }
  std::copy(actions.begin(), actions.end(), actions_.begin());
}

EpisodeRecord EpisodeRecord::from_rewards(
    const Policy& policy, const std::array<double, kHorizon>& rewards) {
  EpisodeRecord r;
  r.policy = policy;
  r.yearly_rewards = rewards;
  r.total = r.partial_total(kHorizon);
  return r;
}

double EpisodeRecord::partial_total(int years) const {
  double sum = 0.0;
  for (int y = 0; y < years && y < kHorizon; ++y) sum += yearly_rewards[y];
  return sum;
}

void to_json(nlohmann::json& j, const Action& a) {
  j = nlohmann::json::array({a.itn(), a.irs()});
}

void from_json(const nlohmann::json& j, Action& a) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw std::invalid_argument("action must be a [itn, irs] number pair");
  }
  a = Action(j[0].get<double>(), j[1].get<double>());
}

void to_json(nlohmann::json& j, const Policy& p) {
  j = nlohmann::json::array();
  for (const Action& a : p) j.push_back(a);
}

void from_json(const nlohmann::json& j, Policy& p) {
  if (!j.is_array()) throw std::invalid_argument("policy must be an array");
  std::vector<Action> actions;
  for (const auto& item : j) actions.push_back(item.get<Action>());
  p = Policy(actions);
}

void to_json(nlohmann::json& j, const EpisodeRecord& r) {
  j = nlohmann::json{{"policy", r.policy},
                     {"yearly_rewards", r.yearly_rewards},
                     {"total", r.total}};
}

void from_json(const nlohmann::json& j, EpisodeRecord& r) {
  r.policy = j.at("policy").get<Policy>();
  r.yearly_rewards = j.at("yearly_rewards").get<std::array<double, kHorizon>>();
  r.total = j.at("total").get<double>();
}

std::string policy_to_json_string(const Policy& p) {
  return nlohmann::json(p).dump();
}

}  // namespace scarce_rl
