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

#include "scarce_rl/environments/env_config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace scarce_rl {

namespace {

void check_year(int year) {
  if (year < 1 || year > kHorizon) {
    throw std::invalid_argument("year must lie in 1..5");
  }
}

double noise(double noise_std, SeededRng* rng) {
  if (rng == nullptr || noise_std <= 0.0) return 0.0;
  return noise_std * rng->normal();
}

void validate_surfaces(const std::array<YearSurface, kHorizon>& years,
                       const std::optional<double>& year_max,
                       double noise_std) {
  if (!(noise_std >= 0.0)) {
    throw std::invalid_argument("noise_std must be non-negative");
  }
  for (const YearSurface& s : years) {
    for (const GaussianBump& b : s.bumps) {
      if (!(b.width > 0.0)) {
        throw std::invalid_argument("bump width must be positive");
      }
    }
  }
  if (!year_max) return;
  for (int y = 0; y < kHorizon; ++y) {
    const double m = scan_surface_max(years[y], 40);
    if (std::abs(m - *year_max) > 0.05 * std::abs(*year_max)) {
      throw std::invalid_argument("year " + std::to_string(y + 1) +
                                  " surface maximum " + std::to_string(m) +
                                  " is not within 5% of year_max");
    }
  }
}

// Positive features of the default surfaces. Year 1 carries the two
// low-value features at (0.2, 0.9) and (0.8, 0.9); later years drift the
// high-value centers by a few hundredths.
std::array<YearSurface, kHorizon> default_surfaces() {
  // Positive bump centers per year; later years drift away from year 1.
  constexpr double kCenters[kHorizon][2][2] = {
      {{0.09, 0.37}, {0.74, 0.54}},
      {{0.09, 0.26}, {0.85, 0.69}},
      {{0.07, 0.34}, {0.59, 0.55}},
      {{0.18, 0.41}, {0.69, 0.55}},
      {{0.10, 0.37}, {0.85, 0.45}},
  };
  std::array<YearSurface, kHorizon> years;
  for (int y = 0; y < kHorizon; ++y) {
    const auto& c = kCenters[y];
    years[y].bumps = {
        {Action(c[0][0], c[0][1]), 110.0, 0.15},
        {Action(c[1][0], c[1][1]), 70.0, 0.15},
        {Action(0.2, 0.9), -60.0, 0.10},
        {Action(0.8, 0.9), -60.0, 0.10},
    };
  }
  return years;
}

GaussianBump bump_from_json(const nlohmann::json& j) {
  GaussianBump b;
  b.center = j.at("center").get<Action>();
  b.amplitude = j.at("amplitude").get<double>();
  b.width = j.at("width").get<double>();
  return b;
}

nlohmann::json surfaces_to_json(const std::array<YearSurface, kHorizon>& ys) {
  nlohmann::json years = nlohmann::json::array();
  for (const YearSurface& s : ys) {
    nlohmann::json bumps = nlohmann::json::array();
    for (const GaussianBump& b : s.bumps) {
      bumps.push_back({{"center", b.center},
                       {"amplitude", b.amplitude},
                       {"width", b.width}});
    }
    years.push_back({{"bumps", bumps}});
  }
  return years;
}

std::array<YearSurface, kHorizon> surfaces_from_json(const nlohmann::json& j) {
  const auto& years = j.at("years");
  if (!years.is_array() || years.size() != static_cast<std::size_t>(kHorizon)) {
    throw std::invalid_argument("\"years\" must list exactly 5 surfaces");
  }
  std::array<YearSurface, kHorizon> out;
  for (int y = 0; y < kHorizon; ++y) {
    for (const auto& b : years[y].at("bumps")) {
      out[y].bumps.push_back(bump_from_json(b));
    }
  }
  return out;
}

}  // namespace

double GaussianBump::value_at(const Action& a) const {
  return amplitude *
         std::exp(-squared_distance(a, center) / (2.0 * width * width));
}

double YearSurface::value_at(const Action& a) const {
  double sum = 0.0;
  for (const GaussianBump& b : bumps) sum += b.value_at(a);
  return sum;
}

void validate(const EnvConfigA& c) {
  if (!(c.carryover_strength >= 0.0 && c.carryover_strength <= 1.0)) {
    throw std::invalid_argument("carryover_strength must lie in [0, 1]");
  }
  if (!(c.carryover_width > 0.0)) {
    throw std::invalid_argument("carryover_width must be positive");
  }
  validate_surfaces(c.years, c.year_max, c.noise_std);
}

void validate(const EnvConfigB& c) {
  if (!(c.history_weight >= 0.0 && c.history_weight <= 1.0)) {
    throw std::invalid_argument("history_weight must lie in [0, 1]");
  }
  validate_surfaces(c.years, c.year_max, c.noise_std);
}

void validate(const EnvConfig& config) {
  std::visit([](const auto& c) { validate(c); }, config);
}

const std::string& env_name(const EnvConfig& config) {
  return std::visit([](const auto& c) -> const std::string& { return c.name; },
                    config);
}

double env_noise_std(const EnvConfig& config) {
  return std::visit([](const auto& c) { return c.noise_std; }, config);
}

std::uint64_t env_seed(const EnvConfig& config) {
  return std::visit([](const auto& c) { return c.seed; }, config);
}

void set_env_seed(EnvConfig& config, std::uint64_t seed) {
  std::visit([seed](auto& c) { c.seed = seed; }, config);
}

double scan_surface_max(const YearSurface& surface, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const Action a(static_cast<double>(i) / (grid_n - 1),
                     static_cast<double>(j) / (grid_n - 1));
      best = std::max(best, surface.value_at(a));
    }
  }
  return best;
}

double year_reward_a(int year, const Action& action,
                     const std::optional<Action>& prev_action,
                     const EnvConfigA& config, SeededRng* noise_rng) {
  check_year(year);
  if ((year == 1) != !prev_action.has_value()) {
    throw std::invalid_argument(
        "a previous action is required exactly for years 2..5");
  }
  const double base = config.years[year - 1].value_at(action);
  double carry = 1.0;
  if (prev_action) {
    const double w = config.carryover_width;
    carry = (1.0 - config.carryover_strength) +
            config.carryover_strength *
                std::exp(-squared_distance(action, *prev_action) / (2.0 * w * w));
  }
  return base * carry + noise(config.noise_std, noise_rng);
}

double year_reward_b(int year, const Action& action,
                     std::span<const Action> history, const EnvConfigB& config,
                     SeededRng* noise_rng) {
  check_year(year);
  if (history.size() != static_cast<std::size_t>(year - 1)) {
    throw std::invalid_argument("history must hold exactly year - 1 actions");
  }
  Action effective = action;
  if (!history.empty()) {
    double mean_itn = 0.0;
    double mean_irs = 0.0;
    for (const Action& h : history) {
      mean_itn += h.itn();
      mean_irs += h.irs();
    }
    mean_itn /= static_cast<double>(history.size());
    mean_irs /= static_cast<double>(history.size());
    const double w = config.history_weight;
    effective = clamp_action((1.0 - w) * action.itn() + w * mean_itn,
                             (1.0 - w) * action.irs() + w * mean_irs);
  }
  return config.years[year - 1].value_at(effective) +
         noise(config.noise_std, noise_rng);
}

EnvConfigA default_env_a() {
  EnvConfigA c;
  c.name = "env_a";
  c.years = default_surfaces();
  c.carryover_strength = 0.5;
  c.carryover_width = 0.5;
  c.noise_std = 0.0;
  c.seed = 0;
  c.year_max = 110.0;
  return c;
}

EnvConfigB default_env_b() {
  EnvConfigB c;
  c.name = "env_b";
  c.years = default_surfaces();
  c.history_weight = 0.4;
  c.noise_std = 0.0;
  c.seed = 0;
  c.year_max = 110.0;
  return c;
}

nlohmann::json env_config_to_json(const EnvConfig& config) {
  return std::visit(
      [](const auto& c) {
        nlohmann::json j;
        j["name"] = c.name;
        j["years"] = surfaces_to_json(c.years);
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, EnvConfigA>) {
          j["model"] = "carryover";
          j["carryover_strength"] = c.carryover_strength;
          j["carryover_width"] = c.carryover_width;
        } else {
          j["model"] = "history";
          j["history_weight"] = c.history_weight;
        }
        j["noise_std"] = c.noise_std;
        j["seed"] = c.seed;
        if (c.year_max) j["year_max"] = *c.year_max;
        return j;
      },
      config);
}

EnvConfig env_config_from_json(const nlohmann::json& j) {
  std::string model;
  if (j.contains("model")) {
    model = j.at("model").get<std::string>();
  } else {
    model = j.contains("history_weight") ? "history" : "carryover";
  }
  auto fill_common = [&j](auto& c) {
    c.name = j.value("name", std::string("custom"));
    c.years = surfaces_from_json(j);
    c.noise_std = j.value("noise_std", 0.0);
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("year_max")) c.year_max = j.at("year_max").get<double>();
  };
  EnvConfig out;
  if (model == "carryover") {
    EnvConfigA c;
    fill_common(c);
    c.carryover_strength = j.value("carryover_strength", 0.5);
    c.carryover_width = j.value("carryover_width", 0.5);
    out = c;
  } else if (model == "history") {
    EnvConfigB c;
    fill_common(c);
    c.history_weight = j.value("history_weight", 0.4);
    out = c;
  } else {
    throw std::invalid_argument("unknown environment model \"" + model + "\"");
  }
  validate(out);
  return out;
}

EnvConfig load_env_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open environment config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return env_config_from_json(j);
}

EnvConfig resolve_env(const std::string& id_or_path) {
  if (id_or_path == "env_a") return default_env_a();
  if (id_or_path == "env_b") return default_env_b();
  return load_env_config(id_or_path);
}

}  // namespace scarce_rl
