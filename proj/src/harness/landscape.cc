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

#include "scarce_rl/harness/landscape.h"

#include <limits>
#include <stdexcept>

#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

double Landscape::max_reward() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const LandscapeCell& c : cells) m = std::max(m, c.reward);
  return m;
}

double Landscape::mean_reward() const {
  if (cells.empty()) return 0.0;
  double s = 0.0;
  for (const LandscapeCell& c : cells) s += c.reward;
  return s / static_cast<double>(cells.size());
}

const LandscapeCell& Landscape::nearest(double itn, double irs) const {
  if (cells.empty()) throw std::logic_error("empty landscape");
  const LandscapeCell* best = &cells.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const LandscapeCell& c : cells) {
    const double d = (c.itn - itn) * (c.itn - itn) + (c.irs - irs) * (c.irs - irs);
    if (d < best_d) {
      best_d = d;
      best = &c;
    }
  }
  return *best;
}

Policy default_context_policy() {
  Policy p;
  for (int y = 0; y < kHorizon; ++y) p[y] = Action(0.5, 0.5);
  return p;
}

Landscape landscape_scan(const EnvConfig& config, int year, int grid_n,
                         const Policy& context, bool scale_display) {
  if (year < 1 || year > kHorizon) {
    throw std::invalid_argument("year must lie in 1..5");
  }
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  auto model = make_environment(config);
  std::vector<Action> history(context.begin(), context.begin() + (year - 1));

  Landscape out;
  out.year = year;
  out.grid_n = grid_n;
  out.cells.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double itn = static_cast<double>(i) / (grid_n - 1);
      const double irs = static_cast<double>(j) / (grid_n - 1);
      const double r = model->step(year, Action(itn, irs), history);
      out.cells.push_back({itn, irs, scale_display ? r / 100.0 : r});
    }
  }
  return out;
}

}  // namespace scarce_rl
