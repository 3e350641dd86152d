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

#ifndef SCARCE_RL_HARNESS_LANDSCAPE_H_
#define SCARCE_RL_HARNESS_LANDSCAPE_H_

#include <vector>

#include "scarce_rl/core/action.h"
#include "scarce_rl/environments/env_config.h"

namespace scarce_rl {

struct LandscapeCell {
  double itn = 0.0;
  double irs = 0.0;
  double reward = 0.0;
};

struct Landscape {
  int year = 1;
  int grid_n = 0;
  // grid_n * grid_n cells over {i / (grid_n - 1)}^2, itn outer.
  std::vector<LandscapeCell> cells;

  double max_reward() const;
  double mean_reward() const;
  // Cell nearest to (itn, irs).
  const LandscapeCell& nearest(double itn, double irs) const;
};

// Policy whose actions precede the scanned year: (0.5, 0.5) everywhere.
Policy default_context_policy();

// Rewards of `year` over the grid with years before it played from
// `context`, on an unbudgeted copy of the environment. `scale_display`
// divides every reward by 100.
Landscape landscape_scan(const EnvConfig& config, int year, int grid_n = 40,
                         const Policy& context = default_context_policy(),
                         bool scale_display = false);

}  // namespace scarce_rl

#endif  // SCARCE_RL_HARNESS_LANDSCAPE_H_
