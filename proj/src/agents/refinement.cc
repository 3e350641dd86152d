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

#include "scarce_rl/agents/refinement.h"

#include <cmath>

namespace scarce_rl {

namespace {

// Snaps lattice arithmetic back onto clean decimals (0.1 + 0.2 -> 0.3).
double snap(double v) { return std::round(v * 1e9) / 1e9; }

}  // namespace

std::vector<Action> grid_neighbors(const Action& center, double distance) {
  std::vector<Action> out;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const double x = snap(center.itn() + dx * distance);
      const double y = snap(center.irs() + dy * distance);
      if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) continue;
      out.emplace_back(x, y);
    }
  }
  return out;
}

RefinementState start_refinement(const Action& a_max, double distance,
                                 SeededRng& rng) {
  RefinementState s;
  s.a_max = a_max;
  const std::vector<Action> nbrs = grid_neighbors(a_max, distance);
  s.a_next = nbrs.empty() ? a_max : nbrs[rng.uniform_index(nbrs.size())];
  return s;
}

RefinementState refine_step(const RefinementState& state, double reward_next,
                            double reward_max, double distance,
                            SeededRng& rng) {
  RefinementState s;
  if (reward_next > reward_max) {
    s.d_itn = snap(state.a_next.itn() - state.a_max.itn());
    s.d_irs = snap(state.a_next.irs() - state.a_max.irs());
    s.a_max = state.a_next;
    s.a_next = clamp_action(snap(state.a_next.itn() + s.d_itn),
                            snap(state.a_next.irs() + s.d_irs));
    return s;
  }
  s = start_refinement(state.a_max, distance, rng);
  return s;
}

}  // namespace scarce_rl
