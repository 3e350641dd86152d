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

#ifndef SCARCE_RL_AGENTS_REFINEMENT_H_
#define SCARCE_RL_AGENTS_REFINEMENT_H_

#include <vector>

#include "scarce_rl/core/action.h"
#include "scarce_rl/core/rng.h"

namespace scarce_rl {

// Directional local search around a grid incumbent. A probe that beats the
// incumbent becomes the incumbent and the next probe continues one more
// step in the same direction; otherwise a fresh random neighbor is tried.
struct RefinementState {
  Action a_max;
  Action a_next;
  double d_itn = 0.0;
  double d_irs = 0.0;
};

// Lattice neighbors of `center` at L-infinity distance `distance` that stay
// inside the unit square (at most 8), in row-major order.
std::vector<Action> grid_neighbors(const Action& center, double distance);

// Initial state: a_next is a uniformly chosen neighbor of a_max.
RefinementState start_refinement(const Action& a_max, double distance,
                                 SeededRng& rng);

RefinementState refine_step(const RefinementState& state, double reward_next,
                            double reward_max, double distance, SeededRng& rng);

}  // namespace scarce_rl

#endif  // SCARCE_RL_AGENTS_REFINEMENT_H_
