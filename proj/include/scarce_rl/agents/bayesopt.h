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

#ifndef SCARCE_RL_AGENTS_BAYESOPT_H_
#define SCARCE_RL_AGENTS_BAYESOPT_H_

#include <span>
#include <vector>

#include "scarce_rl/agents/gaussian_process.h"
#include "scarce_rl/core/action.h"
#include "scarce_rl/core/rng.h"
#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

// What per-year BO plays in years it is not currently modelling.
enum class FillerMode {
  kRandom,     // uniform random action
  kIncumbent,  // best observed action of that year, random before any data
};

struct BoParams {
  GpHyperparams gp;               // 2-D per-year surrogates
  double lengthscale_joint = 0.5;  // 4-D and 10-D surrogates
  double kappa_explore = 2.5;
  double kappa_exploit = 0.5;
  double grid_step = 0.05;       // 2-D candidate lattice
  int random_candidates = 2048;  // 4-D / 10-D uniform candidates
  // Extra candidates drawn as Gaussian perturbations of the incumbent in
  // the 4-D / 10-D searches; 0 disables.
  int local_candidates = 512;
  double local_sigma = 0.05;

  int bo1_year1_points = 15;
  int frontier_min_observations = 4;
  FillerMode filler = FillerMode::kRandom;

  int bo2_seed_episodes = 5;

  int bo3_seed_episodes = 3;
  int bo3_refit_every = 2;
  double weight_resolution = 0.02;
  // Year-2 rewards also depend on the year-1 action, so the per-year
  // surrogates see inconsistent targets; a nugget keeps them smooth.
  double bo3_jitter = 1e-2;
  double bo3_kappa = 0.5;
  Action bo3_filler = Action(0.5, 0.5);

  void validate() const;
};

// Lattice {0, step, ..., 1}^2 as 2-D points, row-major.
std::vector<Point> lattice_candidates(double step);
std::vector<Point> uniform_candidates(std::size_t dim, int count,
                                      SeededRng& rng);

Point to_point(const Action& a);
Point to_point(const Policy& p);
Action action_from_point(std::span<const double> x, std::size_t offset = 0);

// ---------------------------------------------------------------------------
// Boosting ensemble

// One ensemble training example: the two surrogates' predictions for an
// observed input and the reward actually measured there.
struct BlendSample {
  double pred_a = 0.0;
  double pred_b = 0.0;
  double target = 0.0;
};

struct BoostingWeights {
  double w0 = 0.0;
  double w1 = 0.0;
  // Mean squared error of w0 * pred_a + w1 * pred_b on the fit samples.
  double mse = 0.0;
};

double blend_mse(std::span<const BlendSample> samples, double w0, double w1);

// Exhaustive least-MSE search over the [0, 1]^2 weight lattice at
// `resolution`, w0 outer and w1 inner in ascending order. A later pair
// replaces the incumbent only when its MSE is lower by more than
// 1e-12 * max(1, incumbent), so near-ties keep the lexicographically
// smallest pair. Throws std::invalid_argument with fewer than 2 samples.
BoostingWeights fit_boosting_weights(std::span<const BlendSample> samples,
                                     double resolution = 0.02);

// Convenience form: predictions of gp_a and gp_b at each observed point.
BoostingWeights fit_boosting_weights(std::span<const Point> points,
                                     std::span<const double> targets,
                                     const GpModel& gp_a, const GpModel& gp_b,
                                     double resolution = 0.02);

struct WeightUpdate {
  int episode = 0;  // 1-based episode after which the refit happened
  double w0 = 0.0;
  double w1 = 0.0;
};

// First refit episode after which every consecutive change stays below
// `tolerance` in both weights; the last refit's episode when the final change
// is still large; -1 for an empty trajectory.
int weight_stabilization_episode(std::span<const WeightUpdate> trajectory,
                                 double tolerance = 0.05);

// ---------------------------------------------------------------------------
// Agents

struct Bo1Result {
  EpisodeRecord best;
  // Best observed first-year action and reward when the year-1 exploration
  // phase ended.
  Action year1_incumbent;
  double year1_incumbent_reward = 0.0;
  std::vector<int> frontier_by_episode;
};

// Five per-year 2-D surrogates optimized greedily: the first-year phase
// explores year 1 only, then each episode exploits the years already
// learned and explores the frontier year.
Bo1Result run_bo1(EpisodicEnv& env, const BoParams& params, SeededRng& rng);

// Year-1-only UCB search for `queries` first steps (each a separate episode;
// meant for unbudgeted diagnostic envs). Returns the best observed action.
struct Year1Search {
  Action incumbent;
  double incumbent_reward = 0.0;
  std::vector<Action> queries;
};
Year1Search bo_year1_search(EpisodicEnv& env, const BoParams& params,
                            int queries);

// One 10-D surrogate over whole policies.
EpisodeRecord run_bo2(EpisodicEnv& env, const BoParams& params,
                      SeededRng& rng);

struct Bo3Result {
  // Best episode ranked on the year-1 + year-2 sub-reward.
  EpisodeRecord best;
  double best_subtotal = 0.0;
  std::vector<WeightUpdate> weights;
  std::vector<BlendSample> samples;
};

// Two-year proof of concept: per-year surrogates (summed) and a joint 4-D
// surrogate blended by boosting weights refit from held-out predictions.
Bo3Result run_bo3(EpisodicEnv& env, const BoParams& params, SeededRng& rng);

}  // namespace scarce_rl

#endif  // SCARCE_RL_AGENTS_BAYESOPT_H_
