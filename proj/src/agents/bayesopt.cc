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

#include "scarce_rl/agents/bayesopt.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scarce_rl/agents/agent.h"
#include "scarce_rl/agents/evolutionary.h"

namespace scarce_rl {

void BoParams::validate() const {
  if (!(gp.lengthscale > 0.0) || !(lengthscale_joint > 0.0) ||
      !(gp.variance > 0.0) || !(gp.jitter > 0.0) || !(bo3_jitter > 0.0)) {
    throw std::invalid_argument("GP hyperparameters must be positive");
  }
  if (!(kappa_explore >= 0.0) || !(kappa_exploit >= 0.0) ||
      !(bo3_kappa >= 0.0)) {
    throw std::invalid_argument("kappa must be non-negative");
  }
  if (!(grid_step > 0.0 && grid_step <= 1.0) ||
      !(weight_resolution > 0.0 && weight_resolution <= 1.0)) {
    throw std::invalid_argument("lattice steps must lie in (0, 1]");
  }
  if (random_candidates < 1 || local_candidates < 0 || local_sigma < 0.0) {
    throw std::invalid_argument("bad candidate counts");
  }
  if (bo1_year1_points < 0 || frontier_min_observations < 1 ||
      bo2_seed_episodes < 0 || bo3_seed_episodes < 0 || bo3_refit_every < 1) {
    throw std::invalid_argument("bad episode counts");
  }
}

std::vector<Point> lattice_candidates(double step) {
  const int n = static_cast<int>(std::floor(1.0 / step + 1e-9)) + 1;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.push_back({std::min(1.0, i * step), std::min(1.0, j * step)});
    }
  }
  return out;
}

std::vector<Point> uniform_candidates(std::size_t dim, int count,
                                      SeededRng& rng) {
  std::vector<Point> out(static_cast<std::size_t>(count), Point(dim));
  for (Point& p : out) {
    for (double& v : p) v = rng.uniform();
  }
  return out;
}

Point to_point(const Action& a) { return {a.itn(), a.irs()}; }

Point to_point(const Policy& p) {
  Point out;
  out.reserve(2 * kHorizon);
  for (const Action& a : p) {
    out.push_back(a.itn());
    out.push_back(a.irs());
  }
  return out;
}

Action action_from_point(std::span<const double> x, std::size_t offset) {
  return clamp_action(x[offset], x[offset + 1]);
}

// ---------------------------------------------------------------------------
// Boosting ensemble

double blend_mse(std::span<const BlendSample> samples, double w0, double w1) {
  double sum = 0.0;
  for (const BlendSample& s : samples) {
    const double err = w0 * s.pred_a + w1 * s.pred_b - s.target;
    sum += err * err;
  }
  return sum / static_cast<double>(samples.size());
}

BoostingWeights fit_boosting_weights(std::span<const BlendSample> samples,
                                     double resolution) {
  if (samples.size() < 2) {
    throw std::invalid_argument("boosting weights need at least 2 samples");
  }
  if (!(resolution > 0.0 && resolution <= 1.0)) {
    throw std::invalid_argument("weight resolution must lie in (0, 1]");
  }
  const int steps = static_cast<int>(std::round(1.0 / resolution));
  BoostingWeights best;
  bool have = false;
  for (int i = 0; i <= steps; ++i) {
    const double w0 = static_cast<double>(i) / steps;
    for (int j = 0; j <= steps; ++j) {
      const double w1 = static_cast<double>(j) / steps;
      const double mse = blend_mse(samples, w0, w1);
      if (!have || mse < best.mse - 1e-12 * std::max(1.0, best.mse)) {
        best = {w0, w1, mse};
        have = true;
      }
    }
  }
  return best;
}

BoostingWeights fit_boosting_weights(std::span<const Point> points,
                                     std::span<const double> targets,
                                     const GpModel& gp_a, const GpModel& gp_b,
                                     double resolution) {
  if (points.size() != targets.size()) {
    throw std::invalid_argument("points and targets differ in length");
  }
  std::vector<BlendSample> samples;
  samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    samples.push_back({gp_a.predict(points[i]).mean,
                       gp_b.predict(points[i]).mean, targets[i]});
  }
  return fit_boosting_weights(samples, resolution);
}

int weight_stabilization_episode(std::span<const WeightUpdate> trajectory,
                                 double tolerance) {
  if (trajectory.empty()) return -1;
  std::size_t settled = 0;
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const double change =
        std::max(std::abs(trajectory[k].w0 - trajectory[k - 1].w0),
                 std::abs(trajectory[k].w1 - trajectory[k - 1].w1));
    if (change >= tolerance) settled = k;
  }
  return trajectory[settled].episode;
}

// ---------------------------------------------------------------------------
// Agents

namespace {

void begin_episode(EpisodicEnv& env) {
  if (env.episode_done() || env.current_year() != 1) env.reset();
}

Action random_action(SeededRng& rng) {
  const double itn = rng.uniform();
  const double irs = rng.uniform();
  return Action(itn, irs);
}

// Observations of one surrogate.
struct Dataset {
  std::vector<Point> x;
  std::vector<double> y;

  void add(Point p, double v) {
    x.push_back(std::move(p));
    y.push_back(v);
  }
  bool empty() const { return x.empty(); }
  std::size_t best_index() const {
    return static_cast<std::size_t>(
        std::max_element(y.begin(), y.end()) - y.begin());
  }
  GpModel model(std::size_t dim, const GpHyperparams& h) const {
    return empty() ? GpModel::prior(dim, h) : GpModel::fit(x, y, h);
  }
};

// Uniform candidates plus Gaussian perturbations of `center`.
std::vector<Point> mixed_candidates(std::size_t dim, const BoParams& params,
                                    const Point* center, SeededRng& rng) {
  std::vector<Point> out =
      uniform_candidates(dim, params.random_candidates, rng);
  if (center == nullptr) return out;
  for (int i = 0; i < params.local_candidates; ++i) {
    Point p(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      p[d] = std::clamp((*center)[d] + params.local_sigma * rng.normal(), 0.0,
                        1.0);
    }
    out.push_back(std::move(p));
  }
  return out;
}

GpHyperparams joint_hyper(const BoParams& params) {
  GpHyperparams h = params.gp;
  h.lengthscale = params.lengthscale_joint;
  return h;
}

}  // namespace

Bo1Result run_bo1(EpisodicEnv& env, const BoParams& params, SeededRng& rng) {
  params.validate();
  const std::vector<Point> lattice = lattice_candidates(params.grid_step);
  std::array<Dataset, kHorizon> data;
  Bo1Result out;
  BestTracker tracker;
  bool incumbent_recorded = false;

  auto record_incumbent = [&] {
    if (incumbent_recorded || data[0].empty()) return;
    const std::size_t i = data[0].best_index();
    out.year1_incumbent = action_from_point(data[0].x[i]);
    out.year1_incumbent_reward = data[0].y[i];
    incumbent_recorded = true;
  };
  auto ucb_action = [&](int year_index, double kappa) {
    const GpModel m = data[year_index].model(2, params.gp);
    return action_from_point(lattice[ucb_acquire(m, lattice, {kappa})]);
  };
  auto filler = [&](int year_index) {
    const Dataset& d = data[year_index];
    if (params.filler == FillerMode::kIncumbent && !d.empty()) {
      return action_from_point(d.x[d.best_index()]);
    }
    return random_action(rng);
  };

  int frontier = 2;
  for (int episode = 0; can_play_episode(env); ++episode) {
    const bool year1_phase = episode < params.bo1_year1_points;
    if (!year1_phase) record_incumbent();
    begin_episode(env);
    Policy policy;
    std::array<double, kHorizon> rewards{};
    for (int y = 1; y <= kHorizon; ++y) {
      Action a;
      if (y == 1) {
        a = ucb_action(0, year1_phase ? params.kappa_explore
                                      : params.kappa_exploit);
      } else if (year1_phase || y > frontier) {
        a = filler(y - 1);
      } else if (y < frontier) {
        a = ucb_action(y - 1, params.kappa_exploit);
      } else {
        a = ucb_action(y - 1, params.kappa_explore);
      }
      rewards[y - 1] = env.step(a).reward;
      policy[y - 1] = a;
      data[y - 1].add(to_point(a), rewards[y - 1]);
    }
    tracker.offer(EpisodeRecord::from_rewards(policy, rewards));
    if (year1_phase) {
      out.frontier_by_episode.push_back(1);
    } else {
      out.frontier_by_episode.push_back(frontier);
      if (frontier < kHorizon &&
          static_cast<int>(data[frontier - 1].x.size()) >=
              params.frontier_min_observations) {
        ++frontier;
      }
    }
  }
  record_incumbent();
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  out.best = tracker.best();
  return out;
}

Year1Search bo_year1_search(EpisodicEnv& env, const BoParams& params,
                            int queries) {
  params.validate();
  const std::vector<Point> lattice = lattice_candidates(params.grid_step);
  Dataset data;
  Year1Search out;
  for (int q = 0; q < queries; ++q) {
    const GpModel m = data.model(2, params.gp);
    const Action a =
        action_from_point(lattice[ucb_acquire(m, lattice, {params.kappa_explore})]);
    env.reset();
    const double r = env.step(a).reward;
    data.add(to_point(a), r);
    out.queries.push_back(a);
  }
  env.reset();
  if (!data.empty()) {
    const std::size_t i = data.best_index();
    out.incumbent = action_from_point(data.x[i]);
    out.incumbent_reward = data.y[i];
  }
  return out;
}

EpisodeRecord run_bo2(EpisodicEnv& env, const BoParams& params,
                      SeededRng& rng) {
  params.validate();
  const GpHyperparams h = joint_hyper(params);
  Dataset data;
  BestTracker tracker;
  for (int episode = 0; can_play_episode(env); ++episode) {
    Policy p;
    if (episode < params.bo2_seed_episodes || data.empty()) {
      p = random_policy(rng);
    } else {
      const GpModel m = data.model(2 * kHorizon, h);
      const Point incumbent = data.x[data.best_index()];
      const std::vector<Point> cands =
          mixed_candidates(2 * kHorizon, params, &incumbent, rng);
      const Point& x = cands[ucb_acquire(m, cands, {params.kappa_explore})];
      for (int y = 0; y < kHorizon; ++y) p[y] = action_from_point(x, 2 * y);
    }
    const EpisodeRecord rec = evaluate_policy(env, p);
    tracker.offer(rec);
    data.add(to_point(p), rec.total);
  }
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  return tracker.best();
}

Bo3Result run_bo3(EpisodicEnv& env, const BoParams& params, SeededRng& rng) {
  params.validate();
  GpHyperparams single = params.gp;
  single.jitter = params.bo3_jitter;
  GpHyperparams joint = joint_hyper(params);
  joint.jitter = params.bo3_jitter;
  Dataset year1;
  Dataset year2;
  Dataset pair;
  Bo3Result out;
  BestTracker tracker(2);
  double w0 = 0.5;
  double w1 = 0.5;

  for (int episode = 0; can_play_episode(env); ++episode) {
    const GpModel gp1 = year1.model(2, single);
    const GpModel gp2 = year2.model(2, single);
    const GpModel gp4 = pair.model(4, joint);

    Action a1;
    Action a2;
    if (episode < params.bo3_seed_episodes || pair.empty()) {
      a1 = random_action(rng);
      a2 = random_action(rng);
    } else {
      const Point incumbent = pair.x[pair.best_index()];
      const std::vector<Point> cands =
          mixed_candidates(4, params, &incumbent, rng);
      std::size_t best = 0;
      double best_score = 0.0;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        const Point& c = cands[i];
        const GpPrediction p1 = gp1.predict(std::span(c).subspan(0, 2));
        const GpPrediction p2 = gp2.predict(std::span(c).subspan(2, 2));
        const GpPrediction p4 = gp4.predict(c);
        const double mean = w0 * (p1.mean + p2.mean) + w1 * p4.mean;
        const double spread =
            w0 * std::sqrt(p1.std * p1.std + p2.std * p2.std) + w1 * p4.std;
        const double score = mean + params.bo3_kappa * spread;
        if (i == 0 || score > best_score) {
          best = i;
          best_score = score;
        }
      }
      a1 = action_from_point(cands[best], 0);
      a2 = action_from_point(cands[best], 2);
    }

    // Held-out predictions: the surrogates have not seen this episode.
    const Point x1 = to_point(a1);
    const Point x2 = to_point(a2);
    const Point x4{x1[0], x1[1], x2[0], x2[1]};
    const bool held_out = !pair.empty();
    BlendSample sample;
    if (held_out) {
      sample.pred_a = gp1.predict(x1).mean + gp2.predict(x2).mean;
      sample.pred_b = gp4.predict(x4).mean;
    }

    const Policy policy(std::vector<Action>{a1, a2, params.bo3_filler, params.bo3_filler,
                         params.bo3_filler});
    const EpisodeRecord rec = evaluate_policy(env, policy);
    tracker.offer(rec);
    const double subtotal = rec.partial_total(2);
    year1.add(x1, rec.yearly_rewards[0]);
    year2.add(x2, rec.yearly_rewards[1]);
    pair.add(x4, subtotal);

    if (held_out) {
      sample.target = subtotal;
      out.samples.push_back(sample);
    }
    if ((episode + 1) % params.bo3_refit_every == 0 &&
        out.samples.size() >= 2) {
      const BoostingWeights w =
          fit_boosting_weights(out.samples, params.weight_resolution);
      w0 = w.w0;
      w1 = w.w1;
      out.weights.push_back({episode + 1, w0, w1});
    }
  }
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  out.best = tracker.best();
  out.best_subtotal = tracker.best_score();
  return out;
}

}  // namespace scarce_rl
