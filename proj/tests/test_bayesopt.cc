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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "scarce_rl/agents/bayesopt.h"
#include "scarce_rl/agents/evolutionary.h"
#include "scarce_rl/environments/environment.h"

using namespace scarce_rl;

namespace {

EnvConfigA single_bump_a(double x, double y, double amp) {
  EnvConfigA c;
  for (auto& s : c.years) s.bumps = {GaussianBump{Action(x, y), amp, 0.15}};
  c.carryover_strength = 0.0;
  return c;
}

// Plain rescan: strict-less argmin over the same lattice.
std::pair<double, double> rescan(const std::vector<BlendSample>& s, int steps) {
  double best = 1e300, bw0 = -1, bw1 = -1;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const double w0 = double(i) / steps, w1 = double(j) / steps;
      double mse = 0.0;
      for (const BlendSample& b : s) {
        const double e = w0 * b.pred_a + w1 * b.pred_b - b.target;
        mse += e * e;
      }
      mse /= s.size();
      if (mse < best) {
        best = mse;
        bw0 = w0;
        bw1 = w1;
      }
    }
  }
  return {bw0, bw1};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

}  // namespace

TEST_CASE("boosting weights equal the rescan argmin") {
  SeededRng rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<BlendSample> s(2 + rng.uniform_index(15));
    for (BlendSample& b : s) {
      b.pred_a = rng.uniform(0, 200);
      b.pred_b = rng.uniform(0, 200);
      b.target = rng.uniform(0, 200);
    }
    const BoostingWeights w = fit_boosting_weights(s, 0.02);
    const auto [w0, w1] = rescan(s, 50);
    CHECK(w.w0 == w0);
    CHECK(w.w1 == w1);
    CHECK(w.mse == doctest::Approx(blend_mse(s, w0, w1)));

    // Sample order does not matter.
    std::vector<BlendSample> shuffled = s;
    std::reverse(shuffled.begin(), shuffled.end());
    const BoostingWeights r = fit_boosting_weights(shuffled, 0.02);
    CHECK(r.w0 == w.w0);
    CHECK(r.w1 == w.w1);
  }
}

TEST_CASE("boosting weights on degenerate ensembles") {
  SUBCASE("perfect first predictor, zero second") {
    std::vector<BlendSample> s;
    for (double t : {10.0, 40.0, 25.0, 90.0}) s.push_back({t, 0.0, t});
    const BoostingWeights w = fit_boosting_weights(s);
    CHECK(std::abs(w.w0 - 1.0) <= 0.02);
    CHECK(w.w1 == 0.0);
  }
  SUBCASE("identical predictors tie along w0 + w1 = 1") {
    std::vector<BlendSample> s;
    for (double t : {10.0, 40.0, 25.0}) s.push_back({t, t, t});
    const BoostingWeights w = fit_boosting_weights(s);
    CHECK(w.w0 == 0.0);
    CHECK(w.w1 == 1.0);
  }
  SUBCASE("flat surface") {
    std::vector<BlendSample> s(5);
    const BoostingWeights w = fit_boosting_weights(s);
    CHECK(w.w0 == 0.0);
    CHECK(w.w1 == 0.0);
  }
  CHECK_THROWS_AS(fit_boosting_weights(std::vector<BlendSample>(1)),
                  std::invalid_argument);
}

TEST_CASE("boosting weights from surrogates") {
  const std::vector<Point> xs{{0.1, 0.1}, {0.5, 0.4}, {0.9, 0.2}};
  const std::vector<double> ys{3.0, 8.0, 1.0};
  const GpModel good = GpModel::fit(xs, ys);
  const GpModel flat = GpModel::fit(xs, {0.0, 0.0, 0.0});
  const BoostingWeights w = fit_boosting_weights(xs, ys, good, flat);
  CHECK(w.w0 == 1.0);
  CHECK(w.w1 == 0.0);
}

TEST_CASE("weight stabilization episode") {
  CHECK(weight_stabilization_episode(std::vector<WeightUpdate>{}) == -1);
  const std::vector<WeightUpdate> t{{4, 0.5, 0.5}, {6, 0.9, 0.1},
                                    {8, 0.92, 0.1}, {10, 0.93, 0.12}};
  CHECK(weight_stabilization_episode(t) == 6);
  const std::vector<WeightUpdate> late{{4, 0.5, 0.5}, {6, 0.5, 0.5},
                                       {8, 0.2, 0.5}};
  CHECK(weight_stabilization_episode(late) == 8);
  const std::vector<WeightUpdate> calm{{4, 0.5, 0.5}, {6, 0.52, 0.5}};
  CHECK(weight_stabilization_episode(calm) == 4);
}

TEST_CASE("candidate helpers") {
  CHECK(lattice_candidates(0.05).size() == 21 * 21);
  CHECK(lattice_candidates(0.5).size() == 9);
  SeededRng rng(1);
  for (const Point& p : uniform_candidates(4, 100, rng)) {
    REQUIRE(p.size() == 4);
    for (double v : p) CHECK((v >= 0.0 && v <= 1.0));
  }
  const Policy pol(std::vector<Action>(5, Action(0.2, 0.7)));
  const Point x = to_point(pol);
  CHECK(x.size() == 10);
  CHECK(action_from_point(x, 8) == Action(0.2, 0.7));
}

TEST_CASE("BO.1") {
  SUBCASE("zero surface uses exactly 20 episodes") {
    BudgetedEnv env{EnvConfig(EnvConfigA{})};
    SeededRng rng(1);
    run_bo1(env, BoParams{}, rng);
    CHECK(env.budget().used_episodes() == 20);
  }
  SUBCASE("single-bump year-1 incumbent is near the center") {
    // Oracle: the 40x40 scan optimum sits at the bump center.
    const EnvConfigA c = single_bump_a(0.35, 0.65, 100.0);
    BudgetedEnv env{EnvConfig(c)};
    SeededRng rng(3);
    const Bo1Result r = run_bo1(env, BoParams{}, rng);
    CHECK(std::sqrt(squared_distance(r.year1_incumbent, Action(0.35, 0.65))) <=
          0.15);
  }
  SUBCASE("30 year-1 queries find the year-1 maximum") {
    const EnvConfigA c = default_env_a();
    BudgetedEnv env(EnvConfig(c), Budget::unlimited());
    const Year1Search s = bo_year1_search(env, BoParams{}, 30);
    CHECK(s.queries.size() == 30);
    CHECK(s.incumbent_reward >= 0.95 * scan_surface_max(c.years[0], 40));
  }
}

TEST_CASE("BO.2") {
  SUBCASE("zero surface uses exactly 20 episodes") {
    BudgetedEnv env{EnvConfig(EnvConfigA{})};
    SeededRng rng(1);
    run_bo2(env, BoParams{}, rng);
    CHECK(env.budget().used_episodes() == 20);
  }
  SUBCASE("separable single-bump env") {
    std::vector<double> best;
    for (int s = 1; s <= 30; ++s) {
      BudgetedEnv env{EnvConfig(single_bump_a(0.4, 0.6, 100.0))};
      SeededRng rng(s);
      best.push_back(run_bo2(env, BoParams{}, rng).total);
    }
    CHECK(mean_of(best) >= 0.9 * 500.0);
  }
  SUBCASE("at least random search on Env B") {
    std::vector<double> bo, rs;
    for (int s = 1; s <= 30; ++s) {
      BudgetedEnv e1{EnvConfig(default_env_b())}, e2{EnvConfig(default_env_b())};
      SeededRng r1(s), r2(s);
      bo.push_back(run_bo2(e1, BoParams{}, r1).total);
      rs.push_back(run_random_search(e2, r2).total);
    }
    CHECK(mean_of(bo) >= mean_of(rs));
  }
}

TEST_CASE("BO.3") {
  SUBCASE("zero surface keeps the tie-break weights") {
    BudgetedEnv env{EnvConfig(EnvConfigA{})};
    SeededRng rng(1);
    const Bo3Result r = run_bo3(env, BoParams{}, rng);
    CHECK(env.budget().used_episodes() == 20);
    REQUIRE_FALSE(r.weights.empty());
    for (const WeightUpdate& w : r.weights) {
      CHECK(w.w0 == 0.0);
      CHECK(w.w1 == 0.0);
    }
  }
  SUBCASE("weights settle and the two-year reward beats random") {
    int settled = 0;
    std::vector<double> bo, rs;
    for (int s = 1; s <= 30; ++s) {
      BudgetedEnv e1{EnvConfig(default_env_a())}, e2{EnvConfig(default_env_a())};
      SeededRng r1(s), r2(s);
      const Bo3Result r = run_bo3(e1, BoParams{}, r1);
      const int ep = weight_stabilization_episode(r.weights, 0.05);
      if (ep >= 0 && ep <= 12) ++settled;
      bo.push_back(r.best_subtotal);
      rs.push_back(run_random_search(e2, r2, 2).partial_total(2));
    }
    CHECK(settled >= 18);
    CHECK(mean_of(bo) >= mean_of(rs));
  }
}

TEST_CASE("BoParams validation") {
  BoParams p;
  p.kappa_explore = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = BoParams{};
  p.bo3_jitter = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
