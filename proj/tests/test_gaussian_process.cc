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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "scarce_rl/agents/gaussian_process.h"
#include "scarce_rl/core/rng.h"

using namespace scarce_rl;

namespace {

// Dense inverse by Gauss-Jordan elimination with partial pivoting.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

double kern(const Point& x, const Point& y, double l, double v) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  return v * std::exp(-d2 / (2 * l * l));
}

// Posterior from the textbook formulas on standardized targets:
// mean = m + s k*' K^-1 z, var = s^2 (v - k*' K^-1 k*).
GpPrediction oracle_posterior(const std::vector<Point>& xs,
                              const std::vector<double>& ys, const Point& q,
                              const GpHyperparams& h) {
  const std::size_t n = xs.size();
  double m = 0.0;
  for (double y : ys) m += y;
  m /= n;
  double var = 0.0;
  for (double y : ys) var += (y - m) * (y - m);
  var /= n;
  const double s = h.standardize && var > 1e-24 ? std::sqrt(var) : 1.0;
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k[i][j] = kern(xs[i], xs[j], h.lengthscale, h.variance) +
                (i == j ? h.jitter : 0.0);
    }
  }
  const auto kinv = invert(k);
  std::vector<double> ks(n);
  for (std::size_t i = 0; i < n; ++i) ks[i] = kern(q, xs[i], h.lengthscale, h.variance);
  double mean = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mean += ks[i] * kinv[i][j] * (ys[j] - m) / s;
      quad += ks[i] * kinv[i][j] * ks[j];
    }
  }
  const double v = h.variance - quad;
  return {m + s * mean, v > 0 ? s * std::sqrt(v) : 0.0};
}

Point random_point(SeededRng& rng, std::size_t dim) {
  Point p(dim);
  for (double& v : p) v = rng.uniform();
  return p;
}

}  // namespace

TEST_CASE("Cholesky factor and triangular solves") {
  const std::vector<double> a{4, 2, 2, 3};
  const auto l = cholesky_factor(a, 2);
  REQUIRE(l);
  CHECK((*l)[0] == doctest::Approx(2.0));
  CHECK((*l)[2] == doctest::Approx(1.0));
  CHECK((*l)[3] == doctest::Approx(std::sqrt(2.0)));
  std::vector<double> b{6, 5};  // A x = b with x = (1, 1)
  solve_lower(*l, 2, b);
  solve_lower_transposed(*l, 2, b);
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(1.0));
  CHECK_FALSE(cholesky_factor(std::vector<double>{1, 2, 2, 1}, 2));
}

TEST_CASE("GP interpolates a single observation") {
  const GpModel m = GpModel::fit({{0.3, 0.4}}, {7.5});
  CHECK(std::abs(m.predict(Point{0.3, 0.4}).mean - 7.5) < 1e-6);
}

TEST_CASE("GP interpolates its training points") {
  SeededRng rng(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<Point> xs;
    std::vector<double> ys;
    // Jittered 3x3 design: well separated relative to the lengthscale.
    for (int i = 0; i < 9; ++i) {
      xs.push_back({(i / 3 + rng.uniform(0.2, 0.8)) / 3.0,
                    (i % 3 + rng.uniform(0.2, 0.8)) / 3.0});
      ys.push_back(rng.uniform(-50, 150));
    }
    GpHyperparams h;
    h.jitter = 1e-10;
    const GpModel m = GpModel::fit(xs, ys, h);
    for (int i = 0; i < 9; ++i) {
      CHECK(std::abs(m.predict(xs[i]).mean - ys[i]) < 1e-6);
    }
  }
}

TEST_CASE("GP reverts to the prior far from data") {
  const std::vector<Point> xs{{0.1, 0.1}, {0.2, 0.3}};
  const std::vector<double> ys{3.0, 9.0};
  GpHyperparams h;
  h.standardize = false;
  const GpPrediction far = GpModel::fit(xs, ys, h).predict(Point{50.0, 50.0});
  CHECK(std::abs(far.mean - 6.0) < 1e-3);
  CHECK(std::abs(far.std - 1.0) < 1e-3);

  // Standardized: the prior std is measured in target spread units.
  const GpPrediction far_std = GpModel::fit(xs, ys).predict(Point{50.0, 50.0});
  CHECK(std::abs(far_std.mean - 6.0) < 1e-3);
  CHECK(std::abs(far_std.std - 3.0) < 1e-3);

  const GpModel prior = GpModel::prior(2);
  CHECK(prior.predict(Point{0.5, 0.5}).mean == 0.0);
  CHECK(prior.predict(Point{0.5, 0.5}).std == 1.0);
}

TEST_CASE("GP posterior matches the direct-inverse oracle") {
  SeededRng rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 2;
    const std::size_t dim = 1 + t % 4;
    std::vector<Point> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(random_point(rng, dim));
      ys.push_back(rng.uniform(0, 10));
    }
    GpHyperparams h;
    h.lengthscale = rng.uniform(0.2, 0.8);
    h.variance = rng.uniform(0.5, 2.0);
    h.standardize = t % 3 != 0;
    const GpModel m = GpModel::fit(xs, ys, h);
    const Point q = random_point(rng, dim);
    const GpPrediction got = m.predict(q);
    const GpPrediction want = oracle_posterior(xs, ys, q, h);
    CHECK(std::abs(got.mean - want.mean) < 1e-8);
    CHECK(std::abs(got.std - want.std) < 1e-8);
  }
}

TEST_CASE("adding an observation never increases the posterior std") {
  SeededRng rng(23);
  GpHyperparams h;
  h.standardize = false;  // fixed output scale
  for (int t = 0; t < 500; ++t) {
    const std::size_t dim = 1 + t % 3;
    std::vector<Point> xs;
    std::vector<double> ys;
    const int n = 1 + static_cast<int>(rng.uniform_index(8));
    for (int i = 0; i < n; ++i) {
      xs.push_back(random_point(rng, dim));
      ys.push_back(rng.uniform(0, 100));
    }
    const GpModel before = GpModel::fit(xs, ys, h);
    xs.push_back(random_point(rng, dim));
    ys.push_back(rng.uniform(0, 100));
    const GpModel after = GpModel::fit(xs, ys, h);
    for (int k = 0; k < 5; ++k) {
      const Point q = random_point(rng, dim);
      CHECK(after.predict(q).std <= before.predict(q).std + 1e-12);
    }
  }
}

TEST_CASE("std at training inputs is below std far from the data") {
  SeededRng rng(29);
  for (int t = 0; t < 100; ++t) {
    std::vector<Point> xs;
    std::vector<double> ys;
    for (int i = 0; i < 6; ++i) {
      xs.push_back(random_point(rng, 2));
      ys.push_back(rng.uniform(0, 100));
    }
    const GpModel m = GpModel::fit(xs, ys);
    // 3 lengthscales beyond the unit square in both coordinates.
    const Point far{1.0 + 0.75 + rng.uniform(0, 2), -0.75 - rng.uniform(0, 2)};
    const double s_far = m.predict(far).std;
    for (const Point& x : xs) CHECK(m.predict(x).std <= s_far);
  }
}

TEST_CASE("SE-kernel posterior std grows with distance from one observation") {
  const GpModel m = GpModel::fit({{0.5, 0.5}}, {1.0});
  double prev = -1.0;
  for (int i = 0; i <= 50; ++i) {
    const double s = m.predict(Point{0.5 + i * 0.01, 0.5}).std;
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("GP input validation") {
  CHECK_THROWS_AS(GpModel::fit({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(GpModel::fit({{0.1}}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(GpModel::fit({{0.1}, {0.1, 0.2}}, {1.0, 2.0}),
                  std::invalid_argument);
  GpHyperparams bad;
  bad.lengthscale = 0.0;
  CHECK_THROWS_AS(GpModel::prior(2, bad), std::invalid_argument);
  // Duplicate points are rescued by the jitter escalation.
  const GpModel dup = GpModel::fit({{0.2, 0.2}, {0.2, 0.2}}, {1.0, 1.0});
  CHECK(dup.size() == 2);
}

TEST_CASE("UCB acquisition") {
  std::vector<Point> cands;
  for (const double x : {0.0, 0.25, 0.5, 0.75, 1.0}) cands.push_back({x, 0.5});

  SUBCASE("prior returns the first candidate") {
    CHECK(ucb_acquire(GpModel::prior(2), cands, {2.5}) == 0);
  }
  SUBCASE("kappa 0 is mean argmax") {
    const GpModel m = GpModel::fit({{0.0, 0.5}, {0.75, 0.5}}, {1.0, 5.0});
    CHECK(ucb_acquire(m, cands, {0.0}) == 3);
  }
  SUBCASE("large kappa moves away from a high observation") {
    const GpModel m = GpModel::fit({{0.0, 0.5}}, {100.0});
    CHECK(ucb_acquire(m, cands, {1e6}) == 4);
  }
  CHECK_THROWS_AS(ucb_acquire(GpModel::prior(2), {}, {1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ucb_acquire(GpModel::prior(2), cands, {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("UCB limits on random candidate sets") {
  SeededRng rng(31);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> xs;
    std::vector<double> ys;
    for (int i = 0; i < 4; ++i) {
      xs.push_back(random_point(rng, 2));
      ys.push_back(rng.uniform(0, 1));
    }
    const GpModel m = GpModel::fit(xs, ys);
    std::vector<Point> cands;
    for (int i = 0; i < 30; ++i) cands.push_back(random_point(rng, 2));
    std::size_t mean_arg = 0, std_arg = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
      if (m.predict(cands[i]).mean > m.predict(cands[mean_arg]).mean) mean_arg = i;
      if (m.predict(cands[i]).std > m.predict(cands[std_arg]).std) std_arg = i;
    }
    CHECK(ucb_acquire(m, cands, {0.0}) == mean_arg);
    CHECK(ucb_acquire(m, cands, {1e6}) == std_arg);
  }
}
