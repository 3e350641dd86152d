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

#include "scarce_rl/agents/gaussian_process.h"

#include <cmath>
#include <utility>

namespace scarce_rl {

std::optional<std::vector<double>> cholesky_factor(std::span<const double> a,
                                                   std::size_t n) {
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * n + k] * l[j * n + k];
    if (!(diag > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  return l;
}

void solve_lower(std::span<const double> l, std::size_t n,
                 std::span<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
}

void solve_lower_transposed(std::span<const double> l, std::size_t n,
                            std::span<double> b) {
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * b[k];
    b[ii] = s / l[ii * n + ii];
  }
}

double se_kernel(std::span<const double> x, std::span<const double> y,
                 const GpHyperparams& h) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    d2 += d * d;
  }
  return h.variance * std::exp(-d2 / (2.0 * h.lengthscale * h.lengthscale));
}

GpModel GpModel::prior(std::size_t dim, const GpHyperparams& h) {
  if (!(h.lengthscale > 0.0) || !(h.variance > 0.0)) {
    throw std::invalid_argument("GP lengthscale and variance must be positive");
  }
  GpModel m;
  m.dim_ = dim;
  m.hyper_ = h;
  m.jitter_ = h.jitter;
  return m;
}

GpModel GpModel::fit(std::vector<Point> points, std::vector<double> targets,
                     const GpHyperparams& h) {
  if (points.empty()) throw std::invalid_argument("GP fit needs observations");
  if (points.size() != targets.size()) {
    throw std::invalid_argument("GP points and targets differ in length");
  }
  if (!(h.jitter > 0.0)) throw std::invalid_argument("jitter must be positive");
  GpModel m = prior(points.front().size(), h);
  for (const Point& p : points) {
    if (p.size() != m.dim_) {
      throw std::invalid_argument("GP points have inconsistent dimension");
    }
  }
  const std::size_t n = points.size();

  double mean = 0.0;
  for (double t : targets) mean += t;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double t : targets) var += (t - mean) * (t - mean);
  var /= static_cast<double>(n);
  m.target_mean_ = mean;
  m.target_scale_ = h.standardize && var > 1e-24 ? std::sqrt(var) : 1.0;

  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      k[i * n + j] = k[j * n + i] = se_kernel(points[i], points[j], h);
    }
  }
  double jitter = h.jitter;
  std::optional<std::vector<double>> chol;
  for (int attempt = 0; attempt <= 3; ++attempt, jitter *= 10.0) {
    std::vector<double> kj = k;
    for (std::size_t i = 0; i < n; ++i) kj[i * n + i] += jitter;
    chol = cholesky_factor(kj, n);
    if (chol) break;
  }
  if (!chol) {
    throw NumericalFailure("kernel matrix is not positive definite");
  }
  m.jitter_ = jitter;
  m.chol_ = std::move(*chol);

  m.alpha_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.alpha_[i] = (targets[i] - m.target_mean_) / m.target_scale_;
  }
  solve_lower(m.chol_, n, m.alpha_);
  solve_lower_transposed(m.chol_, n, m.alpha_);

  m.points_ = std::move(points);
  m.targets_ = std::move(targets);
  return m;
}

GpPrediction GpModel::predict(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("query dimension does not match the GP");
  }
  const std::size_t n = points_.size();
  if (n == 0) return {0.0, std::sqrt(hyper_.variance)};

  std::vector<double> kx(n);
  double mean_std = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kx[i] = se_kernel(x, points_[i], hyper_);
    mean_std += kx[i] * alpha_[i];
  }
  solve_lower(chol_, n, kx);
  double explained = 0.0;
  for (double v : kx) explained += v * v;
  const double var_std = hyper_.variance - explained;

  GpPrediction p;
  p.mean = target_mean_ + target_scale_ * mean_std;
  p.std = var_std > 0.0 ? target_scale_ * std::sqrt(var_std) : 0.0;
  return p;
}

std::size_t ucb_acquire(const GpModel& model, std::span<const Point> candidates,
                        const UcbParams& params) {
  if (candidates.empty()) throw std::invalid_argument("no UCB candidates");
  if (!(params.kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const GpPrediction p = model.predict(candidates[i]);
    const double score = p.mean + params.kappa * p.std;
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

}  // namespace scarce_rl
