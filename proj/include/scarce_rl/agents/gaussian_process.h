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

#ifndef SCARCE_RL_AGENTS_GAUSSIAN_PROCESS_H_
#define SCARCE_RL_AGENTS_GAUSSIAN_PROCESS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scarce_rl {

using Point = std::vector<double>;

class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// Dense row-major lower-triangular Cholesky factor of an SPD matrix.
// Returns nullopt when a pivot is not positive.
std::optional<std::vector<double>> cholesky_factor(std::span<const double> a,
                                                   std::size_t n);
// Solves L x = b in place (forward substitution).
void solve_lower(std::span<const double> l, std::size_t n,
                 std::span<double> b);
// Solves L^T x = b in place (back substitution).
void solve_lower_transposed(std::span<const double> l, std::size_t n,
                            std::span<double> b);

struct GpHyperparams {
  double lengthscale = 0.25;
  double variance = 1.0;
  double jitter = 1e-6;
  // Divide centered targets by their spread. When false the targets are only
  // centered and std is in prior units.
  bool standardize = true;
};

// Squared-exponential kernel variance * exp(-|x - y|^2 / (2 l^2)).
double se_kernel(std::span<const double> x, std::span<const double> y,
                 const GpHyperparams& h);

struct GpPrediction {
  double mean = 0.0;
  double std = 0.0;
};

// Exact GP regression with a squared-exponential kernel on internally
// standardized (or just centered) targets. Immutable after construction.
class GpModel {
 public:
  // Prior-only model of dimension `dim`: mean 0, std sqrt(variance).
  static GpModel prior(std::size_t dim, const GpHyperparams& h = {});

  // Throws std::invalid_argument for empty or inconsistent inputs and
  // NumericalFailure when the Cholesky factorization fails even after
  // raising the jitter tenfold three times.
  static GpModel fit(std::vector<Point> points, std::vector<double> targets,
                     const GpHyperparams& h = {});

  GpPrediction predict(std::span<const double> x) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& targets() const { return targets_; }
  const GpHyperparams& hyperparams() const { return hyper_; }
  // Jitter actually used after any escalation.
  double effective_jitter() const { return jitter_; }

 private:
  GpModel() = default;

  std::size_t dim_ = 0;
  GpHyperparams hyper_;
  double jitter_ = 0.0;
  std::vector<Point> points_;
  std::vector<double> targets_;
  double target_mean_ = 0.0;
  double target_scale_ = 1.0;
  std::vector<double> chol_;   // L with L L^T = K + jitter I
  std::vector<double> alpha_;  // (K + jitter I)^-1 y_standardized
};

struct UcbParams {
  double kappa = 2.5;
};

// Index of argmax mean + kappa * std over the candidates; the lowest index
// wins ties. Throws std::invalid_argument for an empty candidate list or a
// negative kappa.
std::size_t ucb_acquire(const GpModel& model, std::span<const Point> candidates,
                        const UcbParams& params);

}  // namespace scarce_rl

#endif  // SCARCE_RL_AGENTS_GAUSSIAN_PROCESS_H_
