// Copyright 2026 The Authors.
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

#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "cego/domain.hpp"
#include "cego/kernel.hpp"

namespace cego {

// One measurement of output `output_index` (0 = objective, i >= 1 = constraint i).
struct Observation {
  ParameterVector point;
  double value = 0.0;
  std::size_t output_index = 0;
};

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;

  double stddev() const;
};

// Zero-mean GP regression for a single output with i.i.d. Gaussian noise of
// variance `noise_variance`. The Cholesky factor of (K + noise * I) is rebuilt
// on every added observation; queries are const and safe to run concurrently
// between updates.
class GpModel {
 public:
  GpModel(Kernel kernel, double noise_variance, std::size_t output_index = 0);

  const Kernel& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  std::size_t output_index() const { return output_index_; }
  std::size_t dim() const { return kernel_.dim(); }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

  // Training inputs, one per row, in insertion order.
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& values() const { return values_; }

  // Lower-triangular L with L L^T = K + noise * I. Empty when size() == 0.
  const Eigen::MatrixXd& cholesky_factor() const { return chol_; }

  // Appends one observation. On failure (bad input, Cholesky breakdown) the
  // model is left unchanged.
  void add_observation(const Observation& obs);
  GpModel with_observation(const Observation& obs) const;

  Posterior posterior(const ParameterVector& query) const;

  // Batched posterior for every row of `queries`. Uses one triangular solve
  // against all cross-covariance columns.
  void posterior(const Eigen::Ref<const Eigen::MatrixXd>& queries, Eigen::VectorXd& mean,
                 Eigen::VectorXd& variance) const;

 private:
  Kernel kernel_;
  double noise_variance_;
  std::size_t output_index_;
  Eigen::MatrixXd points_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
};

// Negative variances in [-1e-9 * max(1, prior), 0) are rounding noise and map to
// zero; anything more negative throws NumericalError.
double clamp_variance(double variance, double prior_variance);

Posterior posterior(const GpModel& model, const ParameterVector& query);

// mean - beta_sqrt * stddev
double lcb(const GpModel& model, const ParameterVector& query, double beta_sqrt);
// mean + beta_sqrt * stddev
double ucb(const GpModel& model, const ParameterVector& query, double beta_sqrt);

// Lower Cholesky factor of a symmetric matrix; throws NumericalError when the
// matrix is not numerically positive definite.
Eigen::MatrixXd cholesky_lower(const Eigen::Ref<const Eigen::MatrixXd>& sym);

}  // namespace cego
