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

#include "cego/gp_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "cego/errors.hpp"

namespace cego {

double Posterior::stddev() const { return std::sqrt(std::max(variance, 0.0)); }

double clamp_variance(double variance, double prior_variance) {
  if (variance >= 0.0) return variance;
  if (variance >= -1e-9 * std::max(1.0, prior_variance)) return 0.0;
  throw NumericalError("gp: posterior variance " + std::to_string(variance) +
                       " is negative beyond rounding tolerance");
}

Eigen::MatrixXd cholesky_lower(const Eigen::Ref<const Eigen::MatrixXd>& sym) {
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("gp: Cholesky factorization failed (kernel/noise ill-conditioned)");
  }
  Eigen::MatrixXd lower = llt.matrixL();
  if (!lower.allFinite() || (lower.diagonal().array() <= 0.0).any()) {
    throw NumericalError("gp: Cholesky factor is not positive definite");
  }
  return lower;
}

GpModel::GpModel(Kernel kernel, double noise_variance, std::size_t output_index)
    : kernel_(std::move(kernel)),
      noise_variance_(noise_variance),
      output_index_(output_index),
      points_(0, static_cast<Eigen::Index>(kernel_.dim())) {
  if (!(noise_variance_ > 0.0) || !std::isfinite(noise_variance_)) {
    throw InvalidArgument("gp: noise variance must be positive and finite");
  }
}

void GpModel::add_observation(const Observation& obs) {
  if (obs.output_index != output_index_) {
    throw InvalidArgument("gp: observation for output " + std::to_string(obs.output_index) +
                          " added to model of output " + std::to_string(output_index_));
  }
  if (static_cast<std::size_t>(obs.point.size()) != dim()) {
    throw InvalidArgument("gp: observation dimension mismatch");
  }
  if (!obs.point.allFinite() || !std::isfinite(obs.value)) {
    throw InvalidArgument("gp: observation must be finite");
  }

  const Eigen::Index n = points_.rows();
  Eigen::MatrixXd points(n + 1, points_.cols());
  points.topRows(n) = points_;
  points.row(n) = obs.point.transpose();
  Eigen::VectorXd values(n + 1);
  values.head(n) = values_;
  values[n] = obs.value;

  Eigen::MatrixXd gram = kernel_.cross(points, points);
  gram.diagonal().array() += noise_variance_;
  Eigen::MatrixXd chol = cholesky_lower(gram);
  Eigen::VectorXd alpha = chol.triangularView<Eigen::Lower>().solve(values);
  chol.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);

  points_ = std::move(points);
  values_ = std::move(values);
  chol_ = std::move(chol);
  alpha_ = std::move(alpha);
}

GpModel GpModel::with_observation(const Observation& obs) const {
  GpModel next = *this;
  next.add_observation(obs);
  return next;
}

void GpModel::posterior(const Eigen::Ref<const Eigen::MatrixXd>& queries, Eigen::VectorXd& mean,
                        Eigen::VectorXd& variance) const {
  if (static_cast<std::size_t>(queries.cols()) != dim()) {
    throw InvalidArgument("gp: query dimension mismatch");
  }
  const double prior = kernel_.variance();
  const Eigen::Index m = queries.rows();
  if (size() == 0) {
    mean = Eigen::VectorXd::Zero(m);
    variance = Eigen::VectorXd::Constant(m, prior);
    return;
  }
  const Eigen::MatrixXd cross = kernel_.cross(points_, queries);
  mean = cross.transpose() * alpha_;
  const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(cross);
  variance.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    variance[j] = clamp_variance(prior - v.col(j).squaredNorm(), prior);
  }
}

Posterior GpModel::posterior(const ParameterVector& query) const {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
  posterior(query.transpose(), mean, variance);
  return {mean[0], variance[0]};
}

Posterior posterior(const GpModel& model, const ParameterVector& query) {
  return model.posterior(query);
}

double lcb(const GpModel& model, const ParameterVector& query, double beta_sqrt) {
  if (!(beta_sqrt >= 0.0)) throw InvalidArgument("lcb: beta_sqrt must be non-negative");
  const Posterior p = model.posterior(query);
  return p.mean - beta_sqrt * p.stddev();
}

double ucb(const GpModel& model, const ParameterVector& query, double beta_sqrt) {
  if (!(beta_sqrt >= 0.0)) throw InvalidArgument("ucb: beta_sqrt must be non-negative");
  const Posterior p = model.posterior(query);
  return p.mean + beta_sqrt * p.stddev();
}

}  // namespace cego
