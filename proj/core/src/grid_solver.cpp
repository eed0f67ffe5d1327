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

#include "cego/grid_solver.hpp"

#include <cmath>

#include "cego/errors.hpp"

namespace cego {

GridEvaluation evaluate_grid(std::span<const GpModel> models, std::span<const double> beta_sqrt,
                             const Eigen::Ref<const Eigen::MatrixXd>& lattice) {
  if (models.size() != beta_sqrt.size()) {
    throw InvalidArgument("evaluate_grid: one beta_sqrt per model required");
  }
  const Eigen::Index g = lattice.rows();
  const auto k = static_cast<Eigen::Index>(models.size());
  GridEvaluation table;
  table.mean.resize(g, k);
  table.stddev.resize(g, k);
  table.lcb.resize(g, k);
  table.ucb.resize(g, k);

  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double beta = beta_sqrt[static_cast<std::size_t>(i)];
    if (!(beta >= 0.0)) throw InvalidArgument("evaluate_grid: beta_sqrt must be non-negative");
    models[static_cast<std::size_t>(i)].posterior(lattice, mean, variance);
    table.mean.col(i) = mean;
    table.stddev.col(i) = variance.array().sqrt();
    table.lcb.col(i) = table.mean.col(i) - beta * table.stddev.col(i);
    table.ucb.col(i) = table.mean.col(i) + beta * table.stddev.col(i);
  }
  return table;
}

GridEvaluation evaluate_grid(std::span<const GpModel> models, std::span<const double> beta_sqrt,
                             const Domain& domain) {
  return evaluate_grid(models, beta_sqrt, domain.lattice());
}

namespace {

template <typename Better>
std::optional<std::size_t> select(std::span<const double> scores, std::span<const std::uint8_t> mask,
                                  Better better) {
  if (!mask.empty() && mask.size() != scores.size()) {
    throw InvalidArgument("grid argmin/argmax: mask length does not match scores");
  }
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!mask.empty() && mask[i] == 0) continue;
    if (std::isnan(scores[i])) continue;
    if (!best || better(scores[i], scores[*best])) best = i;
  }
  return best;
}

}  // namespace

std::optional<std::size_t> constrained_argmin(std::span<const double> scores,
                                              std::span<const std::uint8_t> mask) {
  return select(scores, mask, [](double a, double b) { return a < b; });
}

std::optional<std::size_t> constrained_argmax(std::span<const double> scores,
                                              std::span<const std::uint8_t> mask) {
  return select(scores, mask, [](double a, double b) { return a > b; });
}

}  // namespace cego
