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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cego/domain.hpp"
#include "cego/gp_model.hpp"

namespace cego {

// Per-point admissibility flags over the lattice; nonzero = admissible.
using GridMask = std::vector<std::uint8_t>;

// Posterior summaries of every output model on every lattice point. Rows are
// lattice indices (row-major lattice order), columns are outputs.
struct GridEvaluation {
  Eigen::MatrixXd mean;
  Eigen::MatrixXd stddev;
  Eigen::MatrixXd lcb;
  Eigen::MatrixXd ucb;

  std::size_t size() const { return static_cast<std::size_t>(mean.rows()); }
  std::size_t outputs() const { return static_cast<std::size_t>(mean.cols()); }
};

// `beta_sqrt` holds one confidence multiplier per model.
GridEvaluation evaluate_grid(std::span<const GpModel> models, std::span<const double> beta_sqrt,
                             const Eigen::Ref<const Eigen::MatrixXd>& lattice);

GridEvaluation evaluate_grid(std::span<const GpModel> models, std::span<const double> beta_sqrt,
                             const Domain& domain);

// Smallest-index minimizer of `scores` over admissible points (all points when
// `mask` is empty). NaN scores are never selected. nullopt when nothing is
// admissible.
std::optional<std::size_t> constrained_argmin(std::span<const double> scores,
                                              std::span<const std::uint8_t> mask = {});

std::optional<std::size_t> constrained_argmax(std::span<const double> scores,
                                              std::span<const std::uint8_t> mask = {});

inline std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace cego
