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

#include <span>
#include <vector>

#include <Eigen/Core>

#include "cego/domain.hpp"
#include "cego/gp_model.hpp"
#include "cego/kernel.hpp"

namespace cego {

// Candidate grid for kernel hyperparameter search. Lengthscales are fractions
// of each domain side; output scales are multiples of the data RMS; noise
// variances are ratios of the candidate output variance.
struct HyperparameterGrid {
  KernelFamily family = KernelFamily::kSquaredExponential;
  std::vector<double> lengthscale_fractions;
  std::vector<double> output_scale_factors;
  std::vector<double> noise_ratios;

  // 19 log-spaced lengthscale fractions in [1e-2, 10], 9 output-scale
  // factors in [0.1, 10], noise ratios 1e-6 ... 1e-1.
  static HyperparameterGrid standard(KernelFamily family = KernelFamily::kSquaredExponential);
};

struct FittedHyperparameters {
  Kernel kernel;
  double noise_variance;
  double log_marginal_likelihood;
};

// Exact log p(y | X) of a zero-mean GP.
double log_marginal_likelihood(const Kernel& kernel, double noise_variance,
                               const Eigen::Ref<const Eigen::MatrixXd>& points,
                               const Eigen::Ref<const Eigen::VectorXd>& values);

// Exhaustive grid search for the candidate maximizing the log marginal
// likelihood. Deterministic; ties keep the first candidate in
// (lengthscale, output scale, noise) loop order. Needs >= 4 observations.
FittedHyperparameters fit_hyperparameters(std::span<const Observation> observations,
                                          const Domain& domain,
                                          const HyperparameterGrid& grid = HyperparameterGrid::standard());

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace cego
