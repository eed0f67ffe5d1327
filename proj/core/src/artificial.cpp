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

#include "cego/artificial.hpp"

#include <cmath>

#include "cego/errors.hpp"

namespace cego {

namespace {

void check_box(const ParameterVector& theta) {
  if (theta.size() != 2) throw InvalidArgument("artificial problem: theta must be 2-dimensional");
  for (Eigen::Index d = 0; d < 2; ++d) {
    if (!std::isfinite(theta[d]) || std::abs(theta[d]) > kArtificialBound) {
      throw InvalidArgument("artificial problem: theta outside [-10, 10]^2");
    }
  }
}

Evaluation evaluate_unchecked(const ParameterVector& theta, double g_thr) {
  const double a = theta[0];
  const double b = theta[1];
  return {std::cos(2.0 * a) * std::cos(b) + std::sin(a), {std::cos(a + b) - g_thr}};
}

Domain artificial_domain(std::size_t grid_count) {
  return Domain::uniform({-kArtificialBound, -kArtificialBound}, {kArtificialBound, kArtificialBound},
                         grid_count);
}

}  // namespace

Evaluation artificial_eval(const ParameterVector& theta, double g_thr) {
  check_box(theta);
  if (!(g_thr > -1.0 && g_thr < 1.0)) throw InvalidArgument("artificial problem: g_thr must lie in (-1, 1)");
  return evaluate_unchecked(theta, g_thr);
}

Evaluation artificial_infeasible_variant(const ParameterVector& theta) {
  check_box(theta);
  return evaluate_unchecked(theta, kInfeasibleThreshold);
}

ArtificialProblem::ArtificialProblem(double g_thr, std::size_t grid_count, double noise_std)
    : Problem("artificial", artificial_domain(grid_count), 1, {noise_std, noise_std}), g_thr_(g_thr) {
  if (!(g_thr > -1.0 && g_thr < 1.0)) throw InvalidArgument("artificial problem: g_thr must lie in (-1, 1)");
}

Evaluation ArtificialProblem::evaluate(const ParameterVector& theta) { return artificial_eval(theta, g_thr_); }

ArtificialInfeasibleProblem::ArtificialInfeasibleProblem(std::size_t grid_count, double noise_std)
    : Problem("artificial_infeasible", artificial_domain(grid_count), 1, {noise_std, noise_std}) {}

Evaluation ArtificialInfeasibleProblem::evaluate(const ParameterVector& theta) {
  return artificial_infeasible_variant(theta);
}

}  // namespace cego
