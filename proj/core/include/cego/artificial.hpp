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

#include "cego/problem.hpp"

namespace cego {

// J(theta) = cos(2 theta_1) cos(theta_2) + sin(theta_1)
// g(theta) = cos(theta_1 + theta_2) - g_thr
// over theta in [-10, 10]^2, g_thr in (-1, 1).
Evaluation artificial_eval(const ParameterVector& theta, double g_thr);

// Same objective with g_thr = -2, so g >= 1 everywhere and no feasible point exists.
Evaluation artificial_infeasible_variant(const ParameterVector& theta);

inline constexpr double kArtificialBound = 10.0;
inline constexpr double kInfeasibleThreshold = -2.0;

class ArtificialProblem : public Problem {
 public:
  ArtificialProblem(double g_thr, std::size_t grid_count = 100, double noise_std = 0.01);

  double threshold() const { return g_thr_; }
  Evaluation evaluate(const ParameterVector& theta) override;

 private:
  double g_thr_;
};

class ArtificialInfeasibleProblem : public Problem {
 public:
  explicit ArtificialInfeasibleProblem(std::size_t grid_count = 100, double noise_std = 0.01);

  Evaluation evaluate(const ParameterVector& theta) override;
};

}  // namespace cego
