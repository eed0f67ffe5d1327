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

#include <array>
#include <cstddef>

#include "cego/problem.hpp"
#include "cego/williams_otto_constants.hpp"

namespace cego {

// Converged steady state of the Williams-Otto reactor.
struct CstrState {
  // Outlet mass fractions.
  double x_a = 0.0;
  double x_b = 0.0;
  double x_c = 0.0;
  double x_e = 0.0;
  double x_g = 0.0;
  double x_p = 0.0;
  double feed_a = 0.0;       // kg/s
  double feed_b = 0.0;       // kg/s
  double temperature = 0.0;  // degC
  double residual = 0.0;     // max-norm of the mass-balance residual
  std::size_t iterations = 0;

  // {A, B, C, E, G, P}
  std::array<double, 6> fractions() const { return {x_a, x_b, x_c, x_e, x_g, x_p}; }
};

struct CstrOptions {
  // Scales every rate constant; 0 switches the reactions off.
  double rate_multiplier = 1.0;
  std::size_t max_iterations = 200;
  double tolerance = 1e-10;
  // Skip the operating-range check (used by oracles exploring the edges).
  bool allow_out_of_range = false;
};

// Mass-balance residual [kg/s] of the six species, ordered {A, B, C, E, G, P}.
std::array<double, 6> cstr_residual(const std::array<double, 6>& x, double feed_b, double temperature,
                                    double rate_multiplier = 1.0,
                                    const williams_otto::Constants& c = williams_otto::kConstants);

// Damped Newton with analytic Jacobian from the no-reaction (feed) composition;
// falls back to damped fixed-point iteration, then polishes with Newton.
// Throws NumericalError if the residual does not reach the tolerance.
CstrState cstr_steady_state(double feed_b, double temperature, const CstrOptions& options = {});

// (J, g_1, g_2) at theta = (F_B, T_r): J = -profit, g_1 = X_A - 0.12, g_2 = X_G - 0.08.
Evaluation williams_otto_eval(const ParameterVector& theta);

double williams_otto_profit(const CstrState& state,
                            const williams_otto::Constants& c = williams_otto::kConstants);

class WilliamsOttoProblem : public Problem {
 public:
  explicit WilliamsOttoProblem(std::size_t grid_count = 100, double noise_std = 0.0);

  Evaluation evaluate(const ParameterVector& theta) override;
};

}  // namespace cego
