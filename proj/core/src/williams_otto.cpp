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

#include "cego/williams_otto.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cego/errors.hpp"

namespace cego {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

enum Species { kA = 0, kB, kC, kE, kG, kP };

struct Rates {
  double k1, k2, k3;
};

Rates rate_constants(double temperature, double multiplier, const williams_otto::Constants& c) {
  const double kelvin = temperature + c.kelvin_offset;
  return {multiplier * c.pre_exponential[0] * std::exp(-c.activation[0] / kelvin),
          multiplier * c.pre_exponential[1] * std::exp(-c.activation[1] / kelvin),
          multiplier * c.pre_exponential[2] * std::exp(-c.activation[2] / kelvin)};
}

Vec6 residual(const Vec6& x, double feed_b, const Rates& k, const williams_otto::Constants& c) {
  const double f = c.feed_a + feed_b;
  const double w = c.reactor_mass;
  const double r1 = k.k1 * x[kA] * x[kB];
  const double r2 = k.k2 * x[kB] * x[kC];
  const double r3 = k.k3 * x[kC] * x[kP];
  Vec6 out;
  out[kA] = c.feed_a - f * x[kA] - w * r1;
  out[kB] = feed_b - f * x[kB] - w * r1 - w * r2;
  out[kC] = -f * x[kC] + 2.0 * w * r1 - 2.0 * w * r2 - w * r3;
  out[kE] = -f * x[kE] + 2.0 * w * r2;
  out[kG] = -f * x[kG] + 1.5 * w * r3;
  out[kP] = -f * x[kP] + w * r2 - 0.5 * w * r3;
  return out;
}

Mat6 jacobian(const Vec6& x, double feed_b, const Rates& k, const williams_otto::Constants& c) {
  const double f = c.feed_a + feed_b;
  const double w = c.reactor_mass;
  // Partial derivatives of the three rates.
  Vec6 d1 = Vec6::Zero();
  Vec6 d2 = Vec6::Zero();
  Vec6 d3 = Vec6::Zero();
  d1[kA] = k.k1 * x[kB];
  d1[kB] = k.k1 * x[kA];
  d2[kB] = k.k2 * x[kC];
  d2[kC] = k.k2 * x[kB];
  d3[kC] = k.k3 * x[kP];
  d3[kP] = k.k3 * x[kC];

  Mat6 j = -f * Mat6::Identity();
  j.row(kA) += (-w * d1).transpose();
  j.row(kB) += (-w * d1 - w * d2).transpose();
  j.row(kC) += (2.0 * w * d1 - 2.0 * w * d2 - w * d3).transpose();
  j.row(kE) += (2.0 * w * d2).transpose();
  j.row(kG) += (1.5 * w * d3).transpose();
  j.row(kP) += (w * d2 - 0.5 * w * d3).transpose();
  return j;
}

double max_norm(const Vec6& v) { return v.cwiseAbs().maxCoeff(); }

bool newton(Vec6& x, double feed_b, const Rates& k, const williams_otto::Constants& c,
            const CstrOptions& options, std::size_t& iterations) {
  Vec6 r = residual(x, feed_b, k, c);
  while (iterations < options.max_iterations) {
    if (max_norm(r) <= options.tolerance) return true;
    ++iterations;
    const Vec6 step = jacobian(x, feed_b, k, c).partialPivLu().solve(-r);
    if (!step.allFinite()) return false;
    double damping = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings, damping *= 0.5) {
      const Vec6 trial = x + damping * step;
      const Vec6 trial_r = residual(trial, feed_b, k, c);
      if (trial.minCoeff() >= -1e-12 && max_norm(trial_r) < max_norm(r)) {
        x = trial;
        r = trial_r;
        accepted = true;
        break;
      }
    }
    if (!accepted) return max_norm(r) <= options.tolerance;
  }
  return max_norm(r) <= options.tolerance;
}

// x <- (1 - a) x + a (feed + W * generation(x)) / F
void fixed_point(Vec6& x, double feed_b, const Rates& k, const williams_otto::Constants& c,
                 std::size_t sweeps) {
  const double f = c.feed_a + feed_b;
  for (std::size_t i = 0; i < sweeps; ++i) {
    const Vec6 r = residual(x, feed_b, k, c);
    x = (x + 0.5 * r / f).cwiseMax(0.0);
  }
}

}  // namespace

std::array<double, 6> cstr_residual(const std::array<double, 6>& x, double feed_b, double temperature,
                                    double rate_multiplier, const williams_otto::Constants& c) {
  const Vec6 v = Eigen::Map<const Vec6>(x.data());
  const Vec6 r = residual(v, feed_b, rate_constants(temperature, rate_multiplier, c), c);
  return {r[0], r[1], r[2], r[3], r[4], r[5]};
}

CstrState cstr_steady_state(double feed_b, double temperature, const CstrOptions& options) {
  const auto& c = williams_otto::kConstants;
  if (!std::isfinite(feed_b) || !std::isfinite(temperature)) {
    throw InvalidArgument("cstr: non-finite operating point");
  }
  if (!options.allow_out_of_range &&
      (feed_b < c.feed_b_range[0] || feed_b > c.feed_b_range[1] ||
       temperature < c.temperature_range[0] || temperature > c.temperature_range[1])) {
    throw InvalidArgument("cstr: operating point outside F_B in [4, 7], T_r in [70, 100]");
  }
  if (!(options.rate_multiplier >= 0.0)) throw InvalidArgument("cstr: rate multiplier must be >= 0");

  const Rates k = rate_constants(temperature, options.rate_multiplier, c);
  const double f = c.feed_a + feed_b;
  Vec6 x = Vec6::Zero();
  x[kA] = c.feed_a / f;
  x[kB] = feed_b / f;

  std::size_t iterations = 0;
  bool converged = newton(x, feed_b, k, c, options, iterations);
  if (!converged) {
    x.setZero();
    x[kA] = c.feed_a / f;
    x[kB] = feed_b / f;
    fixed_point(x, feed_b, k, c, 2000);
    std::size_t polish = 0;
    converged = newton(x, feed_b, k, c, options, polish);
    iterations += polish;
  }
  const double res = max_norm(residual(x, feed_b, k, c));
  if (!converged || x.minCoeff() < -1e-10) {
    throw NumericalError("cstr: steady state did not converge at F_B=" + std::to_string(feed_b) +
                         ", T_r=" + std::to_string(temperature) + " (residual " + std::to_string(res) + ")");
  }

  CstrState s;
  s.x_a = x[kA];
  s.x_b = x[kB];
  s.x_c = x[kC];
  s.x_e = x[kE];
  s.x_g = x[kG];
  s.x_p = x[kP];
  s.feed_a = c.feed_a;
  s.feed_b = feed_b;
  s.temperature = temperature;
  s.residual = res;
  s.iterations = iterations;
  return s;
}

double williams_otto_profit(const CstrState& s, const williams_otto::Constants& c) {
  const double f = s.feed_a + s.feed_b;
  return c.price_p * f * s.x_p + c.price_e * f * s.x_e - c.cost_a * s.feed_a - c.cost_b * s.feed_b;
}

Evaluation williams_otto_eval(const ParameterVector& theta) {
  if (theta.size() != 2) throw InvalidArgument("williams-otto: theta must be (F_B, T_r)");
  const auto& c = williams_otto::kConstants;
  const CstrState s = cstr_steady_state(theta[0], theta[1]);
  return {-williams_otto_profit(s), {s.x_a - c.limit_a, s.x_g - c.limit_g}};
}

namespace {

Domain williams_otto_domain(std::size_t grid_count) {
  const auto& c = williams_otto::kConstants;
  return Domain::uniform({c.feed_b_range[0], c.temperature_range[0]},
                         {c.feed_b_range[1], c.temperature_range[1]}, grid_count);
}

}  // namespace

WilliamsOttoProblem::WilliamsOttoProblem(std::size_t grid_count, double noise_std)
    : Problem("williams_otto", williams_otto_domain(grid_count), 2,
              {noise_std, noise_std, noise_std}) {}

Evaluation WilliamsOttoProblem::evaluate(const ParameterVector& theta) { return williams_otto_eval(theta); }

}  // namespace cego
