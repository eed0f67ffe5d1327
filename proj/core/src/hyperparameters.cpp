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

#include "cego/hyperparameters.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "cego/errors.hpp"

namespace cego {

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw InvalidArgument("log_spaced: bad range");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

HyperparameterGrid HyperparameterGrid::standard(KernelFamily family) {
  HyperparameterGrid grid;
  grid.family = family;
  grid.lengthscale_fractions = log_spaced(1e-2, 10.0, 19);
  grid.output_scale_factors = log_spaced(0.1, 10.0, 9);
  grid.noise_ratios = log_spaced(1e-6, 1e-1, 6);
  return grid;
}

double log_marginal_likelihood(const Kernel& kernel, double noise_variance,
                               const Eigen::Ref<const Eigen::MatrixXd>& points,
                               const Eigen::Ref<const Eigen::VectorXd>& values) {
  Eigen::MatrixXd gram = kernel.cross(points, points);
  gram.diagonal().array() += noise_variance;
  const Eigen::MatrixXd chol = cholesky_lower(gram);
  const Eigen::VectorXd z = chol.triangularView<Eigen::Lower>().solve(values);
  const double n = static_cast<double>(values.size());
  return -0.5 * z.squaredNorm() - chol.diagonal().array().log().sum() -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

FittedHyperparameters fit_hyperparameters(std::span<const Observation> observations,
                                          const Domain& domain, const HyperparameterGrid& grid) {
  if (observations.size() < 4) {
    throw InvalidArgument("fit_hyperparameters: need at least 4 observations, got " +
                          std::to_string(observations.size()));
  }
  const auto n = static_cast<Eigen::Index>(observations.size());
  const auto d = static_cast<Eigen::Index>(domain.dim());
  Eigen::MatrixXd points(n, d);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Observation& obs = observations[static_cast<std::size_t>(i)];
    if (obs.point.size() != d) throw InvalidArgument("fit_hyperparameters: dimension mismatch");
    points.row(i) = obs.point.transpose();
    values[i] = obs.value;
  }
  double rms = std::sqrt(values.squaredNorm() / static_cast<double>(n));
  if (!(rms > 0.0)) rms = 1.0;

  Eigen::VectorXd widths(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    widths[k] = domain.upper()[static_cast<std::size_t>(k)] - domain.lower()[static_cast<std::size_t>(k)];
  }

  std::optional<FittedHyperparameters> best;
  for (double fraction : grid.lengthscale_fractions) {
    for (double factor : grid.output_scale_factors) {
      const Kernel kernel(grid.family, widths * fraction, rms * factor);
      for (double ratio : grid.noise_ratios) {
        const double noise = kernel.variance() * ratio;
        double lml = 0.0;
        try {
          lml = log_marginal_likelihood(kernel, noise, points, values);
        } catch (const NumericalError&) {
          continue;
        }
        if (!std::isfinite(lml)) continue;
        if (!best || lml > best->log_marginal_likelihood) {
          best = FittedHyperparameters{kernel, noise, lml};
        }
      }
    }
  }
  if (!best) throw NumericalError("fit_hyperparameters: every candidate failed (degenerate data)");
  return *best;
}

}  // namespace cego
