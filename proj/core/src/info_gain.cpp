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

#include "cego/info_gain.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "cego/errors.hpp"
#include "cego/gp_model.hpp"

namespace cego {

double information_gain(const Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& points,
                        double noise_variance) {
  if (!(noise_variance > 0.0)) throw InvalidArgument("info gain: noise variance must be positive");
  if (points.rows() == 0) return 0.0;
  Eigen::MatrixXd m = kernel.cross(points, points) / noise_variance;
  m.diagonal().array() += 1.0;
  const Eigen::MatrixXd chol = cholesky_lower(m);
  return chol.diagonal().array().log().sum();  // 1/2 log det = sum log diag(L)
}

namespace {

// n choose k, saturating at cap + 1.
std::size_t choose_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

InfoGainResult max_info_gain_detail(const Kernel& kernel, const Domain& domain, std::size_t t,
                                    double noise_variance, const InfoGainOptions& options) {
  if (!(noise_variance > 0.0)) throw InvalidArgument("info gain: noise variance must be positive");
  if (kernel.dim() != domain.dim()) throw InvalidArgument("info gain: kernel/domain dimension mismatch");
  const std::size_t n = domain.size();
  if (t > n) throw InvalidArgument("info gain: t exceeds the number of grid points");

  InfoGainResult result;
  if (t == 0) return result;

  const Eigen::MatrixXd lattice = domain.lattice();
  const auto d = static_cast<Eigen::Index>(domain.dim());

  std::size_t t0 = t;
  while (t0 > 0 && choose_capped(n, t0, options.exhaustive_limit) > options.exhaustive_limit) --t0;

  if (t0 > 0) {
    std::vector<std::size_t> idx(t0);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Eigen::MatrixXd subset(static_cast<Eigen::Index>(t0), d);
    double best = -std::numeric_limits<double>::infinity();
    do {
      for (std::size_t r = 0; r < t0; ++r) {
        subset.row(static_cast<Eigen::Index>(r)) = lattice.row(static_cast<Eigen::Index>(idx[r]));
      }
      const double gain = information_gain(kernel, subset, noise_variance);
      if (gain > best) {
        best = gain;
        result.subset = idx;
      }
    } while (next_combination(idx, n));
  }
  result.exhaustive_size = t0;

  // Greedy continuation: pivoted-Cholesky style posterior-variance updates.
  const auto g = static_cast<Eigen::Index>(n);
  Eigen::VectorXd var = Eigen::VectorXd::Constant(g, kernel.variance());
  Eigen::MatrixXd rows(0, g);
  double value = 0.0;
  std::vector<char> taken(n, 0);

  auto absorb = [&](std::size_t pivot) {
    const auto p = static_cast<Eigen::Index>(pivot);
    const double pivot_var = std::max(var[p], 0.0);
    value += 0.5 * std::log1p(pivot_var / noise_variance);
    const double denom = std::sqrt(pivot_var + noise_variance);
    Eigen::RowVectorXd w = kernel.cross(lattice.row(p), lattice);
    if (rows.rows() > 0) w.noalias() -= rows.col(p).transpose() * rows;
    w /= denom;
    rows.conservativeResize(rows.rows() + 1, Eigen::NoChange);
    rows.row(rows.rows() - 1) = w;
    var.array() -= w.array().square();
    taken[pivot] = 1;
  };

  for (std::size_t i : result.subset) absorb(i);
  for (std::size_t step = t0; step < t; ++step) {
    std::size_t pick = n;
    double best_var = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i] && var[static_cast<Eigen::Index>(i)] > best_var) {
        best_var = var[static_cast<Eigen::Index>(i)];
        pick = i;
      }
    }
    absorb(pick);
    result.subset.push_back(pick);
  }
  result.value = value;
  return result;
}

double max_info_gain(const Kernel& kernel, const Domain& domain, std::size_t t,
                     double noise_variance, const InfoGainOptions& options) {
  return max_info_gain_detail(kernel, domain, t, noise_variance, options).value;
}

}  // namespace cego
