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
#include <vector>

#include <Eigen/Core>

#include "cego/domain.hpp"
#include "cego/kernel.hpp"

namespace cego {

// 1/2 log det(I + K_A / noise) for the rows of `points`.
double information_gain(const Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& points,
                        double noise_variance);

struct InfoGainOptions {
  // Subset sizes whose number of candidate subsets (n choose size) stays at or
  // below this are maximized exhaustively.
  std::size_t exhaustive_limit = 20000;
};

struct InfoGainResult {
  double value = 0.0;
  std::vector<std::size_t> subset;  // grid indices, in selection order
  std::size_t exhaustive_size = 0;  // leading part of `subset` found by enumeration
  bool exact() const { return exhaustive_size == subset.size(); }
};

// Maximum information gain over size-t subsets of the domain lattice.
//
// The largest size t0 <= t with (n choose t0) within the exhaustive limit is
// solved exactly; the remaining t - t0 points are added greedily, each time
// taking the lattice point with the largest posterior variance. Greedy steps
// carry the usual (1 - 1/e) guarantee relative to the true maximum. The
// result is non-decreasing in t for fixed options.
InfoGainResult max_info_gain_detail(const Kernel& kernel, const Domain& domain, std::size_t t,
                                    double noise_variance, const InfoGainOptions& options = {});

double max_info_gain(const Kernel& kernel, const Domain& domain, std::size_t t,
                     double noise_variance, const InfoGainOptions& options = {});

}  // namespace cego
