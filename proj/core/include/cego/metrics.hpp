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

#include "cego/run_log.hpp"

namespace cego {

// Standard deviations used to put objective and constraints on one scale.
struct Normalizers {
  double objective = 1.0;
  std::vector<double> constraints;
};

enum class NormalizedMode {
  kRegret,    // [J - J*]^+ / s_J + sum_i [g_i]^+ / s_i
  kAbsolute,  // J / s_J + sum_i [g_i]^+ / s_i (no known optimum)
};

// Outputs metrics are computed on: the noiseless truth when logged, the
// measurements otherwise.
const std::vector<double>& metric_values(const RunRecord& record);

// True when any sample record lacks ground truth.
bool uses_measured_values(std::span<const RunRecord> records);

// [J - J*]^+ + sum_i [g_i]^+ for one record.
double instantaneous_regret(const RunRecord& record, double j_star);

// min over sample records of instantaneous_regret; +inf when there are none.
// Requires noiseless values on every sample record.
double constrained_regret(std::span<const RunRecord> records, double j_star);

double normalized_regret_violation(const RunRecord& record, double j_star, const Normalizers& sigmas,
                                   NormalizedMode mode = NormalizedMode::kRegret);

// Running minimum.
std::vector<double> best_so_far_series(std::span<const double> values);

// sum_t [g_i(theta_t)]^+ per constraint.
std::vector<double> cumulative_violation(std::span<const RunRecord> records);

}  // namespace cego
