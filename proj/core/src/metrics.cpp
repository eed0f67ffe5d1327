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

#include "cego/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cego/errors.hpp"

namespace cego {

namespace {

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

void check_outputs(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("metrics: record has no output values");
}

}  // namespace

const std::vector<double>& metric_values(const RunRecord& record) {
  return record.truth ? *record.truth : record.y;
}

bool uses_measured_values(std::span<const RunRecord> records) {
  return std::any_of(records.begin(), records.end(),
                     [](const RunRecord& r) { return r.is_sample() && !r.truth; });
}

double instantaneous_regret(const RunRecord& record, double j_star) {
  if (!record.truth) throw InvalidArgument("constrained regret: record " + std::to_string(record.t) +
                                           " has no noiseless values");
  const auto& v = *record.truth;
  check_outputs(v);
  double regret = positive_part(v[0] - j_star);
  for (std::size_t i = 1; i < v.size(); ++i) regret += positive_part(v[i]);
  return regret;
}

double constrained_regret(std::span<const RunRecord> records, double j_star) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (r.is_sample()) best = std::min(best, instantaneous_regret(r, j_star));
  }
  return best;
}

double normalized_regret_violation(const RunRecord& record, double j_star, const Normalizers& sigmas,
                                   NormalizedMode mode) {
  const auto& v = metric_values(record);
  check_outputs(v);
  if (sigmas.constraints.size() + 1 != v.size()) {
    throw InvalidArgument("normalized metric: one normalizer per constraint required");
  }
  if (!(sigmas.objective > 0.0)) throw InvalidArgument("normalized metric: normalizers must be positive");
  double value = mode == NormalizedMode::kRegret ? positive_part(v[0] - j_star) / sigmas.objective
                                                 : v[0] / sigmas.objective;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double s = sigmas.constraints[i - 1];
    if (!(s > 0.0)) throw InvalidArgument("normalized metric: normalizers must be positive");
    value += positive_part(v[i]) / s;
  }
  return value;
}

std::vector<double> best_so_far_series(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = std::min(out[k], out[k - 1]);
  return out;
}

std::vector<double> cumulative_violation(std::span<const RunRecord> records) {
  std::vector<double> total;
  for (const auto& r : records) {
    if (!r.is_sample()) continue;
    const auto& v = metric_values(r);
    check_outputs(v);
    if (total.empty()) total.assign(v.size() - 1, 0.0);
    if (total.size() + 1 != v.size()) throw InvalidArgument("cumulative violation: inconsistent output count");
    for (std::size_t i = 1; i < v.size(); ++i) total[i - 1] += positive_part(v[i]);
  }
  return total;
}

}  // namespace cego
