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

#include "cego/beta_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cego/errors.hpp"

namespace cego {

void BetaSchedule::validate() const {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument("beta: value must be positive");
  if (mode == Mode::kLogGrowth && !(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("beta: delta must lie in (0, 1)");
  }
}

double BetaSchedule::beta_sqrt(std::size_t t, std::size_t grid_size) const {
  validate();
  if (mode == Mode::kConstant) return value;
  const double step = static_cast<double>(std::max<std::size_t>(t, 1));
  const double n = static_cast<double>(std::max<std::size_t>(grid_size, 1));
  const double arg = n * step * step * std::numbers::pi * std::numbers::pi / (6.0 * delta);
  return value * std::sqrt(2.0 * std::log(arg));
}

std::string_view to_string(BetaSchedule::Mode mode) {
  return mode == BetaSchedule::Mode::kConstant ? "constant" : "log_growth";
}

BetaSchedule::Mode beta_mode_from_string(std::string_view name) {
  if (name == "constant") return BetaSchedule::Mode::kConstant;
  if (name == "log_growth" || name == "log-growth") return BetaSchedule::Mode::kLogGrowth;
  throw InvalidArgument("unknown beta schedule mode '" + std::string(name) + "'");
}

}  // namespace cego
