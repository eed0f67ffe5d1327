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
#include <string>
#include <string_view>

namespace cego {

// Confidence multiplier schedule beta^{1/2}_t.
//
//   constant:   beta^{1/2}_t = value
//   log-growth: beta^{1/2}_t = value * sqrt(2 log(|grid| t^2 pi^2 / (6 delta)))
struct BetaSchedule {
  enum class Mode { kConstant, kLogGrowth };

  Mode mode = Mode::kConstant;
  double value = 2.0;
  double delta = 0.1;

  // `t` is the 1-based step about to be taken; t = 0 is treated as t = 1.
  double beta_sqrt(std::size_t t, std::size_t grid_size) const;

  void validate() const;
};

std::string_view to_string(BetaSchedule::Mode mode);
BetaSchedule::Mode beta_mode_from_string(std::string_view name);

}  // namespace cego
