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
#include <string_view>

namespace cego::williams_otto {

// Plant data for the Williams-Otto CSTR with reactions
//   A + B -> C      k1
//   B + C -> P + E  k2
//   C + P -> G      k3
// and Arrhenius rates k_j = pre_exponential_j * exp(-activation_j / (T_r + kelvin_offset)).
// Values follow the steady-state real-time-optimization literature
// (Williams & Otto 1960; Roberts 1979; Mendoza et al. 2016; del Rio Chanona et al. 2021).
struct Constants {
  std::string_view version;
  double feed_a;         // F_A [kg/s], fixed
  double reactor_mass;   // W [kg]
  double kelvin_offset;  // T_r is given in degrees Celsius
  std::array<double, 3> pre_exponential;  // [1/s]
  std::array<double, 3> activation;       // E_j / R [K]
  // Profit = price_p * F * X_P + price_e * F * X_E - cost_a * F_A - cost_b * F_B, F = F_A + F_B.
  double price_p;
  double price_e;
  double cost_a;
  double cost_b;
  // Outlet limits X_A <= limit_a, X_G <= limit_g.
  double limit_a;
  double limit_g;
  // Admissible operating box.
  std::array<double, 2> feed_b_range;       // [kg/s]
  std::array<double, 2> temperature_range;  // [degC]
};

inline constexpr Constants kConstants{
    "williams-otto/1",
    1.8275,
    2105.0,
    273.15,
    {1.6599e6, 7.2117e8, 2.6745e12},
    {6666.7, 8333.3, 11111.0},
    1143.38,
    25.92,
    76.23,
    114.34,
    0.12,
    0.08,
    {4.0, 7.0},
    {70.0, 100.0},
};

}  // namespace cego::williams_otto
