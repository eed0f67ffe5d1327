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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cego/metrics.hpp"
#include "cego/problem.hpp"

namespace cego {

inline constexpr std::uint64_t kNormalizerSeed = 20230101;
inline constexpr std::size_t kNormalizerSamples = 10000;

// Brute-force constrained minimum over a `resolution`^dim lattice spanning the
// problem's box. Throws when no lattice point is feasible.
KnownOptimum grid_constrained_optimum(Problem& problem, std::size_t resolution);

// Sample standard deviations (n - 1 denominator) of J and every g_i over
// uniformly drawn points of the problem's lattice.
Normalizers sample_normalizers(Problem& problem, std::size_t samples = kNormalizerSamples,
                               std::uint64_t seed = kNormalizerSeed);

// Frozen reference values for one problem instance.
struct ReferenceData {
  std::string problem;
  std::optional<double> g_thr;
  std::optional<KnownOptimum> optimum;
  std::optional<Normalizers> sigmas;
  std::size_t normalizer_samples = kNormalizerSamples;
  std::uint64_t normalizer_seed = kNormalizerSeed;
  std::size_t normalizer_grid = 0;  // lattice points per dimension the samples were drawn from
};

std::string encode_reference(const ReferenceData& ref);
ReferenceData decode_reference(const std::string& text);
void write_reference(const std::filesystem::path& path, const ReferenceData& ref);
ReferenceData read_reference(const std::filesystem::path& path);

}  // namespace cego
