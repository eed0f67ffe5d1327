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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cego/domain.hpp"

namespace cego {

// Noiseless outputs of one oracle call.
struct Evaluation {
  double objective = 0.0;
  std::vector<double> constraints;

  // [objective, constraint_1, ..., constraint_N]
  std::vector<double> outputs() const;
};

// Reference optimum obtained by dense lattice enumeration.
struct KnownOptimum {
  double value = 0.0;
  std::vector<double> argmin;
  std::size_t grid_resolution = 0;  // points per dimension of the enumeration lattice
  std::string provenance;
};

// min J(theta) subject to g_i(theta) <= 0 over a gridded box.
class Problem {
 public:
  virtual ~Problem() = default;

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  std::size_t n_constraints() const { return n_constraints_; }
  std::size_t n_outputs() const { return n_constraints_ + 1; }

  // Per-output measurement noise standard deviation, objective first.
  const std::vector<double>& noise_std() const { return noise_std_; }
  void set_noise_std(std::vector<double> noise_std);

  const std::optional<KnownOptimum>& known_optimum() const { return known_optimum_; }
  void set_known_optimum(KnownOptimum optimum) { known_optimum_ = std::move(optimum); }

  // Pure problems are deterministic in-process functions; their values are
  // usable as ground truth for metrics.
  virtual bool is_pure() const { return true; }

  virtual Evaluation evaluate(const ParameterVector& theta) = 0;

  // True when every constraint is <= 0.
  bool feasible(const Evaluation& e) const;

 protected:
  Problem(std::string name, Domain domain, std::size_t n_constraints,
          std::vector<double> noise_std);

 private:
  std::string name_;
  Domain domain_;
  std::size_t n_constraints_;
  std::vector<double> noise_std_;
  std::optional<KnownOptimum> known_optimum_;
};

// One measurement: the noisy outputs and, for pure problems, the noiseless truth.
struct Measurement {
  std::vector<double> y;
  std::optional<std::vector<double>> truth;
};

// Adds seeded i.i.d. Gaussian noise (per-output standard deviations from the
// problem) on top of a problem's oracle. With zero noise the measurement is
// the oracle value bit for bit.
class NoisyEvaluator {
 public:
  NoisyEvaluator(Problem& problem, std::uint64_t seed);

  Measurement measure(const ParameterVector& theta);

  // Advances the noise stream past `measurements` measurements without
  // calling the oracle. Used when replaying logged steps.
  void skip(std::size_t measurements);

 private:
  std::vector<double> draw_standard_normals();

  Problem* problem_;
  std::mt19937_64 rng_;
};

}  // namespace cego
