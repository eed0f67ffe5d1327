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

#include "cego/problem.hpp"

#include <cmath>

#include "cego/errors.hpp"

namespace cego {

std::vector<double> Evaluation::outputs() const {
  std::vector<double> out;
  out.reserve(constraints.size() + 1);
  out.push_back(objective);
  out.insert(out.end(), constraints.begin(), constraints.end());
  return out;
}

Problem::Problem(std::string name, Domain domain, std::size_t n_constraints,
                 std::vector<double> noise_std)
    : name_(std::move(name)), domain_(std::move(domain)), n_constraints_(n_constraints) {
  set_noise_std(std::move(noise_std));
}

void Problem::set_noise_std(std::vector<double> noise_std) {
  if (noise_std.size() == 1 && n_constraints_ > 0) noise_std.assign(n_constraints_ + 1, noise_std[0]);
  if (noise_std.size() != n_constraints_ + 1) {
    throw InvalidArgument("problem '" + name_ + "': need one noise level per output");
  }
  for (double s : noise_std) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("problem: noise std must be >= 0");
  }
  noise_std_ = std::move(noise_std);
}

bool Problem::feasible(const Evaluation& e) const {
  for (double g : e.constraints) {
    if (!(g <= 0.0)) return false;
  }
  return true;
}

NoisyEvaluator::NoisyEvaluator(Problem& problem, std::uint64_t seed) : problem_(&problem) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x4e4f4953u};
  rng_.seed(seq);
}

Measurement NoisyEvaluator::measure(const ParameterVector& theta) {
  const Evaluation e = problem_->evaluate(theta);
  if (e.constraints.size() != problem_->n_constraints()) {
    throw ProtocolError("problem '" + problem_->name() + "' returned " +
                        std::to_string(e.constraints.size()) + " constraints, expected " +
                        std::to_string(problem_->n_constraints()));
  }
  Measurement m;
  m.y = e.outputs();
  const auto& sigma = problem_->noise_std();
  const std::vector<double> z = draw_standard_normals();
  for (std::size_t i = 0; i < m.y.size(); ++i) {
    if (sigma[i] > 0.0) m.y[i] += sigma[i] * z[i];
  }
  if (problem_->is_pure()) m.truth = e.outputs();
  return m;
}

std::vector<double> NoisyEvaluator::draw_standard_normals() {
  // A fresh distribution per measurement keeps engine consumption identical
  // between measure() and skip().
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(problem_->n_outputs());
  for (double& v : z) v = normal(rng_);
  return z;
}

void NoisyEvaluator::skip(std::size_t measurements) {
  for (std::size_t k = 0; k < measurements; ++k) (void)draw_standard_normals();
}

}  // namespace cego
