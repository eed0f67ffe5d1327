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
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cego/beta_schedule.hpp"
#include "cego/domain.hpp"
#include "cego/gp_model.hpp"
#include "cego/grid_solver.hpp"

namespace cego {

enum class PolicyKind { kConfig, kCei, kEpbo, kPrimalDual, kSafeOptLite, kRandom };

std::string_view to_string(PolicyKind policy);
PolicyKind policy_from_string(std::string_view name);

struct Decision {
  enum class Kind { kSample, kInfeasible };

  Kind kind = Kind::kInfeasible;
  std::size_t index = 0;  // lattice index, meaningful for kSample
  ParameterVector theta;

  static Decision sample(const Domain& domain, std::size_t index);
  static Decision infeasible() { return {}; }
  bool is_infeasible() const { return kind == Kind::kInfeasible; }
};

struct PolicyParams {
  double rho = 1.0;           // EPBO penalty coefficient
  double eta = 1.0;           // primal-dual dual step size
  std::vector<double> duals;  // primal-dual multipliers, one per constraint, >= 0
  double lipschitz = 1.0;     // SafeOptLite, one-norm Lipschitz constant (may be +inf)
  std::vector<std::size_t> safe_seeds;  // SafeOptLite, lattice indices known feasible
  std::uint64_t seed = 0;               // Random
  double cei_incumbent_threshold = 0.5;
};

// SafeOptLite bookkeeping. `parent[i]` is the safe point that certified i
// (kSeed for seeds, kNotSafe outside the set); `added_at[i]` is the step whose
// expansion admitted i.
struct SafeSet {
  static constexpr std::size_t kNotSafe = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kSeed = kNotSafe - 1;

  GridMask member;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> added_at;

  std::size_t count() const;
};

// Mutable state of one optimization run. models[0] is the objective,
// models[i] constraint i. `step` counts absorbed observations.
struct AlgorithmState {
  PolicyKind policy = PolicyKind::kConfig;
  Domain domain;
  std::shared_ptr<const Eigen::MatrixXd> lattice;
  std::vector<GpModel> models;
  std::size_t step = 0;
  BetaSchedule beta;
  PolicyParams params;
  SafeSet safe;

  std::size_t n_constraints() const { return models.size() - 1; }

  // beta^{1/2} for every output at the step about to be taken (step + 1).
  std::vector<double> beta_sqrt() const;

  GridEvaluation evaluate() const;
};

// Validates the configuration, caches the lattice and initializes
// policy-specific state (zero duals, seeded safe set).
AlgorithmState make_state(PolicyKind policy, Domain domain, std::vector<GpModel> models,
                          BetaSchedule beta = {}, PolicyParams params = {});

// Lower-confidence-bound constrained step. Infeasible iff some constraint's
// lcb is positive on every lattice point. Otherwise the lcb_0 minimizer among
// points whose constraint lcbs are all <= 0; should that joint set be empty,
// the minimizer of the summed positive lcb parts. Ties: smallest index.
Decision config_step(const AlgorithmState& state);

// argmax of EI * prod_i P[g_i <= 0]. The incumbent is the best objective
// observation whose posterior feasibility probability reaches the threshold;
// without one the step maximizes the feasibility probability alone.
Decision cei_step(const AlgorithmState& state);

// argmin of lcb_0 + rho * sum_i max(lcb_i, 0).
Decision epbo_step(const AlgorithmState& state);

// argmin of lcb_0 + sum_i dual_i * lcb_i.
Decision primal_dual_step(const AlgorithmState& state);

// max(0, dual_i + eta * y_i) for each constraint measurement y_i.
std::vector<double> update_duals(std::span<const double> duals,
                                 std::span<const double> constraint_measurements, double eta);

// Grows the safe set by one expansion round, then picks the safe point with
// the smallest lcb_0 (ties: larger objective stddev, then smaller index).
Decision safeopt_lite_step(AlgorithmState& state);

// One expansion round on its own. Returns the number of points admitted.
std::size_t expand_safe_set(SafeSet& safe, const GridEvaluation& table, const Domain& domain,
                            double lipschitz, std::size_t step);

// True when safe point `from` certifies `to`: ucb_i(from) + L * |from - to|_1 <= 0 for all i.
bool certifies(const GridEvaluation& table, const Domain& domain, std::size_t from, std::size_t to,
               double lipschitz);

// Uniform lattice point; deterministic in (seed, state.step).
Decision random_step(const AlgorithmState& state, std::uint64_t seed);

// Dispatches on state.policy.
Decision propose(AlgorithmState& state);

// Adds (theta, y_i) to every model i, advances the step counter and applies
// policy-specific updates (dual ascent for PrimalDual). `y` holds N + 1 values.
void observe(AlgorithmState& state, const ParameterVector& theta, std::span<const double> y);

// Standard normal helpers used by the EI family.
double normal_cdf(double x);
double normal_pdf(double x);
double expected_improvement(double mean, double stddev, double incumbent);

}  // namespace cego
