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

#include "cego/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cego/errors.hpp"

namespace cego {

std::string_view to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::kConfig:
      return "config";
    case PolicyKind::kCei:
      return "cei";
    case PolicyKind::kEpbo:
      return "epbo";
    case PolicyKind::kPrimalDual:
      return "primal_dual";
    case PolicyKind::kSafeOptLite:
      return "safeopt_lite";
    case PolicyKind::kRandom:
      return "random";
  }
  return "unknown";
}

PolicyKind policy_from_string(std::string_view name) {
  for (PolicyKind p : {PolicyKind::kConfig, PolicyKind::kCei, PolicyKind::kEpbo,
                       PolicyKind::kPrimalDual, PolicyKind::kSafeOptLite, PolicyKind::kRandom}) {
    if (name == to_string(p)) return p;
  }
  throw InvalidArgument("unknown policy '" + std::string(name) + "'");
}

Decision Decision::sample(const Domain& domain, std::size_t index) {
  Decision d;
  d.kind = Kind::kSample;
  d.index = index;
  d.theta = domain.point(index);
  return d;
}

std::size_t SafeSet::count() const {
  return static_cast<std::size_t>(std::count_if(member.begin(), member.end(),
                                                [](std::uint8_t m) { return m != 0; }));
}

std::vector<double> AlgorithmState::beta_sqrt() const {
  return std::vector<double>(models.size(), beta.beta_sqrt(step + 1, domain.size()));
}

GridEvaluation AlgorithmState::evaluate() const {
  const auto betas = beta_sqrt();
  return evaluate_grid(models, betas, *lattice);
}

AlgorithmState make_state(PolicyKind policy, Domain domain, std::vector<GpModel> models,
                          BetaSchedule beta, PolicyParams params) {
  if (models.empty()) throw InvalidArgument("state: need at least the objective model");
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].dim() != domain.dim()) throw InvalidArgument("state: model/domain dimension mismatch");
    if (models[i].output_index() != i) {
      throw InvalidArgument("state: models must be ordered by output index");
    }
  }
  beta.validate();
  const std::size_t n_constraints = models.size() - 1;
  switch (policy) {
    case PolicyKind::kEpbo:
      if (!(params.rho >= 0.0)) throw InvalidArgument("epbo: rho must be non-negative");
      break;
    case PolicyKind::kPrimalDual:
      if (!(params.eta > 0.0)) throw InvalidArgument("primal-dual: eta must be positive");
      if (params.duals.empty()) params.duals.assign(n_constraints, 0.0);
      if (params.duals.size() != n_constraints) {
        throw InvalidArgument("primal-dual: one dual per constraint required");
      }
      for (double d : params.duals) {
        if (!(d >= 0.0)) throw InvalidArgument("primal-dual: duals must be non-negative");
      }
      break;
    case PolicyKind::kSafeOptLite:
      if (params.safe_seeds.empty()) throw InvalidArgument("safeopt-lite: empty safe seed set");
      if (!(params.lipschitz >= 0.0)) throw InvalidArgument("safeopt-lite: Lipschitz constant must be >= 0");
      break;
    case PolicyKind::kCei:
      if (!(params.cei_incumbent_threshold >= 0.0 && params.cei_incumbent_threshold <= 1.0)) {
        throw InvalidArgument("cei: incumbent threshold must lie in [0, 1]");
      }
      break;
    default:
      break;
  }

  auto lattice = std::make_shared<const Eigen::MatrixXd>(domain.lattice());
  SafeSet safe;
  if (policy == PolicyKind::kSafeOptLite) {
    safe.member.assign(domain.size(), 0);
    safe.parent.assign(domain.size(), SafeSet::kNotSafe);
    safe.added_at.assign(domain.size(), 0);
    for (std::size_t s : params.safe_seeds) {
      if (s >= domain.size()) throw InvalidArgument("safeopt-lite: safe seed outside the lattice");
      safe.member[s] = 1;
      safe.parent[s] = SafeSet::kSeed;
    }
  }
  return AlgorithmState{policy,          std::move(domain), std::move(lattice), std::move(models),
                        0,               beta,              std::move(params),  std::move(safe)};
}

namespace {

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

Decision config_step(const AlgorithmState& state) {
  const GridEvaluation table = state.evaluate();
  const std::size_t n = table.size();
  const std::size_t outputs = table.outputs();

  for (std::size_t i = 1; i < outputs; ++i) {
    if (table.lcb.col(static_cast<Eigen::Index>(i)).minCoeff() > 0.0) return Decision::infeasible();
  }

  GridMask mask(n, 1);
  for (std::size_t i = 1; i < outputs; ++i) {
    const auto col = table.lcb.col(static_cast<Eigen::Index>(i));
    for (std::size_t p = 0; p < n; ++p) {
      if (col[static_cast<Eigen::Index>(p)] > 0.0) mask[p] = 0;
    }
  }
  const Eigen::VectorXd objective = table.lcb.col(0);
  if (auto best = constrained_argmin(as_span(objective), mask)) {
    return Decision::sample(state.domain, *best);
  }

  // Every constraint is individually satisfiable but not jointly.
  Eigen::VectorXd violation = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < outputs; ++i) {
    violation += table.lcb.col(static_cast<Eigen::Index>(i)).cwiseMax(0.0);
  }
  return Decision::sample(state.domain, *constrained_argmin(as_span(violation)));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double expected_improvement(double mean, double stddev, double incumbent) {
  const double improvement = incumbent - mean;
  if (!(stddev > 0.0)) return positive_part(improvement);
  const double z = improvement / stddev;
  return improvement * normal_cdf(z) + stddev * normal_pdf(z);
}

namespace {

double feasibility_probability(double mean, double stddev) {
  if (!(stddev > 0.0)) return mean <= 0.0 ? 1.0 : 0.0;
  return normal_cdf(-mean / stddev);
}

}  // namespace

Decision cei_step(const AlgorithmState& state) {
  const GpModel& objective = state.models.front();
  if (objective.size() == 0) throw InvalidArgument("cei: needs at least one objective observation");

  // Incumbent among observed points that the constraint models deem feasible.
  const Eigen::MatrixXd& observed = objective.points();
  Eigen::VectorXd pof_observed = Eigen::VectorXd::Ones(observed.rows());
  for (std::size_t i = 1; i < state.models.size(); ++i) {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
    state.models[i].posterior(observed, mean, variance);
    for (Eigen::Index r = 0; r < observed.rows(); ++r) {
      pof_observed[r] *= feasibility_probability(mean[r], std::sqrt(variance[r]));
    }
  }
  std::optional<double> incumbent;
  for (Eigen::Index r = 0; r < observed.rows(); ++r) {
    if (pof_observed[r] >= state.params.cei_incumbent_threshold) {
      const double y = objective.values()[r];
      if (!incumbent || y < *incumbent) incumbent = y;
    }
  }

  const GridEvaluation table = state.evaluate();
  const auto n = static_cast<Eigen::Index>(table.size());
  Eigen::VectorXd pof = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(table.outputs()); ++i) {
    for (Eigen::Index p = 0; p < n; ++p) {
      pof[p] *= feasibility_probability(table.mean(p, i), table.stddev(p, i));
    }
  }
  if (!incumbent) return Decision::sample(state.domain, *constrained_argmax(as_span(pof)));

  Eigen::VectorXd score(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    score[p] = expected_improvement(table.mean(p, 0), table.stddev(p, 0), *incumbent) * pof[p];
  }
  return Decision::sample(state.domain, *constrained_argmax(as_span(score)));
}

Decision epbo_step(const AlgorithmState& state) {
  const GridEvaluation table = state.evaluate();
  Eigen::VectorXd score = table.lcb.col(0);
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(table.outputs()); ++i) {
    score += state.params.rho * table.lcb.col(i).cwiseMax(0.0);
  }
  return Decision::sample(state.domain, *constrained_argmin(as_span(score)));
}

Decision primal_dual_step(const AlgorithmState& state) {
  if (state.params.duals.size() != state.n_constraints()) {
    throw InvalidArgument("primal-dual: one dual per constraint required");
  }
  const GridEvaluation table = state.evaluate();
  Eigen::VectorXd score = table.lcb.col(0);
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(table.outputs()); ++i) {
    score += state.params.duals[static_cast<std::size_t>(i - 1)] * table.lcb.col(i);
  }
  return Decision::sample(state.domain, *constrained_argmin(as_span(score)));
}

std::vector<double> update_duals(std::span<const double> duals,
                                 std::span<const double> constraint_measurements, double eta) {
  if (duals.size() != constraint_measurements.size()) {
    throw InvalidArgument("update_duals: one measurement per dual required");
  }
  std::vector<double> next(duals.size());
  for (std::size_t i = 0; i < duals.size(); ++i) {
    next[i] = std::max(0.0, duals[i] + eta * constraint_measurements[i]);
  }
  return next;
}

namespace {

double one_norm(const ParameterVector& a, const ParameterVector& b) { return (a - b).cwiseAbs().sum(); }

// -max_i ucb_i(p); +inf without constraints.
double safety_margin(const GridEvaluation& table, std::size_t p) {
  if (table.outputs() <= 1) return std::numeric_limits<double>::infinity();
  return -table.ucb.row(static_cast<Eigen::Index>(p)).tail(table.outputs() - 1).maxCoeff();
}

}  // namespace

bool certifies(const GridEvaluation& table, const Domain& domain, std::size_t from, std::size_t to,
               double lipschitz) {
  const double margin = safety_margin(table, from);
  if (!(margin >= 0.0)) return false;
  if (from == to) return true;
  if (std::isinf(lipschitz)) return false;
  return lipschitz * one_norm(domain.point(from), domain.point(to)) <= margin;
}

std::size_t expand_safe_set(SafeSet& safe, const GridEvaluation& table, const Domain& domain,
                            double lipschitz, std::size_t step) {
  const std::size_t n = domain.size();
  if (safe.member.size() != n) throw InvalidArgument("safeopt-lite: safe set does not match the lattice");
  const GridMask previous = safe.member;
  std::size_t admitted = 0;

  auto admit = [&](std::size_t p, std::size_t parent) {
    if (safe.member[p] != 0) return;
    safe.member[p] = 1;
    safe.parent[p] = parent;
    safe.added_at[p] = step;
    ++admitted;
  };

  for (std::size_t s = 0; s < n; ++s) {
    if (previous[s] == 0) continue;
    const double margin = safety_margin(table, s);
    if (!(margin >= 0.0) || std::isinf(lipschitz)) continue;
    if (lipschitz == 0.0 || std::isinf(margin)) {
      for (std::size_t p = 0; p < n; ++p) admit(p, s);
      continue;
    }
    // Only lattice points inside the one-norm ball can qualify; walk its bounding box.
    const double radius = margin / lipschitz;
    const ParameterVector center = domain.point(s);
    const auto coords = domain.lattice_coords(s);
    std::vector<std::size_t> lo(domain.dim());
    std::vector<std::size_t> hi(domain.dim());
    for (std::size_t d = 0; d < domain.dim(); ++d) {
      const double h = (domain.upper()[d] - domain.lower()[d]) /
                       static_cast<double>(domain.grid_counts()[d] - 1);
      const auto reach = static_cast<std::size_t>(std::floor(radius / h + 1e-9));
      lo[d] = coords[d] >= reach ? coords[d] - reach : 0;
      hi[d] = std::min(domain.grid_counts()[d] - 1, coords[d] + reach);
    }
    std::vector<std::size_t> cur = lo;
    while (true) {
      const std::size_t p = domain.index_of(cur);
      if (previous[p] == 0 && safe.member[p] == 0 &&
          lipschitz * one_norm(center, domain.point(p)) <= margin) {
        admit(p, s);
      }
      std::size_t d = domain.dim();
      while (d-- > 0) {
        if (++cur[d] <= hi[d]) break;
        cur[d] = lo[d];
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
  }
  return admitted;
}

Decision safeopt_lite_step(AlgorithmState& state) {
  if (state.safe.member.size() != state.domain.size() || state.safe.count() == 0) {
    throw InvalidArgument("safeopt-lite: empty safe seed set");
  }
  const GridEvaluation table = state.evaluate();
  expand_safe_set(state.safe, table, state.domain, state.params.lipschitz, state.step + 1);

  std::optional<std::size_t> best;
  for (std::size_t p = 0; p < table.size(); ++p) {
    if (state.safe.member[p] == 0) continue;
    const auto row = static_cast<Eigen::Index>(p);
    if (!best) {
      best = p;
      continue;
    }
    const auto b = static_cast<Eigen::Index>(*best);
    const double lp = table.lcb(row, 0);
    const double lb = table.lcb(b, 0);
    if (lp < lb || (lp == lb && table.stddev(row, 0) > table.stddev(b, 0))) best = p;
  }
  return Decision::sample(state.domain, *best);
}

Decision random_step(const AlgorithmState& state, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(state.step), 0x52414e44u};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick(0, state.domain.size() - 1);
  return Decision::sample(state.domain, pick(rng));
}

Decision propose(AlgorithmState& state) {
  switch (state.policy) {
    case PolicyKind::kConfig:
      return config_step(state);
    case PolicyKind::kCei:
      return cei_step(state);
    case PolicyKind::kEpbo:
      return epbo_step(state);
    case PolicyKind::kPrimalDual:
      return primal_dual_step(state);
    case PolicyKind::kSafeOptLite:
      return safeopt_lite_step(state);
    case PolicyKind::kRandom:
      return random_step(state, state.params.seed);
  }
  throw InvalidArgument("propose: unknown policy");
}

void observe(AlgorithmState& state, const ParameterVector& theta, std::span<const double> y) {
  if (y.size() != state.models.size()) {
    throw InvalidArgument("observe: expected " + std::to_string(state.models.size()) +
                          " measurements, got " + std::to_string(y.size()));
  }
  if (!state.domain.contains(theta)) throw InvalidArgument("observe: point outside the domain");

  // Build every updated model first so a failure leaves the state untouched.
  std::vector<GpModel> next;
  next.reserve(state.models.size());
  for (std::size_t i = 0; i < state.models.size(); ++i) {
    next.push_back(state.models[i].with_observation(Observation{theta, y[i], i}));
  }
  state.models = std::move(next);
  if (state.policy == PolicyKind::kPrimalDual) {
    state.params.duals = update_duals(state.params.duals, y.subspan(1), state.params.eta);
  }
  ++state.step;
}

}  // namespace cego
