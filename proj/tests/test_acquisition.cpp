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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "cego/acquisition.hpp"
#include "cego/artificial.hpp"
#include "cego/errors.hpp"
#include "test_util.hpp"

using namespace cego;

namespace {

BetaSchedule constant_beta(double v) {
  BetaSchedule b;
  b.value = v;
  return b;
}

std::vector<GpModel> empty_models(std::size_t outputs, std::size_t dim, double ls = 1.0) {
  std::vector<GpModel> m;
  for (std::size_t i = 0; i < outputs; ++i) {
    m.emplace_back(Kernel::isotropic(KernelFamily::kSquaredExponential, dim, ls, 1.0), 1e-4, i);
  }
  return m;
}

struct RandomInstance {
  Domain domain;
  std::vector<GpModel> models;
  double beta;
};

// Random lattice, kernel and observations; constraint data shifted so that
// feasible, infeasible and mixed instances all occur.
RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_side, std::size_t max_obs) {
  std::uniform_int_distribution<std::size_t> side(2, max_side), nobs(0, max_obs), ncons(1, 2);
  std::uniform_real_distribution<double> ls(0.2, 1.5), shift(-1.5, 1.5), beta(0.0, 3.0);
  Domain d = Domain::uniform({0.0, 0.0}, {2.0, 2.0}, side(rng));
  const std::size_t outputs = ncons(rng) + 1;
  const std::size_t n = nobs(rng);
  const Eigen::MatrixXd x = testing::random_points(rng, n, 2, 0.0, 2.0);
  std::vector<GpModel> models;
  std::normal_distribution<double> z;
  for (std::size_t i = 0; i < outputs; ++i) {
    const Kernel k = Kernel::isotropic(KernelFamily::kSquaredExponential, 2, ls(rng), 1.0);
    GpModel m(k, 1e-3, i);
    const double offset = i == 0 ? 0.0 : shift(rng);
    for (std::size_t r = 0; r < n; ++r) {
      m.add_observation({x.row(static_cast<Eigen::Index>(r)).transpose(), z(rng) + offset, i});
    }
    models.push_back(std::move(m));
  }
  return {std::move(d), std::move(models), beta(rng)};
}

// Direct two-loop evaluation of the CONFIG rule with scalar posterior calls.
Decision reference_config(const RandomInstance& inst) {
  const std::size_t n = inst.domain.size();
  const std::size_t outputs = inst.models.size();
  for (std::size_t i = 1; i < outputs; ++i) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n; ++p) lowest = std::min(lowest, lcb(inst.models[i], inst.domain.point(p), inst.beta));
    if (lowest > 0.0) return Decision::infeasible();
  }
  std::size_t best = n;
  double best_value = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    bool ok = true;
    for (std::size_t i = 1; i < outputs; ++i) ok = ok && lcb(inst.models[i], inst.domain.point(p), inst.beta) <= 0.0;
    if (!ok) continue;
    const double v = lcb(inst.models[0], inst.domain.point(p), inst.beta);
    if (best == n || v < best_value) {
      best = p;
      best_value = v;
    }
  }
  if (best != n) return Decision::sample(inst.domain, best);
  for (std::size_t p = 0; p < n; ++p) {
    double v = 0.0;
    for (std::size_t i = 1; i < outputs; ++i) v += std::max(0.0, lcb(inst.models[i], inst.domain.point(p), inst.beta));
    if (best == n || v < best_value) {
      best = p;
      best_value = v;
    }
  }
  return Decision::sample(inst.domain, best);
}

AlgorithmState state_for(PolicyKind kind, const RandomInstance& inst, PolicyParams params = {}) {
  return make_state(kind, inst.domain, inst.models, constant_beta(inst.beta), std::move(params));
}

}  // namespace

TEST_CASE("config with no data returns the first grid point") {
  const Domain d = Domain::uniform({-1, -1}, {1, 1}, 7);
  const auto s = make_state(PolicyKind::kConfig, d, empty_models(3, 2));
  const Decision dec = config_step(s);
  REQUIRE_FALSE(dec.is_infeasible());
  CHECK(dec.index == 0);
  CHECK(dec.theta == d.point(0));
}

TEST_CASE("config declares infeasibility when a constraint lcb is positive everywhere") {
  const Domain d = Domain::uniform({0.0}, {1.0}, 3);
  auto models = empty_models(2, 1);
  for (int rep = 0; rep < 10; ++rep) {
    for (std::size_t p = 0; p < d.size(); ++p) models[1].add_observation({d.point(p), 10.0, 1});
  }
  const auto s = make_state(PolicyKind::kConfig, d, models, constant_beta(0.1));
  CHECK(config_step(s).is_infeasible());
}

TEST_CASE("config agrees with a two-loop reference") {
  std::mt19937_64 rng(101);
  int infeasible = 0, fallback = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 20, 20);
    const auto s = state_for(PolicyKind::kConfig, inst);
    const Decision got = config_step(s);
    const Decision want = reference_config(inst);
    REQUIRE(got.is_infeasible() == want.is_infeasible());
    if (got.is_infeasible()) {
      ++infeasible;
      continue;
    }
    CHECK(got.index == want.index);
    // never leaves the lcb-feasible set when it is non-empty
    const auto table = s.evaluate();
    bool any_feasible = false;
    for (std::size_t p = 0; p < table.size(); ++p) {
      any_feasible = any_feasible ||
                     (table.lcb.row(static_cast<Eigen::Index>(p)).tail(table.outputs() - 1).array() <= 0.0).all();
    }
    if (any_feasible) {
      CHECK((table.lcb.row(static_cast<Eigen::Index>(got.index)).tail(table.outputs() - 1).array() <= 0.0).all());
    } else {
      ++fallback;
    }
  }
  CHECK(infeasible > 0);
}

TEST_CASE("epbo limits") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(rng, 10, 15);
    PolicyParams off;
    off.rho = 0.0;
    const auto s0 = state_for(PolicyKind::kEpbo, inst, off);
    const auto table = s0.evaluate();
    const Eigen::VectorXd obj = table.lcb.col(0);
    CHECK(epbo_step(s0).index == *constrained_argmin(as_span(obj)));
  }
  const Domain d = Domain::uniform({0, 0}, {1, 1}, 5);
  PolicyParams p;
  p.rho = 3.0;
  CHECK(epbo_step(make_state(PolicyKind::kEpbo, d, empty_models(2, 2), {}, p)).index == 0);
  p.rho = -1.0;
  CHECK_THROWS_AS(make_state(PolicyKind::kEpbo, d, empty_models(2, 2), {}, p), InvalidArgument);
}

TEST_CASE("epbo with a huge penalty matches config when its argmin is lcb-feasible") {
  std::mt19937_64 rng(107);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto inst = random_instance(rng, 10, 15);
    PolicyParams params;
    params.rho = 1e6;
    const auto se = state_for(PolicyKind::kEpbo, inst, params);
    const auto table = se.evaluate();
    const Decision e = epbo_step(se);
    const bool e_feasible = (table.lcb.row(static_cast<Eigen::Index>(e.index)).tail(table.outputs() - 1).array() <= 0.0).all();
    if (!e_feasible) continue;
    const Decision c = config_step(state_for(PolicyKind::kConfig, inst));
    REQUIRE_FALSE(c.is_infeasible());
    CHECK(c.index == e.index);
    ++compared;
  }
  CHECK(compared >= 50);
}

TEST_CASE("primal-dual step and dual updates") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng, 10, 10);
    const auto s = state_for(PolicyKind::kPrimalDual, inst);
    CHECK(s.params.duals == std::vector<double>(inst.models.size() - 1, 0.0));
    const Eigen::VectorXd obj = s.evaluate().lcb.col(0);
    CHECK(primal_dual_step(s).index == *constrained_argmin(as_span(obj)));
  }
  CHECK(update_duals(std::vector<double>{0.5}, std::vector<double>{-1.0}, 1.0) == std::vector<double>{0.0});
  CHECK(update_duals(std::vector<double>{0.5}, std::vector<double>{0.2}, 1.0)[0] == doctest::Approx(0.7));
  CHECK_THROWS_AS(update_duals(std::vector<double>{0.5}, std::vector<double>{0.2, 0.1}, 1.0), InvalidArgument);

  const Domain d = Domain::uniform({0.0}, {1.0}, 4);
  PolicyParams p;
  p.eta = 2.0;
  auto s = make_state(PolicyKind::kPrimalDual, d, empty_models(3, 1), {}, p);
  const std::vector<double> y = {1.0, 0.25, -3.0};
  observe(s, d.point(1), y);
  CHECK(s.params.duals[0] == doctest::Approx(0.5));
  CHECK(s.params.duals[1] == 0.0);
  CHECK(s.step == 1);
  // weighted objective uses the duals
  const auto table = s.evaluate();
  Eigen::VectorXd score = table.lcb.col(0) + 0.5 * table.lcb.col(1);
  CHECK(primal_dual_step(s).index == *constrained_argmin(as_span(score)));
}

TEST_CASE("expected improvement closed form against Monte Carlo") {
  std::mt19937_64 rng(113);
  std::normal_distribution<double> z;
  const Domain d = Domain::uniform({0.0}, {4.0}, 5);
  GpModel m(Kernel::isotropic(KernelFamily::kSquaredExponential, 1, 1.0, 1.0), 1e-4, 0);
  m.add_observation({d.point(1), 0.3, 0});
  const auto s = make_state(PolicyKind::kCei, d, {m});
  const double incumbent = 0.3;
  const auto table = s.evaluate();
  std::vector<double> ei(d.size());
  for (std::size_t p = 0; p < d.size(); ++p) {
    const auto r = static_cast<Eigen::Index>(p);
    const double mu = table.mean(r, 0), sd = table.stddev(r, 0);
    double acc = 0.0;
    const int draws = 4000000;
    for (int k = 0; k < draws; ++k) acc += std::max(0.0, incumbent - (mu + sd * z(rng)));
    ei[p] = expected_improvement(mu, sd, incumbent);
    CHECK(std::abs(ei[p] - acc / draws) < 1e-3);
  }
  CHECK(cei_step(s).index == *constrained_argmax(std::span<const double>(ei)));
  CHECK(expected_improvement(1.0, 0.0, 0.5) == 0.0);
  CHECK(expected_improvement(0.0, 0.0, 0.5) == 0.5);
}

TEST_CASE("cei prefers the likely-feasible point when EI ties") {
  const Domain d = Domain::uniform({-10.0}, {10.0}, 3);  // -10, 0, 10
  const Kernel k = Kernel::isotropic(KernelFamily::kSquaredExponential, 1, 1.0, 1.0);
  GpModel obj(k, 1e-6, 0);
  obj.add_observation({d.point(1), 0.0, 0});
  GpModel con(k, 1e-6, 1);
  con.add_observation({d.point(0), 3.0, 1});
  con.add_observation({d.point(2), -3.0, 1});
  const auto s = make_state(PolicyKind::kCei, d, {obj, con});
  const auto table = s.evaluate();
  CHECK(table.mean(0, 0) == doctest::Approx(table.mean(2, 0)));
  CHECK(table.stddev(0, 0) == doctest::Approx(table.stddev(2, 0)));
  CHECK(cei_step(s).index == 2);
}

TEST_CASE("cei with zero improvement everywhere returns the first point") {
  const Domain d = Domain::uniform({0.0}, {2.0}, 3);
  GpModel obj(Kernel::isotropic(KernelFamily::kSquaredExponential, 1, 0.5, 1.0), 1e-12, 0);
  obj.add_observation({d.point(0), -1.0, 0});
  obj.add_observation({d.point(1), 2.0, 0});
  obj.add_observation({d.point(2), 3.0, 0});
  const auto s = make_state(PolicyKind::kCei, d, {obj});
  CHECK(cei_step(s).index == 0);
  CHECK_THROWS_AS(cei_step(make_state(PolicyKind::kCei, d, empty_models(1, 1))), InvalidArgument);
}

TEST_CASE("random step is deterministic and uniform") {
  const Domain d = Domain::uniform({0, 0}, {1, 1}, 2);
  auto s = make_state(PolicyKind::kRandom, d, empty_models(1, 2));
  CHECK(random_step(s, 5).index == random_step(s, 5).index);
  std::vector<int> counts(4, 0);
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    s.step = static_cast<std::size_t>(k);
    ++counts[random_step(s, 77).index];
  }
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  for (int c : counts) CHECK(std::abs(c - draws * 0.25) <= 3.0 * sigma);
}

TEST_CASE("safeopt-lite with infinite lipschitz constant never grows") {
  ArtificialProblem prob(-0.6, 30, 0.0);
  const Domain& d = prob.domain();
  PolicyParams p;
  p.lipschitz = std::numeric_limits<double>::infinity();
  Eigen::Vector2d seed(-1.7, -0.5);
  p.safe_seeds = {d.nearest_index(seed)};
  auto s = make_state(PolicyKind::kSafeOptLite, d, empty_models(2, 2), constant_beta(2.0), p);
  for (int step = 0; step < 10; ++step) {
    const Decision dec = safeopt_lite_step(s);
    CHECK(dec.index == p.safe_seeds[0]);
    const auto e = prob.evaluate(dec.theta);
    observe(s, dec.theta, e.outputs());
    CHECK(s.safe.count() == 1);
  }
}

TEST_CASE("safeopt-lite with zero lipschitz constant") {
  const Domain d = Domain::uniform({0.0}, {1.0}, 6);
  PolicyParams p;
  p.lipschitz = 0.0;
  p.safe_seeds = {2};
  // prior ucb is positive: no certificate, nothing admitted
  auto s = make_state(PolicyKind::kSafeOptLite, d, empty_models(2, 1), constant_beta(2.0), p);
  CHECK(safeopt_lite_step(s).index == 2);
  CHECK(s.safe.count() == 1);
  // constraint known to be very negative at the seed: the distance term vanishes and every point is certified
  for (int rep = 0; rep < 5; ++rep) observe(s, d.point(2), std::vector<double>{0.0, -5.0});
  safeopt_lite_step(s);
  CHECK(s.safe.count() == d.size());
}

TEST_CASE("safeopt-lite samples carry a replayable safety certificate") {
  ArtificialProblem prob(-0.6, 60, 0.0);
  const Domain& d = prob.domain();
  PolicyParams p;
  p.lipschitz = 1.0;
  p.safe_seeds = {d.nearest_index(Eigen::Vector2d(-2.1, -1.04))};
  REQUIRE(prob.feasible(prob.evaluate(d.point(p.safe_seeds[0]))));
  std::vector<GpModel> models;
  for (std::size_t i = 0; i < 2; ++i) {
    models.emplace_back(Kernel::isotropic(KernelFamily::kSquaredExponential, 2, 1.0, 0.7), 1e-4, i);
  }
  auto s = make_state(PolicyKind::kSafeOptLite, d, models, constant_beta(2.0), p);
  std::size_t grown = 0;
  for (int step = 0; step < 25; ++step) {
    const SafeSet before = s.safe;
    const auto table = s.evaluate();
    const Decision dec = safeopt_lite_step(s);
    REQUIRE(s.safe.member[dec.index] != 0);
    for (std::size_t q = 0; q < d.size(); ++q) {
      if (before.member[q] != 0 || s.safe.member[q] == 0) continue;
      ++grown;
      const std::size_t parent = s.safe.parent[q];
      REQUIRE(parent < d.size());
      CHECK(before.member[parent] != 0);
      CHECK(s.safe.added_at[q] == s.step + 1);
      CHECK(certifies(table, d, parent, q, 1.0));
      const double dist = (d.point(parent) - d.point(q)).lpNorm<1>();
      CHECK(table.ucb(static_cast<Eigen::Index>(parent), 1) + dist <= 0.0);
    }
    // chain back to a seed
    std::size_t cur = dec.index;
    for (int hops = 0; s.safe.parent[cur] != SafeSet::kSeed; ++hops) {
      REQUIRE(hops < static_cast<int>(d.size()));
      cur = s.safe.parent[cur];
    }
    CHECK(cur == p.safe_seeds[0]);
    const auto e = prob.evaluate(dec.theta);
    CHECK(prob.feasible(e));
    observe(s, dec.theta, e.outputs());
  }
  CHECK(grown > 0);
  PolicyParams none;
  CHECK_THROWS_AS(make_state(PolicyKind::kSafeOptLite, d, empty_models(2, 2), {}, none), InvalidArgument);
}

TEST_CASE("policies are deterministic in state and seed") {
  std::mt19937_64 rng(127);
  for (auto kind : {PolicyKind::kConfig, PolicyKind::kEpbo, PolicyKind::kPrimalDual, PolicyKind::kRandom}) {
    const auto inst = random_instance(rng, 12, 10);
    PolicyParams p;
    p.seed = 99;
    auto a = state_for(kind, inst, p);
    auto b = state_for(kind, inst, p);
    const Decision da = propose(a), db = propose(b);
    CHECK(da.is_infeasible() == db.is_infeasible());
    CHECK(da.index == db.index);
  }
}

TEST_CASE("observe feeds every model") {
  const Domain d = Domain::uniform({0.0}, {1.0}, 4);
  auto s = make_state(PolicyKind::kConfig, d, empty_models(3, 1));
  observe(s, d.point(3), std::vector<double>{1.0, 2.0, 3.0});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.models[i].size() == 1);
    CHECK(s.models[i].values()[0] == static_cast<double>(i + 1));
  }
  CHECK(s.step == 1);
  CHECK_THROWS_AS(observe(s, d.point(3), std::vector<double>{1.0}), InvalidArgument);
  CHECK(s.step == 1);
  CHECK(s.models[0].size() == 1);
}

TEST_CASE("beta schedules") {
  BetaSchedule b;
  CHECK(b.beta_sqrt(1, 100) == 2.0);
  CHECK(b.beta_sqrt(50, 100) == 2.0);
  b.mode = BetaSchedule::Mode::kLogGrowth;
  b.value = 1.0;
  b.delta = 0.1;
  CHECK(b.beta_sqrt(1, 100) == doctest::Approx(std::sqrt(2.0 * std::log(100.0 * M_PI * M_PI / 0.6))));
  double prev = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    const double v = b.beta_sqrt(t, 10000);
    CHECK(v >= prev);
    prev = v;
  }
  b.delta = 1.5;
  CHECK_THROWS_AS(b.validate(), InvalidArgument);
  for (auto kind : {PolicyKind::kConfig, PolicyKind::kCei, PolicyKind::kEpbo, PolicyKind::kPrimalDual,
                    PolicyKind::kSafeOptLite, PolicyKind::kRandom}) {
    CHECK(policy_from_string(to_string(kind)) == kind);
  }
}
