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
#include <random>
#include <vector>

#include "cego/grid_solver.hpp"
#include "test_util.hpp"

using namespace cego;

TEST_CASE("empty models on a 2x2 grid give the prior") {
  const Domain d = Domain::uniform({0, 0}, {1, 1}, 2);
  const std::vector<GpModel> models = {
      GpModel(Kernel::isotropic(KernelFamily::kSquaredExponential, 2, 1.0, 1.5), 0.01, 0),
      GpModel(Kernel::isotropic(KernelFamily::kMatern52, 2, 1.0, 0.5), 0.01, 1)};
  const std::vector<double> beta = {2.0, 3.0};
  const auto t = evaluate_grid(models, beta, d);
  REQUIRE(t.size() == 4);
  REQUIRE(t.outputs() == 2);
  CHECK((t.mean.array() == 0.0).all());
  CHECK((t.stddev.col(0).array() == 1.5).all());
  CHECK((t.stddev.col(1).array() == 0.5).all());
  CHECK((t.lcb.col(0).array() == -3.0).all());
  CHECK((t.ucb.col(1).array() == 1.5).all());
}

TEST_CASE("batched grid evaluation agrees with scalar posterior calls") {
  std::mt19937_64 rng(41);
  const Domain d = Domain::uniform({-2, -2}, {2, 2}, 15);
  const Kernel k = Kernel::isotropic(KernelFamily::kSquaredExponential, 2, 0.9, 1.2);
  const Eigen::MatrixXd x = testing::random_points(rng, 10, 2);
  const std::vector<GpModel> models = {testing::model_from(k, 1e-3, x, Eigen::VectorXd::Random(10), 0)};
  const std::vector<double> beta = {1.7};
  const auto t = evaluate_grid(models, beta, d);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto p = models[0].posterior(d.point(i));
    const auto r = static_cast<Eigen::Index>(i);
    worst = std::max({worst, std::abs(t.mean(r, 0) - p.mean), std::abs(t.stddev(r, 0) - p.stddev()),
                      std::abs(t.lcb(r, 0) - lcb(models[0], d.point(i), 1.7)),
                      std::abs(t.ucb(r, 0) - ucb(models[0], d.point(i), 1.7))});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("argmin and argmax tie-breaks and masks") {
  const std::vector<double> s = {3.0, 1.0, 2.0};
  CHECK(constrained_argmin(s) == 1u);
  CHECK(constrained_argmax(s) == 0u);
  const std::vector<double> flat(5, 0.25);
  CHECK(constrained_argmin(flat) == 0u);
  CHECK(constrained_argmax(flat) == 0u);
  const GridMask none(3, 0);
  CHECK_FALSE(constrained_argmin(s, none).has_value());
  const GridMask some = {1, 0, 1};
  CHECK(constrained_argmin(s, some) == 2u);
  const std::vector<double> with_nan = {NAN, 5.0, NAN};
  CHECK(constrained_argmin(with_nan) == 1u);
  const std::vector<double> ties = {4.0, 2.0, 9.0, 2.0};
  CHECK(constrained_argmin(ties) == 1u);
}
