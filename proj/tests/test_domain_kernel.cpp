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

#include "cego/domain.hpp"
#include "cego/errors.hpp"
#include "cego/kernel.hpp"
#include "test_util.hpp"

using namespace cego;

TEST_CASE("domain rejects malformed boxes") {
  CHECK_THROWS_AS(Domain({0.0}, {0.0}, {3}), InvalidArgument);
  CHECK_THROWS_AS(Domain({1.0}, {0.0}, {3}), InvalidArgument);
  CHECK_THROWS_AS(Domain({0.0}, {1.0}, {1}), InvalidArgument);
  CHECK_THROWS_AS(Domain({0.0, 0.0}, {1.0}, {3, 3}), InvalidArgument);
  CHECK_THROWS_AS(Domain({0.0}, {INFINITY}, {3}), InvalidArgument);
}

TEST_CASE("lattice is row-major with corners at both ends") {
  const Domain d({-1.0, 0.0}, {1.0, 10.0}, {3, 4});
  REQUIRE(d.size() == 12);
  CHECK(d.point(0)[0] == -1.0);
  CHECK(d.point(0)[1] == 0.0);
  CHECK(d.point(11)[0] == 1.0);
  CHECK(d.point(11)[1] == 10.0);
  // last dimension varies fastest
  CHECK(d.point(1)[0] == -1.0);
  CHECK(d.point(1)[1] == doctest::Approx(10.0 / 3.0));
  CHECK(d.point(4)[0] == 0.0);

  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto c = d.lattice_coords(i);
    CHECK(d.index_of(c) == i);
    CHECK(d.nearest_index(d.point(i)) == i);
    CHECK(d.on_grid(d.point(i)));
  }
  const Eigen::MatrixXd lat = d.lattice();
  REQUIRE(lat.rows() == 12);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(lat.row(static_cast<Eigen::Index>(i)).transpose() == d.point(i));
}

TEST_CASE("nearest_index clamps and rounds") {
  const Domain d = Domain::uniform({0.0}, {1.0}, 11);
  Eigen::VectorXd q(1);
  q << 0.34;
  CHECK(d.nearest_index(q) == 3);
  q << -5.0;
  CHECK(d.nearest_index(q) == 0);
  q << 5.0;
  CHECK(d.nearest_index(q) == 10);
  q << 0.35;
  CHECK_FALSE(d.on_grid(q));
  CHECK_FALSE(d.contains(Eigen::VectorXd::Constant(1, 1.5)));
}

TEST_CASE("squared-exponential kernel closed form") {
  const Kernel k = Kernel::isotropic(KernelFamily::kSquaredExponential, 1, 1.0, 1.0);
  Eigen::VectorXd a(1), b(1);
  a << 0.0;
  b << 1.0;
  CHECK(kernel_eval(k, a, b) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(kernel_eval(k, a, b) == doctest::Approx(0.606531).epsilon(1e-6));

  const Kernel k2 = Kernel::isotropic(KernelFamily::kSquaredExponential, 1, 2.0, 1.0);
  b << 2.0;
  CHECK(kernel_eval(k2, a, b) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));

  const Kernel k3 = Kernel::isotropic(KernelFamily::kSquaredExponential, 2, 1.0, 1.0);
  CHECK(kernel_eval(k3, Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 0)) == 1.0);
}

TEST_CASE("matern 5/2 closed form") {
  const Kernel k = Kernel::isotropic(KernelFamily::kMatern52, 1, 1.5, 2.0);
  Eigen::VectorXd a(1), b(1);
  a << 0.3;
  b << 1.8;
  const double r = 1.0;  // |0.3 - 1.8| / 1.5
  const double s5 = std::sqrt(5.0) * r;
  CHECK(k(a, b) == doctest::Approx(4.0 * (1.0 + s5 + 5.0 * r * r / 3.0) * std::exp(-s5)).epsilon(1e-13));
  CHECK(k(a, a) == 4.0);
}

TEST_CASE("kernel symmetry, diagonal and dimension checks") {
  std::mt19937_64 rng(7);
  for (auto family : {KernelFamily::kSquaredExponential, KernelFamily::kMatern52}) {
    Eigen::VectorXd ls(3);
    ls << 0.5, 1.0, 2.5;
    const Kernel k(family, ls, 1.7);
    const Eigen::MatrixXd x = testing::random_points(rng, 20, 3);
    const Eigen::MatrixXd c = k.cross(x, x);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      CHECK(c(i, i) == doctest::Approx(1.7 * 1.7).epsilon(1e-15));
      for (Eigen::Index j = 0; j < x.rows(); ++j) {
        CHECK(c(i, j) == c(j, i));
        CHECK(c(i, j) == k(x.row(i).transpose(), x.row(j).transpose()));
      }
    }
    CHECK_THROWS_AS(kernel_eval(k, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)), InvalidArgument);
  }
  CHECK_THROWS_AS(Kernel::isotropic(KernelFamily::kSquaredExponential, 2, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(Kernel::isotropic(KernelFamily::kSquaredExponential, 2, 1.0, -1.0), InvalidArgument);
}

TEST_CASE("gram matrix plus noise admits a Cholesky factor") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd x = testing::random_points(rng, 30, 2);
    for (auto family : {KernelFamily::kSquaredExponential, KernelFamily::kMatern52}) {
      const Kernel k = Kernel::isotropic(family, 2, 0.8, 1.0);
      Eigen::MatrixXd g = k.cross(x, x);
      g.diagonal().array() += 1e-6;
      CHECK_NOTHROW(cholesky_lower(g));
    }
  }
}

TEST_CASE("kernel family names round-trip") {
  for (auto f : {KernelFamily::kSquaredExponential, KernelFamily::kMatern52}) {
    CHECK(kernel_family_from_string(to_string(f)) == f);
  }
  CHECK_THROWS_AS(kernel_family_from_string("rbf2"), InvalidArgument);
}
