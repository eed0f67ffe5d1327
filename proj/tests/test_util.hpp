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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cego/gp_model.hpp"
#include "cego/kernel.hpp"

namespace cego::testing {

inline std::filesystem::path data_dir() { return CEGO_TEST_DATA_DIR; }

// Fresh scratch directory under the system temp dir, emptied on creation.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cego_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Eigen::MatrixXd random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim, double lo = -2.0,
                                     double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = u(rng);
  }
  return x;
}

// Posterior via an explicit dense inverse of (K + noise I).
struct DenseOracle {
  Eigen::MatrixXd inverse;
  Eigen::VectorXd weights;

  DenseOracle(const Kernel& k, double noise, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = k(x.row(i).transpose(), x.row(j).transpose());
    }
    gram.diagonal().array() += noise;
    inverse = gram.fullPivLu().inverse();
    weights = inverse * y;
  }

  void eval(const Kernel& k, const Eigen::MatrixXd& x, const Eigen::VectorXd& q, double& mean,
            double& var) const {
    Eigen::VectorXd kq(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) kq[i] = k(x.row(i).transpose(), q);
    mean = kq.dot(weights);
    var = k(q, q) - kq.dot(inverse * kq);
  }
};

inline GpModel model_from(const Kernel& k, double noise, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          std::size_t output = 0) {
  GpModel m(k, noise, output);
  for (Eigen::Index i = 0; i < x.rows(); ++i) m.add_observation({x.row(i).transpose(), y[i], output});
  return m;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace cego::testing
