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

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "cego/domain.hpp"

namespace cego {

enum class KernelFamily { kSquaredExponential, kMatern52 };

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

// Stationary ARD kernel k(a, b) = s^2 * f(r), r = || (a - b) / lengthscales ||.
class Kernel {
 public:
  Kernel(KernelFamily family, Eigen::VectorXd lengthscales, double output_scale);

  // Same lengthscale along every dimension.
  static Kernel isotropic(KernelFamily family, std::size_t dim, double lengthscale,
                          double output_scale);

  KernelFamily family() const { return family_; }
  const Eigen::VectorXd& lengthscales() const { return lengthscales_; }
  double output_scale() const { return output_scale_; }
  double variance() const { return output_scale_ * output_scale_; }
  std::size_t dim() const { return static_cast<std::size_t>(lengthscales_.size()); }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& a,
                    const Eigen::Ref<const Eigen::VectorXd>& b) const;

  // Covariance between every row of `a` and every row of `b`.
  Eigen::MatrixXd cross(const Eigen::Ref<const Eigen::MatrixXd>& a,
                        const Eigen::Ref<const Eigen::MatrixXd>& b) const;

 private:
  double profile(double scaled_sq_dist) const;

  KernelFamily family_;
  Eigen::VectorXd lengthscales_;
  double output_scale_;
};

// Free-function spelling of Kernel::operator(); throws on dimension mismatch.
double kernel_eval(const Kernel& k, const ParameterVector& a, const ParameterVector& b);

}  // namespace cego
