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

#include "cego/kernel.hpp"

#include <cmath>
#include <string>

#include "cego/errors.hpp"

namespace cego {

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kSquaredExponential:
      return "se";
    case KernelFamily::kMatern52:
      return "matern52";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(std::string_view name) {
  if (name == "se" || name == "squared_exponential" || name == "rbf") {
    return KernelFamily::kSquaredExponential;
  }
  if (name == "matern52" || name == "matern") return KernelFamily::kMatern52;
  throw InvalidArgument("unknown kernel family '" + std::string(name) + "'");
}

Kernel::Kernel(KernelFamily family, Eigen::VectorXd lengthscales, double output_scale)
    : family_(family), lengthscales_(std::move(lengthscales)), output_scale_(output_scale) {
  if (lengthscales_.size() == 0) throw InvalidArgument("kernel: empty lengthscales");
  if (!(lengthscales_.array() > 0.0).all() || !lengthscales_.allFinite()) {
    throw InvalidArgument("kernel: lengthscales must be positive and finite");
  }
  if (!(output_scale_ > 0.0) || !std::isfinite(output_scale_)) {
    throw InvalidArgument("kernel: output scale must be positive and finite");
  }
}

Kernel Kernel::isotropic(KernelFamily family, std::size_t dim, double lengthscale,
                         double output_scale) {
  return Kernel(family, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), lengthscale),
                output_scale);
}

double Kernel::profile(double r2) const {
  switch (family_) {
    case KernelFamily::kSquaredExponential:
      return std::exp(-0.5 * r2);
    case KernelFamily::kMatern52: {
      const double r = std::sqrt(5.0 * r2);
      return (1.0 + r + r * r / 3.0) * std::exp(-r);
    }
  }
  return 0.0;
}

double Kernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b) const {
  double r2 = 0.0;
  for (Eigen::Index k = 0; k < lengthscales_.size(); ++k) {
    const double z = (a[k] - b[k]) / lengthscales_[k];
    r2 += z * z;
  }
  return variance() * profile(r2);
}

Eigen::MatrixXd Kernel::cross(const Eigen::Ref<const Eigen::MatrixXd>& a,
                              const Eigen::Ref<const Eigen::MatrixXd>& b) const {
  if (a.cols() != lengthscales_.size() || b.cols() != lengthscales_.size()) {
    throw InvalidArgument("kernel: point dimension does not match lengthscales");
  }
  const Eigen::Index d = lengthscales_.size();
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double r2 = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double z = (a(i, k) - b(j, k)) / lengthscales_[k];
        r2 += z * z;
      }
      out(i, j) = variance() * profile(r2);
    }
  }
  return out;
}

double kernel_eval(const Kernel& k, const ParameterVector& a, const ParameterVector& b) {
  if (static_cast<std::size_t>(a.size()) != k.dim() ||
      static_cast<std::size_t>(b.size()) != k.dim()) {
    throw InvalidArgument("kernel_eval: dimension mismatch");
  }
  return k(a, b);
}

}  // namespace cego
