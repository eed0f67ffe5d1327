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

#include "cego/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cego/errors.hpp"

namespace cego {

Domain::Domain(std::vector<double> lower, std::vector<double> upper,
               std::vector<std::size_t> grid_counts)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      counts_(std::move(grid_counts)) {
  if (lower_.empty()) throw InvalidArgument("domain: zero dimensions");
  if (lower_.size() != upper_.size() || lower_.size() != counts_.size()) {
    throw InvalidArgument("domain: lower/upper/grid_counts length mismatch");
  }
  size_ = 1;
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!std::isfinite(lower_[d]) || !std::isfinite(upper_[d]) ||
        !(lower_[d] < upper_[d])) {
      throw InvalidArgument("domain: need finite lower < upper in dimension " +
                            std::to_string(d));
    }
    if (counts_[d] < 2) {
      throw InvalidArgument("domain: grid count must be >= 2 in dimension " +
                            std::to_string(d));
    }
    size_ *= counts_[d];
  }
}

Domain Domain::uniform(std::vector<double> lower, std::vector<double> upper,
                       std::size_t grid_count) {
  std::vector<std::size_t> counts(lower.size(), grid_count);
  return Domain(std::move(lower), std::move(upper), std::move(counts));
}

std::vector<std::size_t> Domain::lattice_coords(std::size_t index) const {
  if (index >= size_) throw InvalidArgument("domain: grid index out of range");
  std::vector<std::size_t> coords(dim());
  for (std::size_t d = dim(); d-- > 0;) {
    coords[d] = index % counts_[d];
    index /= counts_[d];
  }
  return coords;
}

std::size_t Domain::index_of(std::span<const std::size_t> coords) const {
  if (coords.size() != dim()) throw InvalidArgument("domain: coordinate rank mismatch");
  std::size_t index = 0;
  for (std::size_t d = 0; d < dim(); ++d) {
    if (coords[d] >= counts_[d]) throw InvalidArgument("domain: lattice coordinate out of range");
    index = index * counts_[d] + coords[d];
  }
  return index;
}

namespace {

double coordinate(double lo, double hi, std::size_t count, std::size_t k) {
  if (k + 1 == count) return hi;
  const double step = (hi - lo) / static_cast<double>(count - 1);
  return lo + static_cast<double>(k) * step;
}

}  // namespace

ParameterVector Domain::point(std::size_t index) const {
  const auto coords = lattice_coords(index);
  ParameterVector theta(static_cast<Eigen::Index>(dim()));
  for (std::size_t d = 0; d < dim(); ++d) {
    theta[static_cast<Eigen::Index>(d)] = coordinate(lower_[d], upper_[d], counts_[d], coords[d]);
  }
  return theta;
}

Eigen::MatrixXd Domain::lattice() const {
  Eigen::MatrixXd points(static_cast<Eigen::Index>(size_), static_cast<Eigen::Index>(dim()));
  std::vector<std::size_t> coords(dim(), 0);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t d = 0; d < dim(); ++d) {
      points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          coordinate(lower_[d], upper_[d], counts_[d], coords[d]);
    }
    for (std::size_t d = dim(); d-- > 0;) {
      if (++coords[d] < counts_[d]) break;
      coords[d] = 0;
    }
  }
  return points;
}

std::size_t Domain::nearest_index(const ParameterVector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != dim()) {
    throw InvalidArgument("domain: point dimension mismatch");
  }
  std::vector<std::size_t> coords(dim());
  for (std::size_t d = 0; d < dim(); ++d) {
    const double step = (upper_[d] - lower_[d]) / static_cast<double>(counts_[d] - 1);
    const double k = std::round((theta[static_cast<Eigen::Index>(d)] - lower_[d]) / step);
    coords[d] = static_cast<std::size_t>(
        std::clamp(k, 0.0, static_cast<double>(counts_[d] - 1)));
  }
  return index_of(coords);
}

bool Domain::contains(const ParameterVector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != dim()) return false;
  for (std::size_t d = 0; d < dim(); ++d) {
    const double v = theta[static_cast<Eigen::Index>(d)];
    if (!std::isfinite(v) || v < lower_[d] || v > upper_[d]) return false;
  }
  return true;
}

bool Domain::on_grid(const ParameterVector& theta, double tol) const {
  if (!contains(theta)) return false;
  const ParameterVector snapped = point(nearest_index(theta));
  for (std::size_t d = 0; d < dim(); ++d) {
    const double step = (upper_[d] - lower_[d]) / static_cast<double>(counts_[d] - 1);
    const auto e = static_cast<Eigen::Index>(d);
    if (std::abs(snapped[e] - theta[e]) > tol * step) return false;
  }
  return true;
}

}  // namespace cego
