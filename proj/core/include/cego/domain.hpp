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
#include <span>
#include <vector>

#include <Eigen/Core>

namespace cego {

// A point in parameter space. Length must match the owning Domain.
using ParameterVector = Eigen::VectorXd;

// Axis-aligned box discretized by a regular lattice. Lattice points include
// both corners; point indices are row-major (the last dimension varies
// fastest), so index 0 is the lower corner and size()-1 the upper corner.
class Domain {
 public:
  Domain(std::vector<double> lower, std::vector<double> upper,
         std::vector<std::size_t> grid_counts);

  // Same resolution along every dimension.
  static Domain uniform(std::vector<double> lower, std::vector<double> upper,
                        std::size_t grid_count);

  std::size_t dim() const { return lower_.size(); }
  std::size_t size() const { return size_; }

  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<std::size_t>& grid_counts() const { return counts_; }

  ParameterVector point(std::size_t index) const;
  std::vector<std::size_t> lattice_coords(std::size_t index) const;
  std::size_t index_of(std::span<const std::size_t> coords) const;

  // Index of the lattice point nearest to `theta` (coordinate-wise rounding,
  // clamped into the box).
  std::size_t nearest_index(const ParameterVector& theta) const;

  bool contains(const ParameterVector& theta) const;

  // True when `theta` coincides with a lattice point to `tol` per coordinate
  // (relative to the grid spacing).
  bool on_grid(const ParameterVector& theta, double tol = 1e-9) const;

  // All lattice points, one per row, in index order. Allocates size() x dim().
  Eigen::MatrixXd lattice() const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::size_t> counts_;
  std::size_t size_ = 0;
};

}  // namespace cego
