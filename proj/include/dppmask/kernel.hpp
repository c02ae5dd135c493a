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

#include "dppmask/numerics.hpp"

namespace dppmask {

// N feature vectors of dimension n, row-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  // Throws DimensionMismatch on a size mismatch or a zero dimension, and
  // NonFiniteValue on NaN/Inf.
  FeatureMatrix(std::size_t count, std::size_t dim, std::vector<double> values);

  std::size_t count() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

  // Rows reordered so that result.row(p) == row(order[p]).
  FeatureMatrix permuted(std::span<const std::size_t> order) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// Gaussian L-ensemble together with the bandwidth that produced it.
struct LEnsemble {
  SymMatrix matrix;
  double bandwidth = 1.0;

  std::size_t size() const noexcept { return matrix.order(); }
};

inline constexpr double kDefaultBandwidth = 1.0;

// Scales every row to unit Euclidean norm. Zero rows stay zero.
FeatureMatrix normalize_rows(const FeatureMatrix& f);

// L_ij = exp(-|f_i - f_j|^2 / epsilon), with the squared distance taken from
// |a|^2 + |b|^2 - 2<a,b> and clamped at zero. Diagonal is exactly 1.
// Throws InvalidBandwidth unless epsilon > 0.
LEnsemble gaussian_kernel(const FeatureMatrix& f,
                          double epsilon = kDefaultBandwidth);

// gaussian_kernel(normalize_rows(f).permuted(order), epsilon), up to
// rounding, without building the intermediate matrices.
LEnsemble normalized_gaussian_kernel(const FeatureMatrix& f,
                                     std::span<const std::size_t> order,
                                     double epsilon = kDefaultBandwidth);

}  // namespace dppmask
