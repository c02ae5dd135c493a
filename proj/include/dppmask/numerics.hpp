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

namespace dppmask {

// Dense symmetric matrix, row-major, finite entries, exact symmetry.
// Order 0 is allowed and stands for the empty submatrix (det = 1).
class SymMatrix {
 public:
  SymMatrix() = default;

  // Rejects asymmetric input (NotSymmetric), non-finite entries
  // (NonFiniteValue) and a value count other than order^2
  // (DimensionMismatch).
  static SymMatrix from_row_major(std::size_t order, std::vector<double> values);
  // Replaces each off-diagonal pair by its mean.
  static SymMatrix symmetrized(std::size_t order, std::vector<double> values);
  static SymMatrix identity(std::size_t order);
  static SymMatrix diagonal(std::span<const double> diag);

  std::size_t order() const noexcept { return order_; }
  bool empty() const noexcept { return order_ == 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * order_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * order_, order_};
  }
  std::span<const double> values() const noexcept { return values_; }

  // this + shift * I
  SymMatrix shifted(double shift) const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  SymMatrix(std::size_t order, std::vector<double> values)
      : order_(order), values_(std::move(values)) {}

  std::size_t order_ = 0;
  std::vector<double> values_;
};

// Lower-triangular factor with non-negative diagonal.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  CholeskyFactor(std::size_t order, std::vector<double> lower)
      : order_(order), lower_(std::move(lower)) {}

  std::size_t order() const noexcept { return order_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return lower_[i * order_ + j];
  }
  std::span<const double> values() const noexcept { return lower_; }

  // lower * lower^T as a dense row-major array.
  std::vector<double> reconstruct() const;

 private:
  std::size_t order_ = 0;
  std::vector<double> lower_;
};

// Factorizes m + jitter * I. Throws NotPositiveDefinite carrying the index of
// the first pivot that is not strictly positive.
CholeskyFactor cholesky(const SymMatrix& m, double jitter = 0.0);

// 2 * sum(log(diag(cholesky(m)))). 0 for the empty matrix.
double log_det(const SymMatrix& m, double jitter = 0.0);

// Determinant by LU with partial pivoting; valid for singular and indefinite
// input. 1 for the empty matrix.
double determinant(const SymMatrix& m);

// result(a, b) == m(indices[a], indices[b]).
SymMatrix submatrix(const SymMatrix& m, std::span<const std::size_t> indices);

}  // namespace dppmask
