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

#include "dppmask/numerics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dppmask/error.hpp"

namespace dppmask {

namespace {

void check_shape(std::size_t order, const std::vector<double>& values) {
  if (values.size() != order * order) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(order * order) + " values, got " +
                    std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw Error::at_index(ErrorKind::NonFiniteValue, k,
                            "matrix entry " + std::to_string(k) + " is not finite");
    }
  }
}

}  // namespace

SymMatrix SymMatrix::from_row_major(std::size_t order,
                                    std::vector<double> values) {
  check_shape(order, values);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      if (values[i * order + j] != values[j * order + i]) {
        throw Error(ErrorKind::NotSymmetric,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") differs from its transpose");
      }
    }
  }
  return SymMatrix(order, std::move(values));
}

SymMatrix SymMatrix::symmetrized(std::size_t order, std::vector<double> values) {
  check_shape(order, values);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      const double mean = 0.5 * (values[i * order + j] + values[j * order + i]);
      values[i * order + j] = mean;
      values[j * order + i] = mean;
    }
  }
  return SymMatrix(order, std::move(values));
}

SymMatrix SymMatrix::identity(std::size_t order) {
  std::vector<double> values(order * order, 0.0);
  for (std::size_t i = 0; i < order; ++i) values[i * order + i] = 1.0;
  return SymMatrix(order, std::move(values));
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  const std::size_t order = diag.size();
  std::vector<double> values(order * order, 0.0);
  for (std::size_t i = 0; i < order; ++i) values[i * order + i] = diag[i];
  check_shape(order, values);
  return SymMatrix(order, std::move(values));
}

SymMatrix SymMatrix::shifted(double shift) const {
  std::vector<double> values = values_;
  for (std::size_t i = 0; i < order_; ++i) values[i * order_ + i] += shift;
  return SymMatrix(order_, std::move(values));
}

std::vector<double> CholeskyFactor::reconstruct() const {
  std::vector<double> out(order_ * order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k <= j; ++k) sum += (*this)(i, k) * (*this)(j, k);
      out[i * order_ + j] = sum;
      out[j * order_ + i] = sum;
    }
  }
  return out;
}

CholeskyFactor cholesky(const SymMatrix& m, double jitter) {
  const std::size_t n = m.order();
  std::vector<double> lower(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j) + jitter;
    for (std::size_t k = 0; k < j; ++k) pivot -= lower[j * n + k] * lower[j * n + k];
    if (!(pivot > 0.0)) {
      throw Error::at_index(ErrorKind::NotPositiveDefinite, j,
                            "pivot " + std::to_string(j) + " is " +
                                std::to_string(pivot));
    }
    const double diag = std::sqrt(pivot);
    lower[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= lower[i * n + k] * lower[j * n + k];
      lower[i * n + j] = v / diag;
    }
  }
  return CholeskyFactor(n, std::move(lower));
}

double log_det(const SymMatrix& m, double jitter) {
  const CholeskyFactor f = cholesky(m, jitter);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.order(); ++i) sum += std::log(f(i, i));
  return 2.0 * sum;
}

double determinant(const SymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> a(m.values().begin(), m.values().end());
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot_row * n + col])) pivot_row = r;
    }
    const double pivot = a[pivot_row * n + col];
    if (pivot == 0.0) return 0.0;
    if (pivot_row != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot_row * n + c]);
      det = -det;
    }
    det *= pivot;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / pivot;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return det;
}

SymMatrix submatrix(const SymMatrix& m, std::span<const std::size_t> indices) {
  const std::size_t n = m.order();
  std::vector<bool> seen(n, false);
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] >= n) {
      throw Error::at_index(ErrorKind::IndexOutOfRange, a,
                            "index " + std::to_string(indices[a]) +
                                " out of range for order " + std::to_string(n));
    }
    if (seen[indices[a]]) {
      throw Error::at_index(ErrorKind::InvalidArgument, a,
                            "duplicate index " + std::to_string(indices[a]));
    }
    seen[indices[a]] = true;
  }
  const std::size_t k = indices.size();
  std::vector<double> values(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) values[a * k + b] = m(indices[a], indices[b]);
  }
  return SymMatrix::from_row_major(k, std::move(values));
}

}  // namespace dppmask
