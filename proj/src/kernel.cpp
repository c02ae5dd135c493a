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

#include "dppmask/kernel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dppmask/error.hpp"
#include "dppmask/simd.hpp"

namespace dppmask {

FeatureMatrix::FeatureMatrix(std::size_t count, std::size_t dim,
                             std::vector<double> values)
    : count_(count), dim_(dim), values_(std::move(values)) {
  if (count_ == 0 || dim_ == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                "feature matrix needs at least one row and one column");
  }
  if (values_.size() != count_ * dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(count_ * dim_) + " values, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error::at_index(ErrorKind::NonFiniteValue, k,
                            "feature value " + std::to_string(k) + " is not finite");
    }
  }
}

FeatureMatrix FeatureMatrix::permuted(std::span<const std::size_t> order) const {
  if (order.size() != count_) {
    throw Error(ErrorKind::DimensionMismatch, "permutation length mismatch");
  }
  std::vector<double> out(values_.size());
  for (std::size_t p = 0; p < count_; ++p) {
    if (order[p] >= count_) {
      throw Error::at_index(ErrorKind::IndexOutOfRange, p, "permutation entry out of range");
    }
    const auto src = row(order[p]);
    std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(p * dim_));
  }
  return FeatureMatrix(count_, dim_, std::move(out));
}

FeatureMatrix normalize_rows(const FeatureMatrix& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  const std::size_t dim = f.dim();
  for (std::size_t i = 0; i < f.count(); ++i) {
    double* r = out.data() + i * dim;
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) sq += r[k] * r[k];
    if (sq == 0.0) continue;
    const double norm = std::sqrt(sq);
    for (std::size_t k = 0; k < dim; ++k) r[k] /= norm;
  }
  return FeatureMatrix(f.count(), dim, std::move(out));
}

namespace {

void check_bandwidth(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidBandwidth,
                "bandwidth must be positive and finite, got " + std::to_string(epsilon));
  }
}

// Kernel over rows[p] * scale[p]. sq_norm[p] is the squared norm of the
// scaled row.
LEnsemble kernel_from_rows(const std::vector<const double*>& rows,
                           const std::vector<double>& scale,
                           const std::vector<double>& sq_norm, std::size_t dim,
                           double epsilon) {
  const auto& kernels = simd::active();
  const std::size_t n = rows.size();
  std::vector<double> values(n * n);
  double dots[4];
  for (std::size_t i = 0; i < n; ++i) {
    values[i * n + i] = 1.0;
    const double* a = rows[i];
    std::size_t j = i + 1;
    const auto store = [&](std::size_t col, double dot) {
      double dist = sq_norm[i] + sq_norm[col] - 2.0 * (dot * scale[i] * scale[col]);
      if (dist < 0.0) dist = 0.0;
      const double v = std::exp(-dist / epsilon);
      values[i * n + col] = v;
      values[col * n + i] = v;
    };
    for (; j + 4 <= n; j += 4) {
      kernels.dot4(a, rows.data() + j, dim, dots);
      for (std::size_t r = 0; r < 4; ++r) store(j + r, dots[r]);
    }
    for (; j < n; ++j) store(j, kernels.dot(a, rows[j], dim));
  }
  return LEnsemble{SymMatrix::from_row_major(n, std::move(values)), epsilon};
}

}  // namespace

LEnsemble gaussian_kernel(const FeatureMatrix& f, double epsilon) {
  check_bandwidth(epsilon);
  const auto& kernels = simd::active();
  const std::size_t n = f.count();
  const std::size_t dim = f.dim();
  std::vector<const double*> rows(n);
  std::vector<double> sq_norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = f.row(i).data();
    sq_norm[i] = kernels.dot(rows[i], rows[i], dim);
  }
  return kernel_from_rows(rows, std::vector<double>(n, 1.0), sq_norm, dim, epsilon);
}

LEnsemble normalized_gaussian_kernel(const FeatureMatrix& f,
                                     std::span<const std::size_t> order,
                                     double epsilon) {
  check_bandwidth(epsilon);
  const std::size_t n = f.count();
  const std::size_t dim = f.dim();
  if (order.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "permutation length mismatch");
  }
  const auto& kernels = simd::active();
  std::vector<const double*> rows(n);
  std::vector<double> scale(n, 0.0);
  std::vector<double> sq_norm(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    if (order[p] >= n) {
      throw Error::at_index(ErrorKind::IndexOutOfRange, p, "permutation entry out of range");
    }
    rows[p] = f.row(order[p]).data();
    const double sq = kernels.dot(rows[p], rows[p], dim);
    if (sq == 0.0) continue;
    scale[p] = 1.0 / std::sqrt(sq);
    sq_norm[p] = 1.0;
  }
  return kernel_from_rows(rows, scale, sq_norm, dim, epsilon);
}

}  // namespace dppmask
