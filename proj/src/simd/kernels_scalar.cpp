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

// Reference kernels. Built with -ffp-contract=off so the compiler cannot fuse
// the multiply-subtract pairs; the AVX2 variants rely on that to stay
// bit-identical.

#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

namespace dppmask::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void dot4_scalar(const double* a, const double* const* b, std::size_t n,
                 double* out) {
  for (int r = 0; r < 4; ++r) out[r] = dot_scalar(a, b[r], n);
}

void sub_scaled_scalar(double* y, double alpha, const double* x,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= alpha * x[i];
}

void divide_scalar(double* y, double divisor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] /= divisor;
}

void sub_square_clamp_scalar(double* d2, const double* e, std::size_t n) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (d2[i] == kNegInf) continue;
    const double r = d2[i] - e[i] * e[i];
    d2[i] = r < 0.0 ? 0.0 : r;
  }
}

std::size_t argmax_scalar(const double* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace dppmask::simd::detail
