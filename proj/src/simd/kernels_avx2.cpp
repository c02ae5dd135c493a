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

// AVX2 variants. This translation unit is compiled with -mavx2 -mfma
// -ffp-contract=off; only `dot` and `dot4` use FMA, explicitly.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

namespace dppmask::simd::detail {

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8),
                           _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12),
                           _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1),
                                    _mm256_add_pd(acc2, acc3));
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  double sum = _mm_cvtsd_f64(s);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

namespace {

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

}  // namespace

void dot4_avx2(const double* a, const double* const* b, std::size_t n, double* out) {
  const double* b0 = b[0];
  const double* b1 = b[1];
  const double* b2 = b[2];
  const double* b3 = b[3];
  __m256d s0 = _mm256_setzero_pd(), t0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd(), t1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd(), t2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd(), t3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x = _mm256_loadu_pd(a + i);
    const __m256d y = _mm256_loadu_pd(a + i + 4);
    s0 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b0 + i), s0);
    t0 = _mm256_fmadd_pd(y, _mm256_loadu_pd(b0 + i + 4), t0);
    s1 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b1 + i), s1);
    t1 = _mm256_fmadd_pd(y, _mm256_loadu_pd(b1 + i + 4), t1);
    s2 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b2 + i), s2);
    t2 = _mm256_fmadd_pd(y, _mm256_loadu_pd(b2 + i + 4), t2);
    s3 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b3 + i), s3);
    t3 = _mm256_fmadd_pd(y, _mm256_loadu_pd(b3 + i + 4), t3);
  }
  if (i + 4 <= n) {
    const __m256d x = _mm256_loadu_pd(a + i);
    s0 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b0 + i), s0);
    s1 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b1 + i), s1);
    s2 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b2 + i), s2);
    s3 = _mm256_fmadd_pd(x, _mm256_loadu_pd(b3 + i), s3);
    i += 4;
  }
  double r0 = horizontal_sum(_mm256_add_pd(s0, t0));
  double r1 = horizontal_sum(_mm256_add_pd(s1, t1));
  double r2 = horizontal_sum(_mm256_add_pd(s2, t2));
  double r3 = horizontal_sum(_mm256_add_pd(s3, t3));
  for (; i < n; ++i) {
    r0 += a[i] * b0[i];
    r1 += a[i] * b1[i];
    r2 += a[i] * b2[i];
    r3 += a[i] * b3[i];
  }
  out[0] = r0;
  out[1] = r1;
  out[2] = r2;
  out[3] = r3;
}

void sub_scaled_avx2(double* y, double alpha, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] -= alpha * x[i];
}

void divide_avx2(double* y, double divisor, std::size_t n) {
  const __m256d vd = _mm256_set1_pd(divisor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_div_pd(_mm256_loadu_pd(y + i), vd));
  }
  for (; i < n; ++i) y[i] /= divisor;
}

void sub_square_clamp_avx2(double* d2, const double* e, std::size_t n) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const __m256d vneg_inf = _mm256_set1_pd(kNegInf);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(d2 + i);
    const __m256d ev = _mm256_loadu_pd(e + i);
    __m256d r = _mm256_sub_pd(d, _mm256_mul_pd(ev, ev));
    // Zero the lanes that went negative; -0.0 compares equal and survives,
    // as in the scalar path.
    r = _mm256_andnot_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), r);
    r = _mm256_blendv_pd(r, d, _mm256_cmp_pd(d, vneg_inf, _CMP_EQ_OQ));
    _mm256_storeu_pd(d2 + i, r);
  }
  for (; i < n; ++i) {
    if (d2[i] == kNegInf) continue;
    const double r = d2[i] - e[i] * e[i];
    d2[i] = r < 0.0 ? 0.0 : r;
  }
}

std::size_t argmax_avx2(const double* v, std::size_t n) {
  if (n < 8) return argmax_scalar(v, n);
  __m256d vmax = _mm256_loadu_pd(v);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(v + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double best = lanes[0];
  for (int l = 1; l < 4; ++l) best = lanes[l] > best ? lanes[l] : best;
  for (; i < n; ++i) best = v[i] > best ? v[i] : best;

  // Second pass: first position holding the maximum.
  const __m256d target = _mm256_set1_pd(best);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const int hits =
        _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + j), target,
                                         _CMP_EQ_OQ));
    if (hits != 0) return j + static_cast<std::size_t>(__builtin_ctz(hits));
  }
  for (; j < n; ++j) {
    if (v[j] == best) return j;
  }
  return 0;
}

}  // namespace dppmask::simd::detail
