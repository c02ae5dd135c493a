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

#include "dppmask/simd.hpp"

namespace dppmask::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
void dot4_scalar(const double* a, const double* const* b, std::size_t n,
                 double* out);
void sub_scaled_scalar(double* y, double alpha, const double* x,
                       std::size_t n);
void divide_scalar(double* y, double divisor, std::size_t n);
void sub_square_clamp_scalar(double* d2, const double* e, std::size_t n);
std::size_t argmax_scalar(const double* v, std::size_t n);

#if defined(DPPMASK_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void dot4_avx2(const double* a, const double* const* b, std::size_t n, double* out);
void sub_scaled_avx2(double* y, double alpha, const double* x, std::size_t n);
void divide_avx2(double* y, double divisor, std::size_t n);
void sub_square_clamp_avx2(double* d2, const double* e, std::size_t n);
std::size_t argmax_avx2(const double* v, std::size_t n);
#endif

}  // namespace dppmask::simd::detail
