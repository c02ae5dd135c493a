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
#include <string_view>

// Data-parallel inner loops of the sampler. Every routine has a portable
// scalar reference and, on x86-64, an AVX2 variant chosen at runtime.
//
// The elementwise routines (sub_scaled, divide, sub_square_clamp, argmax) are
// bitwise identical across backends: both paths issue the same IEEE
// operations per lane and neither contracts mul+sub into FMA. Only `dot`
// reorders its reduction, so callers that need cross-backend bit equality
// must not route decisions through it.
namespace dppmask::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[r] = dot(a, b[r], n) for r < 4, sharing the loads of a.
  void (*dot4)(const double* a, const double* const* b, std::size_t n, double* out);
  // y[i] -= alpha * x[i]
  void (*sub_scaled)(double* y, double alpha, const double* x, std::size_t n);
  // y[i] /= divisor
  void (*divide)(double* y, double divisor, std::size_t n);
  // d2[i] = max(d2[i] - e[i]^2, 0); entries equal to -inf are left alone.
  void (*sub_square_clamp)(double* d2, const double* e, std::size_t n);
  // Index of the first maximal element; n must be positive. NaNs are never
  // produced by the sampler and are not ordered here.
  std::size_t (*argmax)(const double* v, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

bool backend_available(Backend backend) noexcept;

// Best available backend, unless DPPMASK_SIMD=scalar is set in the
// environment at first use.
Backend default_backend() noexcept;

Backend active_backend() noexcept;
const KernelTable& active() noexcept;

// Returns false (and changes nothing) when the backend is unavailable.
bool set_backend(Backend backend) noexcept;

// Restores the previous backend on scope exit.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend backend)
      : previous_(active_backend()), ok_(set_backend(backend)) {}
  ~ScopedBackend() { set_backend(previous_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

  bool ok() const noexcept { return ok_; }

 private:
  Backend previous_;
  bool ok_;
};

}  // namespace dppmask::simd
