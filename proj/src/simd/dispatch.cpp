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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace dppmask::simd {

namespace {

constexpr KernelTable kScalar{
    detail::dot_scalar,
    detail::dot4_scalar,
    detail::sub_scaled_scalar,
    detail::divide_scalar,
    detail::sub_square_clamp_scalar,
    detail::argmax_scalar,
};

#if defined(DPPMASK_HAVE_AVX2)
constexpr KernelTable kAvx2{
    detail::dot_avx2,
    detail::dot4_avx2,
    detail::sub_scaled_avx2,
    detail::divide_avx2,
    detail::sub_square_clamp_avx2,
    detail::argmax_avx2,
};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

Backend pick_default() noexcept {
  const char* forced = std::getenv("DPPMASK_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return Backend::Scalar;
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{pick_default()};
  return backend;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(DPPMASK_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return avx2_kernels() != nullptr;
  }
  return false;
}

Backend default_backend() noexcept { return pick_default(); }

Backend active_backend() noexcept {
  return current().load(std::memory_order_relaxed);
}

const KernelTable& active() noexcept {
  if (active_backend() == Backend::Avx2) return *avx2_kernels();
  return kScalar;
}

bool set_backend(Backend backend) noexcept {
  if (!backend_available(backend)) return false;
  current().store(backend, std::memory_order_relaxed);
  return true;
}

}  // namespace dppmask::simd
