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

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "dppmask/dpp.hpp"
#include "dppmask/kernel.hpp"
#include "dppmask/masking.hpp"
#include "dppmask/simd.hpp"
#include "oracles.hpp"

using namespace dppmask;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(gen);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(simd::backend_available(simd::Backend::Scalar));
  CHECK(simd::to_string(simd::Backend::Scalar) == "scalar");
  CHECK(simd::to_string(simd::Backend::Avx2) == "avx2");
  simd::ScopedBackend scope(simd::Backend::Scalar);
  CHECK(scope.ok());
  CHECK(simd::active_backend() == simd::Backend::Scalar);
}

TEST_CASE("scalar kernels") {
  const simd::KernelTable& k = simd::scalar_kernels();
  const double a[] = {1, 2, 3};
  const double b[] = {4, 5, 6};
  CHECK(k.dot(a, b, 3) == 32.0);
  CHECK(k.dot(a, b, 0) == 0.0);
  const double* rows[] = {a, b, b, a};
  double out[4];
  k.dot4(a, rows, 3, out);
  CHECK(out[0] == 14.0);
  CHECK(out[1] == 32.0);
  CHECK(out[3] == 14.0);

  double y[] = {1, 1, 1};
  k.sub_scaled(y, 2.0, a, 3);
  CHECK(y[0] == -1.0);
  CHECK(y[2] == -5.0);
  k.divide(y, -1.0, 3);
  CHECK(y[1] == 3.0);

  const double inf = std::numeric_limits<double>::infinity();
  double d2[] = {1.0, 0.5, -inf, 0.01};
  const double e[] = {0.5, 1.0, 7.0, 0.1};
  k.sub_square_clamp(d2, e, 4);
  CHECK(d2[0] == 0.75);
  CHECK(d2[1] == 0.0);
  CHECK(d2[2] == -inf);
  CHECK(d2[3] >= 0.0);

  const double v[] = {-inf, 2.0, 5.0, 5.0, 1.0};
  CHECK(k.argmax(v, 5) == 2);
  CHECK(k.argmax(v, 1) == 0);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const simd::KernelTable* avx = simd::avx2_kernels();
  if (avx == nullptr) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  const simd::KernelTable& ref = simd::scalar_kernels();
  std::mt19937_64 gen(77);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 196u, 1000u}) {
    const auto a = random_vector(gen, n);
    const auto b = random_vector(gen, n);

    double exact = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      exact += a[i] * b[i];
      scale += std::fabs(a[i] * b[i]);
    }
    CHECK(std::fabs(avx->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
          1e-14 * std::max(1.0, scale));

    const auto c = random_vector(gen, n);
    const double* rows[] = {b.data(), a.data(), c.data(), b.data()};
    double fast[4], slow[4];
    avx->dot4(a.data(), rows, n, fast);
    ref.dot4(a.data(), rows, n, slow);
    for (int r = 0; r < 4; ++r) {
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::fabs(a[i] * rows[r][i]);
      CHECK(std::fabs(fast[r] - slow[r]) <= 1e-14 * std::max(1.0, mag));
      CHECK(slow[r] == ref.dot(a.data(), rows[r], n));
    }

    auto y1 = a, y2 = a;
    ref.sub_scaled(y1.data(), 0.37, b.data(), n);
    avx->sub_scaled(y2.data(), 0.37, b.data(), n);
    CHECK(same_bits(y1, y2));

    y1 = a, y2 = a;
    ref.divide(y1.data(), 1.7, n);
    avx->divide(y2.data(), 1.7, n);
    CHECK(same_bits(y1, y2));

    std::vector<double> d1(n), d2(n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) d1[i] = (i % 5 == 3) ? -inf : unit(gen);
    d2 = d1;
    auto e = random_vector(gen, n);
    for (double& x : e) x *= 0.5;
    ref.sub_square_clamp(d1.data(), e.data(), n);
    avx->sub_square_clamp(d2.data(), e.data(), n);
    CHECK(same_bits(d1, d2));

    CHECK(ref.argmax(d1.data(), n) == avx->argmax(d1.data(), n));
    // Ties: first occurrence.
    std::vector<double> flat(n, 0.25);
    if (n > 2) flat[n - 1] = flat[n / 2] = 0.5;
    CHECK(ref.argmax(flat.data(), n) == avx->argmax(flat.data(), n));
    std::vector<double> all_inf(n, -inf);
    CHECK(avx->argmax(all_inf.data(), n) == 0);
  }
}

TEST_CASE("greedy selection and masks are identical across backends") {
  if (!simd::backend_available(simd::Backend::Avx2)) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  std::mt19937_64 gen(91);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 30 + 17 * trial;
    const FeatureMatrix f = oracle::gaussian_features(gen, n, 8 + trial);
    MaskConfig config;
    config.mode = FeatureMode::Feature;
    config.seed = static_cast<std::uint64_t>(trial);
    config.tau = trial % 2 == 0 ? 0.0 : 0.8;

    std::vector<std::size_t> greedy[2];
    MaskResult masks[2];
    const simd::Backend backends[] = {simd::Backend::Scalar, simd::Backend::Avx2};
    for (int b = 0; b < 2; ++b) {
      simd::ScopedBackend scope(backends[b]);
      REQUIRE(scope.ok());
      const LEnsemble l = gaussian_kernel(normalize_rows(f));
      greedy[b] = greedy_map(l.matrix, n / 4);
      masks[b] = generate_mask(f, config);
    }
    CHECK(greedy[0] == greedy[1]);
    CHECK(masks[0].visible == masks[1].visible);
    CHECK(masks[0].greedy_count == masks[1].greedy_count);
  }
}
