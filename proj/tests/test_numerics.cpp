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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dppmask/error.hpp"
#include "dppmask/numerics.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace dppmask;

TEST_CASE("SymMatrix rejects asymmetric and non-finite input") {
  CHECK(kind_of([] { SymMatrix::from_row_major(2, {1, 2, 3, 1}); }) == ErrorKind::NotSymmetric);
  CHECK(kind_of([] { SymMatrix::from_row_major(2, {1, NAN, NAN, 1}); }) ==
        ErrorKind::NonFiniteValue);
  CHECK(kind_of([] { SymMatrix::from_row_major(2, {1, 0, 0}); }) == ErrorKind::DimensionMismatch);

  const SymMatrix s = SymMatrix::symmetrized(2, {1, 2, 4, 1});
  CHECK(s(0, 1) == 3.0);
  CHECK(s(1, 0) == 3.0);
}

TEST_CASE("cholesky of the identity is the identity") {
  const CholeskyFactor f = cholesky(SymMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(f(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("cholesky of [[4,2],[2,3]]") {
  const CholeskyFactor f = cholesky(SymMatrix::from_row_major(2, {4, 2, 2, 3}));
  CHECK(f(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f(0, 1) == 0.0);
  CHECK(f(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto back = f.reconstruct();
  CHECK(back[0] == doctest::Approx(4.0));
  CHECK(back[1] == doctest::Approx(2.0));
  CHECK(back[3] == doctest::Approx(3.0));
}

TEST_CASE("cholesky reports the failing pivot of a rank-one matrix") {
  try {
    cholesky(SymMatrix::from_row_major(2, {1, 1, 1, 1}));
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
  }
  // Jitter lifts the zero pivot.
  CHECK_NOTHROW(cholesky(SymMatrix::from_row_major(2, {1, 1, 1, 1}), 1e-6));
}

TEST_CASE("cholesky round trip stays within 1e-10 * N") {
  std::mt19937_64 gen(11);
  for (std::size_t n : {1u, 3u, 8u, 20u, 40u}) {
    const SymMatrix m = oracle::random_psd(gen, n);
    for (double jitter : {0.0, 1e-3}) {
      const auto back = cholesky(m, jitter).reconstruct();
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          worst = std::max(worst, std::fabs(back[i * n + j] - (m(i, j) + (i == j ? jitter : 0.0))));
      CHECK(worst <= 1e-10 * static_cast<double>(n));
    }
  }
}

TEST_CASE("log_det of simple matrices") {
  CHECK(log_det(SymMatrix::identity(5)) == 0.0);
  const double diag[] = {2.0, 3.0};
  CHECK(log_det(SymMatrix::diagonal(diag)) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(log_det(SymMatrix()) == 0.0);
  CHECK(determinant(SymMatrix()) == 1.0);
}

TEST_CASE("log_det agrees with cofactor expansion on random PSD matrices") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const SymMatrix m = oracle::random_psd(gen, n);
    const double expected = oracle::cofactor_det(oracle::to_dense(m));
    const double got = std::exp(log_det(m));
    CHECK(std::fabs(got - expected) / std::fabs(expected) <= 1e-9);
    CHECK(std::fabs(determinant(m) - expected) / std::fabs(expected) <= 1e-9);
  }
}

TEST_CASE("submatrix indexing") {
  const SymMatrix m = SymMatrix::from_row_major(3, {0, 1, 2, 1, 4, 5, 2, 5, 8});
  CHECK(submatrix(m, {}).order() == 0);
  const std::size_t one[] = {1};
  CHECK(submatrix(m, one)(0, 0) == 4.0);
  const std::size_t perm[] = {2, 0};
  const SymMatrix s = submatrix(m, perm);
  CHECK(s(0, 0) == 8.0);
  CHECK(s(0, 1) == 2.0);
  CHECK(s(1, 0) == 2.0);
  CHECK(s(1, 1) == 0.0);

  const std::size_t bad[] = {0, 3};
  CHECK(kind_of([&] { submatrix(m, bad); }) == ErrorKind::IndexOutOfRange);
  const std::size_t dup[] = {1, 1};
  CHECK(kind_of([&] { submatrix(m, dup); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("log_det is invariant under symmetric permutation of the index set") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 25; ++trial) {
    const SymMatrix m = oracle::random_psd(gen, 10);
    std::vector<std::size_t> idx = {0, 2, 3, 5, 7, 9};
    const double base = log_det(submatrix(m, idx));
    std::shuffle(idx.begin(), idx.end(), gen);
    CHECK(log_det(submatrix(m, idx)) == doctest::Approx(base).epsilon(1e-12));
  }
}
