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
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "dppmask/dpp.hpp"
#include "dppmask/kernel.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace dppmask;

namespace {

const SymMatrix kPair = SymMatrix::from_row_major(2, {1, 0.5, 0.5, 1});
const SymMatrix kTriple =
    SymMatrix::from_row_major(3, {1, 0.9, 0.1, 0.9, 1, 0.1, 0.1, 0.1, 1});

}  // namespace

TEST_CASE("normalization constant of small matrices") {
  CHECK(normalization_constant(SymMatrix::identity(2)) == doctest::Approx(4.0).epsilon(1e-15));
  // (1+1)(1+1) - 0.25
  CHECK(normalization_constant(kPair) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(oracle::cofactor_det(oracle::to_dense(kPair.shifted(1.0))) == doctest::Approx(3.75));
}

TEST_CASE("subset probabilities of the 2x2 example sum to one") {
  const std::vector<std::vector<std::size_t>> subsets = {{}, {0}, {1}, {0, 1}};
  double total = 0.0;
  for (const auto& s : subsets) total += subset_probability(kPair, s);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  const std::size_t a0[] = {0};
  CHECK(subset_probability(kPair, a0) == doctest::Approx(1.0 / 3.75).epsilon(1e-14));
  CHECK(subset_probability(kPair, a0) == doctest::Approx(0.26667).epsilon(1e-4));
  CHECK(subset_probability(kPair, {}) == doctest::Approx(1.0 / 3.75).epsilon(1e-14));

  const std::size_t a01[] = {0, 1};
  CHECK(subset_probability(SymMatrix::identity(3), a01) == doctest::Approx(0.125).epsilon(1e-15));
  const std::size_t bad[] = {2};
  CHECK(kind_of([&] { subset_probability(kPair, bad); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("normalization constant equals the brute-force subset sum") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const LEnsemble l = gaussian_kernel(normalize_rows(oracle::gaussian_features(gen, n, 4)));
    const double brute = oracle::subset_det_sum(oracle::to_dense(l.matrix));
    const double z = normalization_constant(l.matrix);
    CHECK(std::fabs(brute - z) / z <= 1e-9);
    CHECK(z >= 1.0);
  }
  // N = 10: all 1024 subsets.
  const LEnsemble l = gaussian_kernel(normalize_rows(oracle::gaussian_features(gen, 10, 5)));
  const double z = normalization_constant(l.matrix);
  CHECK(std::fabs(oracle::subset_det_sum(oracle::to_dense(l.matrix)) - z) / z <= 1e-9);
  CHECK(log_normalization_constant(l.matrix) == doctest::Approx(std::log(z)).epsilon(1e-12));
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(12, 3) == 220);
  CHECK(binomial(15, 5) == 3003);
  CHECK(binomial(196, 49) == std::numeric_limits<std::uint64_t>::max());
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
}

TEST_CASE("exact_map") {
  SUBCASE("3x3 example breaks the tie lexicographically") {
    CHECK(exact_map(kTriple, 2) == std::vector<std::size_t>{0, 2});
  }
  SUBCASE("identity kernel") {
    CHECK(exact_map(SymMatrix::identity(6), 3) == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("k = N") {
    CHECK(exact_map(kTriple, 3) == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("budget guard") {
    CHECK(kind_of([] { exact_map(SymMatrix::identity(30), 15); }) == ErrorKind::InstanceTooLarge);
    CHECK(kind_of([] { exact_map(SymMatrix::identity(12), 3, 219); }) ==
          ErrorKind::InstanceTooLarge);
    CHECK_NOTHROW(exact_map(SymMatrix::identity(12), 3, 220));
  }
  SUBCASE("bad k") {
    CHECK(kind_of([] { exact_map(kTriple, 0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { exact_map(kTriple, 4); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("exact_map is never worse than any enumerated subset") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 5; ++trial) {
    const LEnsemble l = gaussian_kernel(normalize_rows(oracle::gaussian_features(gen, 9, 3)));
    const auto best = exact_map(l.matrix, 4);
    const auto dense = oracle::to_dense(l.matrix);
    const double best_det = oracle::cofactor_det(oracle::sub(dense, best));
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
      if (__builtin_popcountll(mask) != 4) continue;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < 9; ++i)
        if (mask >> i & 1u) idx.push_back(i);
      CHECK(oracle::cofactor_det(oracle::sub(dense, idx)) <= best_det * (1 + 1e-12));
    }
  }
}

TEST_CASE("enumeration budget can come from the environment") {
  ::setenv("DPPMASK_ENUM_BUDGET", "100", 1);
  CHECK(default_enum_budget() == 100);
  CHECK(kind_of([] { exact_map(SymMatrix::identity(12), 3); }) == ErrorKind::InstanceTooLarge);
  ::setenv("DPPMASK_ENUM_BUDGET", "junk", 1);
  CHECK(default_enum_budget() == kDefaultEnumBudget);
  ::unsetenv("DPPMASK_ENUM_BUDGET");
  CHECK(default_enum_budget() == kDefaultEnumBudget);
}
