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
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "dppmask/dpp.hpp"
#include "dppmask/kernel.hpp"
#include "dppmask/verify.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace dppmask;

namespace {

const SymMatrix kTriple =
    SymMatrix::from_row_major(3, {1, 0.9, 0.1, 0.9, 1, 0.1, 0.1, 0.1, 1});

LEnsemble random_kernel(std::mt19937_64& gen, std::size_t n, std::size_t dim) {
  return gaussian_kernel(normalize_rows(oracle::gaussian_features(gen, n, dim)));
}

}  // namespace

TEST_CASE("greedy_init takes gains from the diagonal") {
  const GreedyState s = greedy_init(SymMatrix::identity(4));
  CHECK(s.selected().empty());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s.gain(i) == 1.0);
    CHECK(s.c_row(i).empty());
    CHECK_FALSE(s.excluded(i));
  }
  const double diag[] = {2.0, 3.0};
  const GreedyState d = greedy_init(SymMatrix::diagonal(diag));
  CHECK(d.gain(0) == 2.0);
  CHECK(d.gain(1) == 3.0);

  std::mt19937_64 gen(1);
  const GreedyState g = greedy_init(random_kernel(gen, 20, 5).matrix);
  for (double v : g.gains()) CHECK(v == 1.0);
}

TEST_CASE("greedy_step on the 3x3 example") {
  GreedyState s = greedy_init(kTriple);
  const GreedyPick first = greedy_step(s, kTriple);
  CHECK(first.index == 0);
  CHECK(first.gain == 1.0);
  CHECK(s.gain(1) == doctest::Approx(0.19).epsilon(1e-14));
  CHECK(s.gain(2) == doctest::Approx(0.99).epsilon(1e-14));
  CHECK(std::isinf(s.gain(0)));
  CHECK(s.excluded(0));

  const GreedyPick second = greedy_step(s, kTriple);
  CHECK(second.index == 2);
  CHECK(second.gain == doctest::Approx(0.99).epsilon(1e-14));
  const auto c1 = s.c_row(1);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0] == doctest::Approx(0.9).epsilon(1e-14));
  const double e = (0.1 - 0.9 * 0.1) / std::sqrt(0.99);
  CHECK(c1[1] == doctest::Approx(e).epsilon(1e-12));
  CHECK(c1[1] == doctest::Approx(0.01005).epsilon(1e-3));
  CHECK(s.gain(1) == doctest::Approx(0.19 - e * e).epsilon(1e-12));
  CHECK(s.gain(1) == doctest::Approx(0.18990).epsilon(1e-4));

  // det(L_{0,2}) = 1 * 0.99
  const std::size_t sel[] = {0, 2};
  CHECK(std::exp(log_det(submatrix(kTriple, sel))) ==
        doctest::Approx(first.gain * second.gain).epsilon(1e-12));

  const GreedyPick third = greedy_step(s, kTriple);
  CHECK(third.index == 1);
  CHECK_FALSE(s.has_candidates());
  CHECK(kind_of([&] { greedy_step(s, kTriple); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("identity kernel: unit gains and zero c rows") {
  const SymMatrix id = SymMatrix::identity(6);
  GreedyState s = greedy_init(id);
  for (std::size_t step = 0; step < 6; ++step) {
    const GreedyPick p = greedy_step(s, id);
    CHECK(p.index == step);
    CHECK(p.gain == 1.0);
    for (std::size_t i = 0; i < 6; ++i) {
      if (s.excluded(i)) continue;
      for (double c : s.c_row(i)) CHECK(c == 0.0);
    }
  }
}

TEST_CASE("greedy_step raises DegenerateGain on rank-deficient kernels") {
  const SymMatrix ones = SymMatrix::from_row_major(2, {1, 1, 1, 1});
  GreedyState s = greedy_init(ones);
  CHECK(greedy_step(s, ones).index == 0);
  CHECK(s.gain(1) == 0.0);
  CHECK(kind_of([&] { greedy_step(s, ones); }) == ErrorKind::DegenerateGain);
}

TEST_CASE("state invariants hold at every step") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 12 + 4 * trial;
    const LEnsemble l = random_kernel(gen, n, 6 + trial);
    GreedyState s = greedy_init(l.matrix);
    std::vector<double> previous(s.gains().begin(), s.gains().end());
    double log_prod = 0.0;
    for (std::size_t step = 0; step < n / 2; ++step) {
      const GreedyPick p = greedy_step(s, l.matrix);
      log_prod += std::log(p.gain);
      const double direct = log_det(submatrix(l.matrix, s.selected()));
      CHECK(std::fabs(direct - log_prod) <= 1e-8 * std::max(1.0, std::fabs(direct)));
      for (std::size_t i = 0; i < n; ++i) {
        if (s.excluded(i)) continue;
        const auto c = s.c_row(i);
        double norm = 0.0;
        for (double x : c) norm += x * x;
        CHECK(std::fabs(s.gain(i) - (l.matrix(i, i) - norm)) <= 1e-8);
        CHECK(s.gain(i) <= previous[i]);
        CHECK(s.gain(i) >= 0.0);
        previous[i] = s.gain(i);
      }
    }
    const auto trace = s.pick_gains();
    CHECK(std::is_sorted(trace.begin(), trace.end(), std::greater<>()));
  }
}

TEST_CASE("greedy_map matches ratio-of-determinants greedy") {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 8 + trial;
    const LEnsemble l = random_kernel(gen, n, 4);
    const std::size_t k = n / 3;
    CHECK(greedy_map(l.matrix, k) == oracle::ratio_greedy(oracle::to_dense(l.matrix), k));
    CHECK(greedy_map(l.matrix, k) == verify::naive_greedy(l.matrix, k));
  }
}

TEST_CASE("greedy output is permutation equivariant") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20;
    const FeatureMatrix f = normalize_rows(oracle::gaussian_features(gen, n, 5));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // Every first-step gain is 1, so item 0 must stay first to keep the
    // tie order.
    std::shuffle(perm.begin() + 1, perm.end(), gen);
    const auto base = greedy_map(gaussian_kernel(f).matrix, 8);
    // Row r of the permuted matrix is original item perm[r].
    const auto moved = greedy_map(gaussian_kernel(f.permuted(perm)).matrix, 8);
    std::vector<std::size_t> mapped;
    for (std::size_t r : moved) mapped.push_back(perm[r]);
    CHECK(mapped == base);
  }
}

TEST_CASE("sample_mask threshold behaviour on the 3x3 example") {
  Rng rng(5);
  const SampleResult r = sample_mask(kTriple, 3, 0.5, rng);
  CHECK(r.greedy_count == 2);
  CHECK(r.visible == std::vector<std::size_t>{0, 2, 1});
  REQUIRE(r.aborted_at_gain.has_value());
  CHECK(*r.aborted_at_gain == doctest::Approx(0.18990).epsilon(1e-4));
  REQUIRE(r.gain_trace.size() == 2);
  CHECK(r.gain_trace[0] == 1.0);
  CHECK(r.gain_trace[1] == doctest::Approx(0.99));
}

TEST_CASE("sample_mask extremes") {
  std::mt19937_64 gen(41);
  const LEnsemble l = random_kernel(gen, 30, 4);
  SUBCASE("tau 0 is plain greedy") {
    Rng a(1), b(2);
    const SampleResult ra = sample_mask(l.matrix, 10, 0.0, a);
    const SampleResult rb = sample_mask(l.matrix, 10, 0.0, b);
    CHECK(ra.greedy_count == 10);
    CHECK(ra.visible == greedy_map(l.matrix, 10));
    CHECK(ra.visible == rb.visible);
    CHECK_FALSE(ra.aborted_at_gain.has_value());
  }
  SUBCASE("tau 1 is purely random") {
    Rng rng(3);
    const SampleResult r = sample_mask(l.matrix, 10, 1.0, rng);
    CHECK(r.greedy_count == 0);
    CHECK(r.gain_trace.empty());
    CHECK(std::set<std::size_t>(r.visible.begin(), r.visible.end()).size() == 10);
  }
  SUBCASE("tau 0 on a rank-deficient kernel falls back to random fill") {
    const SymMatrix ones = SymMatrix::from_row_major(3, {1, 1, 1, 1, 1, 1, 1, 1, 1});
    Rng rng(0);
    const SampleResult r = sample_mask(ones, 3, 0.0, rng);
    CHECK(r.greedy_count == 1);
    CHECK(r.visible.size() == 3);
  }
  SUBCASE("argument checks") {
    Rng rng(0);
    CHECK(kind_of([&] { sample_mask(l.matrix, 0, 0.5, rng); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { sample_mask(l.matrix, 31, 0.5, rng); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { sample_mask(l.matrix, 3, 1.5, rng); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { sample_mask(l.matrix, 3, -0.1, rng); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("sample_mask results satisfy their invariants") {
  std::mt19937_64 gen(43);
  for (double tau : {0.0, 0.3, 0.6, 0.8, 0.9, 0.99, 1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 10 + trial * 5;
      const LEnsemble l = random_kernel(gen, n, 3);
      const std::size_t k = 1 + trial % (n / 2);
      Rng rng(static_cast<std::uint64_t>(trial));
      const SampleResult r = sample_mask(l.matrix, k, tau, rng);
      CHECK(r.visible.size() == k);
      CHECK(std::set<std::size_t>(r.visible.begin(), r.visible.end()).size() == k);
      CHECK(r.greedy_count <= k);
      CHECK(r.gain_trace.size() == r.greedy_count);
      CHECK(std::is_sorted(r.gain_trace.begin(), r.gain_trace.end(), std::greater<>()));
      for (double g : r.gain_trace) CHECK(g >= tau);
      if (r.aborted_at_gain) CHECK(*r.aborted_at_gain < tau);
      for (std::size_t v : r.visible) CHECK(v < n);
      // Greedy prefix equals the plain greedy prefix.
      if (r.greedy_count > 0) {
        const auto plain = greedy_map(l.matrix, r.greedy_count);
        CHECK(std::equal(plain.begin(), plain.end(), r.visible.begin()));
      }
      Rng again(static_cast<std::uint64_t>(trial));
      CHECK(sample_mask(l.matrix, k, tau, again).visible == r.visible);
    }
  }
}
