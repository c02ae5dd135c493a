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

#include "dppmask/dpp.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>

#include "dppmask/error.hpp"
#include "dppmask/simd.hpp"

namespace dppmask {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_indices(std::size_t n, std::span<const std::size_t> indices) {
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] >= n) {
      throw Error::at_index(ErrorKind::IndexOutOfRange, a,
                            "index " + std::to_string(indices[a]) + " >= " +
                                std::to_string(n));
    }
  }
}

double cholesky_det(const SymMatrix& m) {
  const CholeskyFactor f = cholesky(m);
  double det = 1.0;
  for (std::size_t i = 0; i < f.order(); ++i) det *= f(i, i) * f(i, i);
  return det;
}

}  // namespace

double normalization_constant(const SymMatrix& l) {
  return cholesky_det(l.shifted(1.0));
}

double log_normalization_constant(const SymMatrix& l) {
  return log_det(l.shifted(1.0));
}

double subset_probability(const SymMatrix& l, std::span<const std::size_t> indices) {
  check_indices(l.order(), indices);
  const double numerator = determinant(submatrix(l, indices));
  const double p = numerator / normalization_constant(l);
  if (p < 0.0) return 0.0;
  return p > 1.0 ? 1.0 : p;
}

std::uint64_t default_enum_budget() {
  const char* env = std::getenv("DPPMASK_ENUM_BUDGET");
  if (env == nullptr) return kDefaultEnumBudget;
  std::uint64_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return kDefaultEnumBudget;
  return value;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t f = factor / (i / g);
    if (r != 0 && f > kMax / r) return kMax;
    result = r * f;
  }
  return result;
}

std::vector<std::size_t> exact_map(const SymMatrix& l, std::size_t k,
                                   std::uint64_t budget) {
  const std::size_t n = l.order();
  if (k == 0 || k > n) {
    throw Error(ErrorKind::InvalidArgument,
                "subset size " + std::to_string(k) + " not in [1, " + std::to_string(n) + "]");
  }
  const std::uint64_t count = binomial(n, k);
  if (count > budget) {
    throw Error(ErrorKind::InstanceTooLarge,
                "C(" + std::to_string(n) + "," + std::to_string(k) + ") subsets exceed budget " +
                    std::to_string(budget));
  }

  std::vector<std::size_t> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = i;
  std::vector<std::size_t> best = combo;
  double best_value = kNegInf;

  while (true) {
    double value = kNegInf;
    try {
      value = log_det(submatrix(l, combo));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
    }
    if (value > best_value) {
      best_value = value;
      best = combo;
    }
    // Next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && combo[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++combo[pos - 1];
    for (std::size_t i = pos; i < k; ++i) combo[i] = combo[i - 1] + 1;
  }
  return best;
}

GreedyState::GreedyState(const SymMatrix& l)
    : gains_(l.order()), excluded_(l.order(), 0) {
  for (std::size_t i = 0; i < l.order(); ++i) gains_[i] = l(i, i);
}

std::vector<double> GreedyState::c_row(std::size_t i) const {
  std::vector<double> row(c_columns_.size());
  for (std::size_t t = 0; t < c_columns_.size(); ++t) row[t] = c_columns_[t][i];
  return row;
}

GreedyPick GreedyState::best() const {
  if (!has_candidates()) {
    throw Error(ErrorKind::InvalidArgument, "no unselected candidates remain");
  }
  const std::size_t j = simd::active().argmax(gains_.data(), gains_.size());
  return {j, gains_[j]};
}

GreedyState greedy_init(const SymMatrix& l) { return GreedyState(l); }

GreedyPick greedy_step(GreedyState& state, const SymMatrix& l) {
  const std::size_t n = state.size();
  if (l.order() != n) {
    throw Error(ErrorKind::DimensionMismatch, "state and kernel sizes differ");
  }
  const GreedyPick pick = state.best();
  if (!(pick.gain > kGainFloor)) {
    throw Error::at_index(ErrorKind::DegenerateGain, pick.index,
                          "best remaining gain " + std::to_string(pick.gain) +
                              " is numerically zero");
  }
  const auto& kernels = simd::active();
  const std::size_t j = pick.index;

  std::vector<double> e(l.row(j).begin(), l.row(j).end());
  for (const auto& column : state.c_columns_) {
    kernels.sub_scaled(e.data(), column[j], column.data(), n);
  }
  kernels.divide(e.data(), std::sqrt(pick.gain), n);
  kernels.sub_square_clamp(state.gains_.data(), e.data(), n);

  state.gains_[j] = kNegInf;
  state.excluded_[j] = 1;
  state.selected_.push_back(j);
  state.c_columns_.push_back(std::move(e));
  state.pick_gains_.push_back(pick.gain);
  return pick;
}

std::vector<std::size_t> greedy_map(const SymMatrix& l, std::size_t k) {
  if (k > l.order()) {
    throw Error(ErrorKind::InvalidArgument, "subset size exceeds ground set");
  }
  GreedyState state(l);
  for (std::size_t t = 0; t < k; ++t) greedy_step(state, l);
  return {state.selected().begin(), state.selected().end()};
}

SampleResult sample_mask(const SymMatrix& l, std::size_t k, double tau, Rng& rng) {
  const std::size_t n = l.order();
  if (k == 0 || k > n) {
    throw Error(ErrorKind::InvalidArgument,
                "visible count " + std::to_string(k) + " not in [1, " + std::to_string(n) + "]");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "purge ratio must lie in [0, 1]");
  }

  SampleResult result;
  result.visible.reserve(k);
  std::vector<std::uint8_t> taken(n, 0);

  if (tau < 1.0) {
    GreedyState state(l);
    while (result.visible.size() < k) {
      const GreedyPick best = state.best();
      if (!(best.gain >= tau && best.gain > kGainFloor)) {
        result.aborted_at_gain = best.gain;
        break;
      }
      const GreedyPick pick = greedy_step(state, l);
      result.visible.push_back(pick.index);
      result.gain_trace.push_back(pick.gain);
      taken[pick.index] = 1;
    }
    result.greedy_count = result.visible.size();
  }

  if (result.visible.size() < k) {
    std::vector<std::size_t> pool;
    pool.reserve(n - result.visible.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i] == 0) pool.push_back(i);
    }
    const std::size_t remaining = k - result.visible.size();
    for (std::size_t s = 0; s < remaining; ++s) {
      const std::size_t j = s + rng.uniform_index(pool.size() - s);
      std::swap(pool[s], pool[j]);
      result.visible.push_back(pool[s]);
    }
  }
  return result;
}

}  // namespace dppmask
