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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dppmask/numerics.hpp"
#include "dppmask/rng.hpp"

namespace dppmask {

// Gains at or below this are treated as numerically zero: the kernel has run
// out of rank on the remaining candidates.
inline constexpr double kGainFloor = 1e-12;

inline constexpr std::uint64_t kDefaultEnumBudget = 10'000'000;

// P(Y = A) = det(L_A) / det(L + I). Throws IndexOutOfRange.
double subset_probability(const SymMatrix& l, std::span<const std::size_t> indices);

// det(L + I), the sum of det(L_A) over all subsets A.
double normalization_constant(const SymMatrix& l);
double log_normalization_constant(const SymMatrix& l);

// DPPMASK_ENUM_BUDGET if set to a positive integer, else kDefaultEnumBudget.
std::uint64_t default_enum_budget();

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

// Exhaustive argmax of det(L_A) over |A| = k. Ties go to the
// lexicographically smallest index list. Throws InstanceTooLarge when
// C(N, k) exceeds `budget`.
std::vector<std::size_t> exact_map(const SymMatrix& l, std::size_t k,
                                   std::uint64_t budget = default_enum_budget());

struct GreedyPick {
  std::size_t index = 0;
  double gain = 0.0;  // squared marginal gain d^2 at selection time
};

// Incremental Cholesky state of greedy MAP inference.
//
// For every unselected item i, c_i is the new row the Cholesky factor of
// L_{Y} would gain if i joined Y, and gain(i) = L_ii - |c_i|^2 is the factor
// by which det(L_Y) would grow. The c rows are stored transposed: step t
// holds the t-th coordinate of every c_i, so one selection updates all
// candidates with contiguous vector operations.
class GreedyState {
 public:
  GreedyState() = default;
  explicit GreedyState(const SymMatrix& l);

  std::size_t size() const noexcept { return gains_.size(); }
  std::span<const std::size_t> selected() const noexcept { return selected_; }
  // Gain for each item; selected items hold -infinity.
  std::span<const double> gains() const noexcept { return gains_; }
  double gain(std::size_t i) const noexcept { return gains_[i]; }
  bool excluded(std::size_t i) const noexcept { return excluded_[i] != 0; }
  bool has_candidates() const noexcept { return selected_.size() < gains_.size(); }

  // c_i, of length selected().size().
  std::vector<double> c_row(std::size_t i) const;

  // d^2 at which each selected item was taken, in selection order.
  std::span<const double> pick_gains() const noexcept { return pick_gains_; }

  // Unselected item with the largest gain, first index on ties.
  GreedyPick best() const;

 private:
  friend GreedyPick greedy_step(GreedyState& state, const SymMatrix& l);

  std::vector<std::size_t> selected_;
  std::vector<double> gains_;
  std::vector<std::uint8_t> excluded_;
  std::vector<std::vector<double>> c_columns_;
  std::vector<double> pick_gains_;
};

// Empty selection, gains = diag(L).
GreedyState greedy_init(const SymMatrix& l);

// Selects the best candidate and updates every c_i and gain in place:
//   e_i = (L_ji - <c_j, c_i>) / d_j,  c_i <- [c_i, e_i],  d_i^2 <- d_i^2 - e_i^2
// Throws DegenerateGain when the best gain is at or below kGainFloor and
// InvalidArgument when nothing is left to select.
GreedyPick greedy_step(GreedyState& state, const SymMatrix& l);

// Plain greedy MAP approximation of size k (no threshold, no randomness).
std::vector<std::size_t> greedy_map(const SymMatrix& l, std::size_t k);

struct SampleResult {
  std::vector<std::size_t> visible;  // selection order
  std::size_t greedy_count = 0;      // visible[0..greedy_count) are greedy
  std::vector<double> gain_trace;    // d^2 of each greedy pick
  std::optional<double> aborted_at_gain;
};

// Greedy selection while the best squared gain is >= tau (and above
// kGainFloor); the first failure switches permanently to uniform draws
// without replacement from the unselected items. tau == 1 skips greedy
// selection entirely. Throws InvalidArgument if k == 0, k > N or tau is
// outside [0, 1].
SampleResult sample_mask(const SymMatrix& l, std::size_t k, double tau, Rng& rng);

}  // namespace dppmask
