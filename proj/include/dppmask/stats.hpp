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
#include <span>
#include <vector>

#include "dppmask/numerics.hpp"

namespace dppmask::stats {

// 1 - |a ∩ b| / |a ∪ b| for ascending index lists; 0 when both are empty.
double jaccard_distance(std::span<const std::size_t> a, std::span<const std::size_t> b);

// Mean over unordered pairs; 0 with fewer than two sets.
double mean_pairwise_jaccard(const std::vector<std::vector<std::size_t>>& sets);

// Mean off-diagonal L_ij over pairs drawn from `items`; 0 for fewer than two.
double mean_pairwise_similarity(const SymMatrix& l, std::span<const std::size_t> items);

// log det(L_items + jitter I); -infinity if that is still not positive
// definite.
double subset_log_det(const SymMatrix& l, std::span<const std::size_t> items,
                      double jitter);

struct Summary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 for a single sample
  std::size_t count = 0;
};

Summary summarize(std::span<const double> samples);

}  // namespace dppmask::stats
