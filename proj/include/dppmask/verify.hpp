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
#include <string>
#include <vector>

#include "dppmask/kernel.hpp"
#include "dppmask/rng.hpp"

namespace dppmask::verify {

// N rows of i.i.d. standard normal entries.
FeatureMatrix random_features(Rng& rng, std::size_t count, std::size_t dim);

// Greedy MAP recomputed from scratch: every candidate's gain is the last
// squared pivot of a fresh Cholesky of L_{Y + i}. O(N k^4); reference only.
std::vector<std::size_t> naive_greedy(const SymMatrix& l, std::size_t k);

struct Options {
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  // Reports each gain as if the latest Cholesky update had skipped its
  // d^2 -= e^2 step, which the determinant-identity suite must catch.
  bool corrupt_update = false;
};

struct PropertyReport {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
};

// Sum of det(L_A) over all subsets against det(L + I), N in [2, 12].
PropertyReport check_normalization(const Options& options);
// det(L_{Y+i}) == det(L_Y) * d_i^2 for every candidate at every greedy step
// (N = 50, k = 25), compared in the log domain.
PropertyReport check_determinant_identity(const Options& options);
// Incremental greedy against naive_greedy, N in [10, 50].
PropertyReport check_greedy_consistency(const Options& options);

std::vector<PropertyReport> run_all(const Options& options);

}  // namespace dppmask::verify
