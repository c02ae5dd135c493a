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
#include <random>
#include <span>

namespace dppmask {

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the bounded and real draws are implemented here
// rather than through std::*_distribution so results match across standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::size_t uniform_index(std::size_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform_real();

  // Standard normal draw (Box-Muller, one value per call).
  double normal();

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream for item `index` of a batch seeded with `seed`.
Rng derive_stream(std::uint64_t seed, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace dppmask
