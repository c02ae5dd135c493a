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

#include "dppmask/stats.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "dppmask/error.hpp"

namespace dppmask::stats {

double jaccard_distance(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) return 0.0;
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

double mean_pairwise_jaccard(const std::vector<std::vector<std::size_t>>& sets) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      sum += jaccard_distance(sets[i], sets[j]);
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

double mean_pairwise_similarity(const SymMatrix& l, std::span<const std::size_t> items) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < items.size(); ++a) {
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      sum += l(items[a], items[b]);
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

double subset_log_det(const SymMatrix& l, std::span<const std::size_t> items, double jitter) {
  try {
    return log_det(submatrix(l, items), jitter);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
    return -std::numeric_limits<double>::infinity();
  }
}

Summary summarize(std::span<const double> samples) {
  Summary s;
  s.count = samples.size();
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double sq = 0.0;
    for (double v : samples) sq += (v - s.mean) * (v - s.mean);
    s.variance = sq / static_cast<double>(samples.size() - 1);
  }
  return s;
}

}  // namespace dppmask::stats
