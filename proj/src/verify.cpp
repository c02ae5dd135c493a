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

#include "dppmask/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dppmask/dpp.hpp"
#include "dppmask/error.hpp"

namespace dppmask::verify {

namespace {

constexpr double kNormalizationTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-8;

LEnsemble random_kernel(Rng& rng, std::size_t n, std::size_t dim) {
  return gaussian_kernel(normalize_rows(random_features(rng, n, dim)));
}

}  // namespace

FeatureMatrix random_features(Rng& rng, std::size_t count, std::size_t dim) {
  std::vector<double> values(count * dim);
  for (double& v : values) v = rng.normal();
  return FeatureMatrix(count, dim, std::move(values));
}

std::vector<std::size_t> naive_greedy(const SymMatrix& l, std::size_t k) {
  const std::size_t n = l.order();
  std::vector<std::size_t> selected;
  std::vector<bool> taken(n, false);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = n;
    double best_gain = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> trial = selected;
    trial.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      trial.back() = i;
      double gain = 0.0;
      try {
        const CholeskyFactor f = cholesky(submatrix(l, trial));
        const double last = f(step, step);
        gain = last * last;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == n) break;
    selected.push_back(best);
    taken[best] = true;
  }
  return selected;
}

PropertyReport check_normalization(const Options& options) {
  PropertyReport report{"normalization", true, 0, 0.0, kNormalizationTolerance};
  Rng rng = derive_stream(options.seed, 1);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t n = 2 + rng.uniform_index(11);
    const LEnsemble kernel = random_kernel(rng, n, 2 + rng.uniform_index(7));
    double total = 0.0;
    std::vector<std::size_t> subset;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      subset.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
      }
      total += determinant(submatrix(kernel.matrix, subset));
    }
    const double z = normalization_constant(kernel.matrix);
    const double err = std::fabs(total - z) / z;
    report.max_error = std::max(report.max_error, err);
    ++report.cases;
  }
  report.passed = report.max_error <= report.tolerance;
  return report;
}

PropertyReport check_determinant_identity(const Options& options) {
  PropertyReport report{"determinant_identity", true, 0, 0.0, kIdentityTolerance};
  Rng rng = derive_stream(options.seed, 2);
  constexpr std::size_t kN = 50;
  constexpr std::size_t kK = 25;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const LEnsemble kernel = random_kernel(rng, kN, 16);
    const SymMatrix& l = kernel.matrix;
    GreedyState state = greedy_init(l);
    for (std::size_t step = 0; step <= kK && state.has_candidates(); ++step) {
      const std::vector<std::size_t> base(state.selected().begin(), state.selected().end());
      const double base_log_det = log_det(submatrix(l, base));
      std::vector<std::size_t> extended = base;
      extended.push_back(0);
      for (std::size_t i = 0; i < kN; ++i) {
        if (state.excluded(i)) continue;
        double gain = state.gain(i);
        if (options.corrupt_update && !base.empty()) {
          const double e = state.c_row(i).back();
          gain += e * e;
        }
        extended.back() = i;
        const double direct = log_det(submatrix(l, extended));
        const double err = std::fabs(direct - (base_log_det + std::log(gain)));
        report.max_error = std::max(report.max_error, err);
        ++report.cases;
      }
      if (step < kK) greedy_step(state, l);
    }
  }
  report.passed = report.max_error <= report.tolerance;
  return report;
}

PropertyReport check_greedy_consistency(const Options& options) {
  PropertyReport report{"greedy_consistency", true, 0, 0.0, 0.0};
  Rng rng = derive_stream(options.seed, 3);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t n = 10 + rng.uniform_index(41);
    const LEnsemble kernel = random_kernel(rng, n, 8);
    const std::size_t k = n / 2;
    const auto fast = greedy_map(kernel.matrix, k);
    const auto slow = naive_greedy(kernel.matrix, k);
    std::size_t mismatches = 0;
    for (std::size_t s = 0; s < k; ++s) {
      if (s >= slow.size() || fast[s] != slow[s]) ++mismatches;
    }
    report.max_error = std::max(report.max_error, static_cast<double>(mismatches));
    ++report.cases;
  }
  report.passed = report.max_error <= report.tolerance;
  return report;
}

std::vector<PropertyReport> run_all(const Options& options) {
  return {check_normalization(options), check_determinant_identity(options),
          check_greedy_consistency(options)};
}

}  // namespace dppmask::verify
