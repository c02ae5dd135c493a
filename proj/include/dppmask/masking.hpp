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
#include <string_view>
#include <vector>

#include "dppmask/error.hpp"
#include "dppmask/image.hpp"
#include "dppmask/kernel.hpp"
#include "dppmask/rng.hpp"

namespace dppmask {

enum class FeatureMode { Pixel, Feature };

std::string_view to_string(FeatureMode mode) noexcept;
std::optional<FeatureMode> parse_feature_mode(std::string_view text) noexcept;

// Patch tiling of an image. Feature-mode inputs have no image behind them and
// use a 1 x N grid with zero pixel dimensions.
struct PatchGrid {
  std::size_t image_height = 0;
  std::size_t image_width = 0;
  std::size_t patch_size = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t channels = 0;

  std::size_t count() const noexcept { return rows * cols; }

  static PatchGrid linear(std::size_t count);

  friend bool operator==(const PatchGrid&, const PatchGrid&) = default;
};

struct MaskConfig {
  double mask_ratio = 0.75;
  double tau = 0.8;
  double epsilon = kDefaultBandwidth;
  std::size_t patch_size = 16;
  std::uint64_t seed = 0;
  FeatureMode mode = FeatureMode::Pixel;
  // Weight of the two appended grid coordinates; 0 leaves features untouched.
  double position_weight = 0.0;
  // Half-width of the uniform per-item jitter batch_masks applies to
  // mask_ratio; 0 disables it.
  double ratio_jitter = 0.0;

  friend bool operator==(const MaskConfig&, const MaskConfig&) = default;
};

// Throws InvalidArgument naming the offending field.
void validate(const MaskConfig& config);

// round((1 - mask_ratio) * n), halves rounded up.
std::size_t visible_count(double mask_ratio, std::size_t n) noexcept;

struct MaskResult {
  PatchGrid grid;
  std::vector<std::size_t> visible;  // ascending
  std::vector<std::size_t> masked;   // ascending complement of visible
  std::size_t greedy_count = 0;
  std::vector<double> gain_trace;
  MaskConfig config;

  friend bool operator==(const MaskResult&, const MaskResult&) = default;
};

struct PatchedImage {
  PatchGrid grid;
  FeatureMatrix features;
};

// Row i * cols + j of the features is patch (i, j) flattened row-major with
// interleaved channels, scaled to [0, 1]. Throws NonDivisibleImage.
PatchedImage patchify(const Image& image, std::size_t patch_size);

// Appends (weight * row / (rows - 1), weight * col / (cols - 1)) to every
// patch vector. A weight of 0 returns the input unchanged.
FeatureMatrix append_positions(const PatchGrid& grid, const FeatureMatrix& features,
                               double weight);

// normalize -> shuffle -> Gaussian kernel -> threshold sampler -> original
// indices. The stream drives both the shuffle and the random fill.
MaskResult generate_mask(const FeatureMatrix& features, const PatchGrid& grid,
                         const MaskConfig& config, Rng& rng);
// As above with Rng(config.seed).
MaskResult generate_mask(const FeatureMatrix& features, const PatchGrid& grid,
                         const MaskConfig& config);
// Feature mode: a linear grid over the rows of `features`.
MaskResult generate_mask(const FeatureMatrix& features, const MaskConfig& config);

// patchify + optional positions + generate_mask with Rng(config.seed).
MaskResult mask_image(const Image& image, const MaskConfig& config);

struct Bitmap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;  // 1 = visible

  bool at(std::size_t r, std::size_t c) const { return cells[r * cols + c] != 0; }
  std::size_t popcount() const noexcept;

  friend bool operator==(const Bitmap&, const Bitmap&) = default;
};

Bitmap mask_to_bitmap(const MaskResult& result);
std::vector<std::size_t> bitmap_to_indices(const Bitmap& bitmap);

struct BatchOutcome {
  std::optional<MaskResult> result;
  std::optional<Error> error;

  bool ok() const noexcept { return result.has_value(); }
};

struct BatchOptions {
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

// Item i runs on derive_stream(config.seed, i), so results do not depend on
// the thread count. Failures are reported per item.
std::vector<BatchOutcome> batch_masks(std::span<const FeatureMatrix> feature_sets,
                                      const MaskConfig& config,
                                      BatchOptions options = {});

}  // namespace dppmask
