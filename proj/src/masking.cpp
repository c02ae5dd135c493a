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

#include "dppmask/masking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "dppmask/dpp.hpp"

namespace dppmask {

std::string_view to_string(FeatureMode mode) noexcept {
  return mode == FeatureMode::Pixel ? "pixel" : "feature";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view text) noexcept {
  if (text == "pixel") return FeatureMode::Pixel;
  if (text == "feature") return FeatureMode::Feature;
  return std::nullopt;
}

PatchGrid PatchGrid::linear(std::size_t count) {
  PatchGrid grid;
  grid.rows = 1;
  grid.cols = count;
  return grid;
}

void validate(const MaskConfig& config) {
  auto fail = [](const char* field, const std::string& why) {
    throw Error::at_field(ErrorKind::InvalidArgument, field, why);
  };
  if (!(config.mask_ratio >= 0.0 && config.mask_ratio < 1.0)) {
    fail("mask_ratio", "must lie in [0, 1)");
  }
  if (!(config.tau >= 0.0 && config.tau <= 1.0)) fail("tau", "must lie in [0, 1]");
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    fail("epsilon", "must be positive and finite");
  }
  if (config.patch_size == 0) fail("patch_size", "must be at least 1");
  if (!(config.position_weight >= 0.0) || !std::isfinite(config.position_weight)) {
    fail("position_weight", "must be non-negative and finite");
  }
  if (!(config.ratio_jitter >= 0.0 && config.ratio_jitter < 1.0)) {
    fail("ratio_jitter", "must lie in [0, 1)");
  }
}

std::size_t visible_count(double mask_ratio, std::size_t n) noexcept {
  return static_cast<std::size_t>(std::floor((1.0 - mask_ratio) * static_cast<double>(n) + 0.5));
}

PatchedImage patchify(const Image& image, std::size_t patch_size) {
  if (patch_size == 0) {
    throw Error::at_field(ErrorKind::InvalidArgument, "patch_size", "must be at least 1");
  }
  if (image.height == 0 || image.width == 0 ||
      image.pixels.size() != image.height * image.width * image.channels) {
    throw Error(ErrorKind::DimensionMismatch, "image buffer does not match its dimensions");
  }
  const std::size_t pad_h = (patch_size - image.height % patch_size) % patch_size;
  const std::size_t pad_w = (patch_size - image.width % patch_size) % patch_size;
  if (pad_h != 0 || pad_w != 0) {
    throw Error(ErrorKind::NonDivisibleImage,
                std::to_string(image.height) + "x" + std::to_string(image.width) +
                    " image does not tile into " + std::to_string(patch_size) +
                    "-pixel patches; needs " + std::to_string(pad_h) + " more rows and " +
                    std::to_string(pad_w) + " more columns");
  }

  PatchGrid grid;
  grid.image_height = image.height;
  grid.image_width = image.width;
  grid.patch_size = patch_size;
  grid.rows = image.height / patch_size;
  grid.cols = image.width / patch_size;
  grid.channels = image.channels;

  const std::size_t row_len = patch_size * image.channels;
  const std::size_t dim = patch_size * row_len;
  std::vector<double> values(grid.count() * dim);
  for (std::size_t pr = 0; pr < grid.rows; ++pr) {
    for (std::size_t pc = 0; pc < grid.cols; ++pc) {
      double* out = values.data() + (pr * grid.cols + pc) * dim;
      for (std::size_t y = 0; y < patch_size; ++y) {
        const std::uint8_t* src =
            &image.pixels[((pr * patch_size + y) * image.width + pc * patch_size) * image.channels];
        for (std::size_t k = 0; k < row_len; ++k) out[y * row_len + k] = src[k] / 255.0;
      }
    }
  }
  return {grid, FeatureMatrix(grid.count(), dim, std::move(values))};
}

FeatureMatrix append_positions(const PatchGrid& grid, const FeatureMatrix& features,
                               double weight) {
  if (weight == 0.0) return features;
  if (features.count() != grid.count()) {
    throw Error(ErrorKind::DimensionMismatch, "feature rows do not match the grid");
  }
  const std::size_t dim = features.dim() + 2;
  std::vector<double> values(features.count() * dim);
  const double row_scale = grid.rows > 1 ? 1.0 / static_cast<double>(grid.rows - 1) : 0.0;
  const double col_scale = grid.cols > 1 ? 1.0 / static_cast<double>(grid.cols - 1) : 0.0;
  for (std::size_t i = 0; i < features.count(); ++i) {
    const auto src = features.row(i);
    double* out = values.data() + i * dim;
    std::copy(src.begin(), src.end(), out);
    out[dim - 2] = weight * static_cast<double>(i / grid.cols) * row_scale;
    out[dim - 1] = weight * static_cast<double>(i % grid.cols) * col_scale;
  }
  return FeatureMatrix(features.count(), dim, std::move(values));
}

MaskResult generate_mask(const FeatureMatrix& features, const PatchGrid& grid,
                         const MaskConfig& config, Rng& rng) {
  validate(config);
  const std::size_t n = features.count();
  if (grid.count() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "grid has " + std::to_string(grid.count()) + " patches but features have " +
                    std::to_string(n) + " rows");
  }
  const std::size_t k = visible_count(config.mask_ratio, n);
  if (k == 0) {
    throw Error::at_field(ErrorKind::InvalidArgument, "mask_ratio",
                          "leaves no visible patch out of " + std::to_string(n));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  const LEnsemble kernel = normalized_gaussian_kernel(features, order, config.epsilon);
  SampleResult sample = sample_mask(kernel.matrix, k, config.tau, rng);

  MaskResult result;
  result.grid = grid;
  result.config = config;
  result.greedy_count = sample.greedy_count;
  result.gain_trace = std::move(sample.gain_trace);
  result.visible.reserve(k);
  std::vector<std::uint8_t> is_visible(n, 0);
  for (std::size_t pos : sample.visible) {
    result.visible.push_back(order[pos]);
    is_visible[order[pos]] = 1;
  }
  std::sort(result.visible.begin(), result.visible.end());
  result.masked.reserve(n - k);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_visible[i] == 0) result.masked.push_back(i);
  }
  return result;
}

MaskResult generate_mask(const FeatureMatrix& features, const PatchGrid& grid,
                         const MaskConfig& config) {
  Rng rng(config.seed);
  return generate_mask(features, grid, config, rng);
}

MaskResult generate_mask(const FeatureMatrix& features, const MaskConfig& config) {
  return generate_mask(features, PatchGrid::linear(features.count()), config);
}

MaskResult mask_image(const Image& image, const MaskConfig& config) {
  validate(config);
  const PatchedImage patched = patchify(image, config.patch_size);
  const FeatureMatrix features =
      append_positions(patched.grid, patched.features, config.position_weight);
  MaskConfig echo = config;
  echo.mode = FeatureMode::Pixel;
  return generate_mask(features, patched.grid, echo);
}

std::size_t Bitmap::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

Bitmap mask_to_bitmap(const MaskResult& result) {
  Bitmap bitmap{result.grid.rows, result.grid.cols,
                std::vector<std::uint8_t>(result.grid.count(), 0)};
  for (std::size_t i : result.visible) bitmap.cells.at(i) = 1;
  return bitmap;
}

std::vector<std::size_t> bitmap_to_indices(const Bitmap& bitmap) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bitmap.cells.size(); ++i) {
    if (bitmap.cells[i] != 0) out.push_back(i);
  }
  return out;
}

namespace {

BatchOutcome run_batch_item(const FeatureMatrix& features, const MaskConfig& config,
                            std::size_t index) {
  BatchOutcome outcome;
  try {
    Rng rng = derive_stream(config.seed, index);
    MaskConfig item = config;
    if (config.ratio_jitter > 0.0) {
      const double u = 2.0 * rng.uniform_real() - 1.0;
      item.mask_ratio = std::clamp(config.mask_ratio + config.ratio_jitter * u, 0.0,
                                   std::nextafter(1.0, 0.0));
    }
    outcome.result = generate_mask(features, PatchGrid::linear(features.count()), item, rng);
  } catch (const Error& e) {
    outcome.error = e;
  }
  return outcome;
}

}  // namespace

std::vector<BatchOutcome> batch_masks(std::span<const FeatureMatrix> feature_sets,
                                      const MaskConfig& config, BatchOptions options) {
  std::vector<BatchOutcome> out(feature_sets.size());
  if (feature_sets.empty()) return out;

  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, feature_sets.size());

  if (threads == 1) {
    for (std::size_t i = 0; i < feature_sets.size(); ++i) {
      out[i] = run_batch_item(feature_sets[i], config, i);
    }
    return out;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < feature_sets.size(); i = next++) {
          out[i] = run_batch_item(feature_sets[i], config, i);
        }
      });
    }
  }
  return out;
}

}  // namespace dppmask
