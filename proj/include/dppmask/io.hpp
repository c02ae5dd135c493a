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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dppmask/image.hpp"
#include "dppmask/kernel.hpp"
#include "dppmask/masking.hpp"

namespace dppmask::io {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames, so readers never observe a
// partial file.
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// ---- Binary PGM (P5) / PPM (P6), maxval 255 --------------------------------

// Comment lines (# ...) are allowed anywhere whitespace is. Errors:
// UnsupportedFormat, MalformedHeader (with byte offset), TruncatedPayload,
// TrailingBytes.
Image parse_netpbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_netpbm(const Image& image);

Image read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Image& image);

inline constexpr std::uint8_t kOverlayGray = 128;

// Masked patches painted mid-gray on every channel; visible ones untouched.
// Throws DimensionMismatch if the image does not match result.grid.
Image render_overlay(const Image& image, const MaskResult& result);
void write_overlay(const Image& image, const MaskResult& result,
                   const std::filesystem::path& path);

// ---- Feature files ----------------------------------------------------------
//
//   offset 0   "DPPF"
//   offset 4   u32 version (= 1)
//   offset 8   u32 rows
//   offset 12  u32 cols
//   offset 16  rows * cols little-endian binary64, row-major

inline constexpr std::uint32_t kFeatureFileVersion = 1;

FeatureMatrix parse_features(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_features(const FeatureMatrix& features);

FeatureMatrix read_features(const std::filesystem::path& path);
void write_features(const std::filesystem::path& path, const FeatureMatrix& features);

// ---- Mask documents ---------------------------------------------------------

inline constexpr std::int64_t kMaskSchemaVersion = 1;

struct MaskDocument {
  std::int64_t schema_version = kMaskSchemaVersion;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t patch_size = 0;
  double mask_ratio = 0.0;
  double tau = 0.0;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  FeatureMode mode = FeatureMode::Pixel;
  std::vector<std::size_t> visible;
  std::size_t greedy_count = 0;

  friend bool operator==(const MaskDocument&, const MaskDocument&) = default;
};

MaskDocument to_document(const MaskResult& result);

// Compact JSON with keys in sorted order and no whitespace.
std::string serialize_mask(const MaskDocument& doc);
// Throws SchemaViolation whose field() is the offending path, e.g.
// "visible[3]" or "config.tau".
MaskDocument parse_mask(std::string_view text);

MaskDocument read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const MaskDocument& doc);

// Which reader a file belongs to, judged by its leading bytes.
enum class InputKind { Image, Features, Unknown };
InputKind sniff(std::span<const std::uint8_t> bytes) noexcept;

}  // namespace dppmask::io
