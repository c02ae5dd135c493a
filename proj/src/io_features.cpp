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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "dppmask/error.hpp"
#include "dppmask/io.hpp"

namespace dppmask::io {

namespace {

constexpr std::size_t kHeaderSize = 16;
constexpr char kMagic[4] = {'D', 'P', 'P', 'F'};

std::uint32_t load_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

double load_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void store_f64(std::uint8_t* p, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(bits >> (8 * i));
}

}  // namespace

FeatureMatrix parse_features(std::span<const std::uint8_t> bytes) {
  const std::size_t magic_len = std::min<std::size_t>(bytes.size(), 4);
  if (bytes.empty() || std::memcmp(bytes.data(), kMagic, magic_len) != 0) {
    throw Error::at_offset(ErrorKind::BadMagic, 0, "missing DPPF magic");
  }
  if (bytes.size() < kHeaderSize) {
    throw Error::at_offset(ErrorKind::TruncatedPayload, bytes.size(), "header is incomplete");
  }
  const std::uint32_t version = load_u32(bytes.data() + 4);
  if (version != kFeatureFileVersion) {
    throw Error::at_offset(ErrorKind::VersionUnsupported, 4,
                           "version " + std::to_string(version) + " is not supported");
  }
  const std::uint64_t rows = load_u32(bytes.data() + 8);
  const std::uint64_t cols = load_u32(bytes.data() + 12);
  if (rows == 0 || cols == 0) {
    throw Error::at_offset(ErrorKind::MalformedHeader, rows == 0 ? 8 : 12,
                           "feature matrix dimensions must be positive");
  }
  // rows * cols < 2^64, but the byte count may not be; compare in elements.
  const std::uint64_t count = rows * cols;
  const std::uint64_t available = (bytes.size() - kHeaderSize) / 8;
  const bool ragged = (bytes.size() - kHeaderSize) % 8 != 0;
  if (available < count) {
    throw Error::at_offset(ErrorKind::TruncatedPayload, bytes.size(),
                           "payload holds " + std::to_string(available) + " of " +
                               std::to_string(count) + " values");
  }
  if (available > count || ragged) {
    throw Error::at_offset(ErrorKind::TrailingBytes, kHeaderSize + count * 8,
                           "bytes after the payload");
  }

  std::vector<double> values(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    values[k] = load_f64(bytes.data() + kHeaderSize + k * 8);
    if (!std::isfinite(values[k])) {
      throw Error::at_offset(ErrorKind::NonFiniteValue, kHeaderSize + k * 8,
                             "value " + std::to_string(k) + " is not finite");
    }
  }
  return FeatureMatrix(rows, cols, std::move(values));
}

std::vector<std::uint8_t> encode_features(const FeatureMatrix& features) {
  constexpr std::uint64_t kU32Max = 0xffffffffu;
  if (features.count() > kU32Max || features.dim() > kU32Max) {
    throw Error(ErrorKind::DimensionMismatch, "feature matrix too large for the file format");
  }
  std::vector<std::uint8_t> out(kHeaderSize + features.values().size() * 8);
  std::memcpy(out.data(), kMagic, 4);
  store_u32(out.data() + 4, kFeatureFileVersion);
  store_u32(out.data() + 8, static_cast<std::uint32_t>(features.count()));
  store_u32(out.data() + 12, static_cast<std::uint32_t>(features.dim()));
  const auto values = features.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    store_f64(out.data() + kHeaderSize + k * 8, values[k]);
  }
  return out;
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  return parse_features(read_file(path));
}

void write_features(const std::filesystem::path& path, const FeatureMatrix& features) {
  write_file(path, encode_features(features));
}

}  // namespace dppmask::io
