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

#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "dppmask/error.hpp"
#include "dppmask/io.hpp"

namespace dppmask::io {

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  // Skips whitespace and comments; at least one separator byte is required.
  void separator() {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) {
      throw Error::at_offset(ErrorKind::MalformedHeader, pos_, "expected whitespace");
    }
    if (pos_ == bytes_.size()) {
      throw Error::at_offset(ErrorKind::MalformedHeader, pos_, "header ends early");
    }
  }

  std::uint64_t number(const char* what) {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > kMaxField) {
        throw Error::at_offset(ErrorKind::MalformedHeader, start,
                               std::string(what) + " is too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw Error::at_offset(ErrorKind::MalformedHeader, start,
                             std::string("expected ") + what);
    }
    return value;
  }

 private:
  static constexpr std::uint64_t kMaxField = 1u << 24;
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Image parse_netpbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error::at_offset(ErrorKind::UnsupportedFormat, 0, "not a netpbm file");
  }
  std::size_t channels = 0;
  if (bytes[1] == '5') {
    channels = 1;
  } else if (bytes[1] == '6') {
    channels = 3;
  } else {
    throw Error::at_offset(ErrorKind::UnsupportedFormat, 1,
                           "only binary P5 and P6 are supported");
  }

  HeaderReader header(bytes);
  header.separator();
  const std::uint64_t width = header.number("width");
  header.separator();
  const std::uint64_t height = header.number("height");
  header.separator();
  const std::size_t maxval_at = header.pos();
  const std::uint64_t maxval = header.number("maxval");
  if (width == 0 || height == 0) {
    throw Error::at_offset(ErrorKind::MalformedHeader, 3, "zero image dimension");
  }
  if (maxval == 0 || maxval > 65535) {
    throw Error::at_offset(ErrorKind::MalformedHeader, maxval_at, "maxval out of range");
  }
  if (maxval != 255) {
    throw Error::at_offset(ErrorKind::UnsupportedFormat, maxval_at,
                           "maxval " + std::to_string(maxval) + " is not 255");
  }
  std::size_t pos = header.pos();
  if (pos >= bytes.size() || !is_space(bytes[pos])) {
    throw Error::at_offset(ErrorKind::MalformedHeader, pos,
                           "expected a single whitespace byte after maxval");
  }
  ++pos;

  // width, height <= 2^24 each, so the product fits in 64 bits.
  const std::uint64_t payload = width * height * channels;
  const std::uint64_t available = bytes.size() - pos;
  if (available < payload) {
    throw Error::at_offset(ErrorKind::TruncatedPayload, bytes.size(),
                           "payload needs " + std::to_string(payload) + " bytes, file has " +
                               std::to_string(available));
  }
  if (available > payload) {
    throw Error::at_offset(ErrorKind::TrailingBytes, pos + payload,
                           std::to_string(available - payload) + " bytes after the payload");
  }

  Image image;
  image.height = height;
  image.width = width;
  image.channels = channels;
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return image;
}

std::vector<std::uint8_t> encode_netpbm(const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw Error(ErrorKind::UnsupportedFormat, "netpbm images have 1 or 3 channels");
  }
  if (image.pixels.size() != image.height * image.width * image.channels ||
      image.height == 0 || image.width == 0) {
    throw Error(ErrorKind::DimensionMismatch, "image buffer does not match its dimensions");
  }
  const std::string header = std::string(image.channels == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

Image read_image(const std::filesystem::path& path) { return parse_netpbm(read_file(path)); }

void write_image(const std::filesystem::path& path, const Image& image) {
  write_file(path, encode_netpbm(image));
}

Image render_overlay(const Image& image, const MaskResult& result) {
  const PatchGrid& grid = result.grid;
  if (grid.patch_size == 0 || image.height != grid.image_height ||
      image.width != grid.image_width || image.channels != grid.channels ||
      image.pixels.size() != image.height * image.width * image.channels) {
    throw Error(ErrorKind::DimensionMismatch,
                "image " + std::to_string(image.height) + "x" + std::to_string(image.width) +
                    "x" + std::to_string(image.channels) + " does not match the mask grid");
  }
  Image out = image;
  const std::size_t p = grid.patch_size;
  for (std::size_t index : result.masked) {
    const std::size_t r = index / grid.cols;
    const std::size_t c = index % grid.cols;
    for (std::size_t y = r * p; y < (r + 1) * p; ++y) {
      for (std::size_t x = c * p; x < (c + 1) * p; ++x) {
        for (std::size_t ch = 0; ch < out.channels; ++ch) out.at(y, x, ch) = kOverlayGray;
      }
    }
  }
  return out;
}

void write_overlay(const Image& image, const MaskResult& result,
                   const std::filesystem::path& path) {
  write_image(path, render_overlay(image, result));
}

}  // namespace dppmask::io
