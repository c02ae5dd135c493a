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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dppmask {

enum class ErrorKind {
  // numerics
  NotPositiveDefinite,
  NotSymmetric,
  NonFiniteValue,
  IndexOutOfRange,
  DimensionMismatch,
  // kernel
  InvalidBandwidth,
  // dpp-core
  InstanceTooLarge,
  DegenerateGain,
  InvalidArgument,
  // masking
  NonDivisibleImage,
  // io
  UnsupportedFormat,
  MalformedHeader,
  TruncatedPayload,
  TrailingBytes,
  BadMagic,
  VersionUnsupported,
  SchemaViolation,
  IoFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library. The kind is the stable part of the
// contract; the message is for humans. Optional payloads carry the detail a
// caller may act on (failing pivot, byte offset, JSON field path).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

  std::optional<std::size_t> index() const noexcept { return index_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }
  const std::string& field() const noexcept { return field_; }

  static Error at_index(ErrorKind kind, std::size_t index,
                        const std::string& message);
  static Error at_offset(ErrorKind kind, std::size_t offset,
                         const std::string& message);
  static Error at_field(ErrorKind kind, std::string field,
                        const std::string& message);

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
  std::optional<std::size_t> offset_;
  std::string field_;
};

}  // namespace dppmask
