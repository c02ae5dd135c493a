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

#include "dppmask/error.hpp"

#include <utility>

namespace dppmask {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidBandwidth: return "InvalidBandwidth";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::DegenerateGain: return "DegenerateGain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonDivisibleImage: return "NonDivisibleImage";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::TruncatedPayload: return "TruncatedPayload";
    case ErrorKind::TrailingBytes: return "TrailingBytes";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::VersionUnsupported: return "VersionUnsupported";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

Error Error::at_index(ErrorKind kind, std::size_t index,
                      const std::string& message) {
  Error e(kind, message);
  e.index_ = index;
  return e;
}

Error Error::at_offset(ErrorKind kind, std::size_t offset,
                       const std::string& message) {
  Error e(kind, message + " (at byte " + std::to_string(offset) + ")");
  e.offset_ = offset;
  return e;
}

Error Error::at_field(ErrorKind kind, std::string field,
                      const std::string& message) {
  Error e(kind, field + ": " + message);
  e.field_ = std::move(field);
  return e;
}

}  // namespace dppmask
