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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dppmask/masking.hpp"

namespace dppmask::cli {

// Flags shared by mask and stats.
struct MaskFlags {
  double mask_ratio = 0.75;
  double tau = 0.8;
  double epsilon = 1.0;
  std::size_t patch_size = 16;
  std::uint64_t seed = 0;
  std::string mode;  // empty: decide per input from its leading bytes
  double position_weight = 0.0;

  // Throws Error(InvalidArgument) on a bad value.
  MaskConfig to_config() const;
  std::optional<FeatureMode> forced_mode() const;
};

struct MaskArgs {
  std::vector<std::string> inputs;
  MaskFlags flags;
  bool overlay = false;
  std::filesystem::path out_dir = ".";
};

struct VerifyArgs {
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  bool corrupt_update = false;
};

struct StatsArgs {
  std::vector<std::string> inputs;
  MaskFlags flags;
  std::vector<double> tau_list{0.0, 0.6, 0.8, 0.9, 1.0};
  std::size_t trials = 50;
  std::string out;  // empty: stdout
};

struct BenchArgs {
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::size_t dim = 768;
  std::string out;
};

int cmd_mask(const MaskArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

// An input file reduced to what the sampler needs.
struct LoadedInput {
  FeatureMode mode = FeatureMode::Pixel;
  std::optional<Image> image;
  PatchGrid grid;
  FeatureMatrix features;
};

// Reads an image or feature file; images are patchified with the flag's
// patch size and optional position features. Throws Error.
LoadedInput load_input(const std::filesystem::path& path, const MaskConfig& config,
                       std::optional<FeatureMode> forced);

}  // namespace dppmask::cli
