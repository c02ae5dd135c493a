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

#include "dppmask/cli.hpp"

#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dppmask/error.hpp"
#include "dppmask/io.hpp"
#include "dppmask/simd.hpp"
#include "dppmask/version.hpp"

namespace dppmask::cli {

MaskConfig MaskFlags::to_config() const {
  MaskConfig config;
  config.mask_ratio = mask_ratio;
  config.tau = tau;
  config.epsilon = epsilon;
  config.patch_size = patch_size;
  config.seed = seed;
  config.position_weight = position_weight;
  if (const auto m = forced_mode()) config.mode = *m;
  validate(config);
  return config;
}

std::optional<FeatureMode> MaskFlags::forced_mode() const {
  if (mode.empty()) return std::nullopt;
  return parse_feature_mode(mode);
}

LoadedInput load_input(const std::filesystem::path& path, const MaskConfig& config,
                       std::optional<FeatureMode> forced) {
  const auto bytes = io::read_file(path);
  const io::InputKind kind = io::sniff(bytes);
  FeatureMode mode;
  if (kind == io::InputKind::Image) {
    mode = FeatureMode::Pixel;
  } else if (kind == io::InputKind::Features) {
    mode = FeatureMode::Feature;
  } else {
    throw Error(ErrorKind::UnsupportedFormat, "neither a P5/P6 image nor a DPPF feature file");
  }
  if (forced && *forced != mode) {
    throw Error(ErrorKind::InvalidArgument,
                "--mode " + std::string(to_string(*forced)) + " given but the file holds " +
                    (mode == FeatureMode::Pixel ? "an image" : "features"));
  }

  LoadedInput input;
  input.mode = mode;
  if (mode == FeatureMode::Pixel) {
    input.image = io::parse_netpbm(bytes);
    PatchedImage patched = patchify(*input.image, config.patch_size);
    input.grid = patched.grid;
    input.features = append_positions(patched.grid, patched.features, config.position_weight);
  } else {
    input.features = io::parse_features(bytes);
    input.grid = PatchGrid::linear(input.features.count());
  }
  return input;
}

namespace {

void add_mask_flags(CLI::App& cmd, MaskFlags& flags) {
  cmd.add_option("--mask-ratio", flags.mask_ratio, "Fraction of patches to hide, in [0, 1)")
      ->capture_default_str();
  cmd.add_option("--tau", flags.tau, "Purge ratio in [0, 1]; 0 = fully greedy, 1 = random")
      ->capture_default_str();
  cmd.add_option("--epsilon", flags.epsilon, "Gaussian kernel bandwidth")->capture_default_str();
  cmd.add_option("--patch-size", flags.patch_size, "Patch side in pixels")->capture_default_str();
  cmd.add_option("--seed", flags.seed, "Random seed")->capture_default_str();
  cmd.add_option("--mode", flags.mode, "Input kind; inferred from each file when omitted")
      ->check(CLI::IsMember({"pixel", "feature"}));
  cmd.add_option("--position-weight", flags.position_weight,
                 "Weight of grid coordinates appended to pixel features")
      ->capture_default_str();
}

simd::Backend parse_backend(const std::string& name) {
  if (name == "scalar") return simd::Backend::Scalar;
  if (name == "avx2") return simd::Backend::Avx2;
  return simd::default_backend();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diverse patch masks for masked image modeling", "dppmask"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string backend;
  app.add_option("--simd", backend, "Kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  MaskArgs mask_args;
  auto* mask = app.add_subcommand("mask", "Write one mask document per input");
  mask->add_option("inputs", mask_args.inputs, "PGM/PPM images or DPPF feature files")
      ->required();
  add_mask_flags(*mask, mask_args.flags);
  mask->add_flag("--overlay", mask_args.overlay, "Also write a gray-masked copy of each image");
  mask->add_option("--out-dir", mask_args.out_dir, "Output directory")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the randomized identity checks");
  verify->add_option("--trials", verify_args.trials, "Instances per property")
      ->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "Random seed")->capture_default_str();
#if defined(DPPMASK_FAULT_INJECTION)
  verify->add_flag("--corrupt-update", verify_args.corrupt_update)->group("");
#endif

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Mask diversity statistics across purge ratios");
  stats->add_option("inputs", stats_args.inputs, "PGM/PPM images or DPPF feature files")
      ->required();
  add_mask_flags(*stats, stats_args.flags);
  stats->add_option("--tau-list", stats_args.tau_list, "Comma-separated purge ratios")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  stats->add_option("--trials", stats_args.trials, "Masks drawn per purge ratio")
      ->capture_default_str();
  stats->add_option("--out", stats_args.out, "Write the report here instead of stdout");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time mask generation");
  bench->add_option("--trials", bench_args.trials, "Timed repetitions per case")
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Random seed")->capture_default_str();
  bench->add_option("--dim", bench_args.dim, "Feature dimension")->capture_default_str();
  bench->add_option("--out", bench_args.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  // Scoped so in-process callers get their previous backend back.
  const simd::ScopedBackend scoped(parse_backend(backend));
  if (!scoped.ok()) {
    err << "error: SIMD backend '" << backend << "' is not available on this machine\n";
    return kExitUsage;
  }

  try {
    if (*mask) return cmd_mask(mask_args, out, err);
    if (*verify) return cmd_verify(verify_args, out, err);
    if (*stats) return cmd_stats(stats_args, out, err);
    if (*bench) return cmd_bench(bench_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dppmask::cli
