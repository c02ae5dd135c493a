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

#include <system_error>

#include "commands.hpp"
#include "dppmask/cli.hpp"
#include "dppmask/error.hpp"
#include "dppmask/io.hpp"

namespace dppmask::cli {

int cmd_mask(const MaskArgs& args, std::ostream& out, std::ostream& err) {
  MaskConfig config;
  try {
    config = args.flags.to_config();
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << args.out_dir.string() << ": " << ec.message() << "\n";
    return kExitFailure;
  }

  std::size_t failures = 0;
  for (const auto& name : args.inputs) {
    const std::filesystem::path path(name);
    try {
      const LoadedInput input = load_input(path, config, args.flags.forced_mode());
      MaskConfig item = config;
      item.mode = input.mode;
      const MaskResult result = generate_mask(input.features, input.grid, item);

      const std::string stem = path.stem().string();
      const auto doc_path = args.out_dir / (stem + ".mask.json");
      io::write_mask(doc_path, io::to_document(result));
      out << name << " -> " << doc_path.string() << " (" << result.visible.size()
          << " visible, " << result.greedy_count << " greedy)\n";

      if (args.overlay) {
        if (input.image) {
          const auto overlay_path =
              args.out_dir / (stem + (input.image->channels == 1 ? ".overlay.pgm" : ".overlay.ppm"));
          io::write_overlay(*input.image, result, overlay_path);
          out << name << " -> " << overlay_path.string() << "\n";
        } else {
          err << "warning: " << name << ": no overlay for feature input\n";
        }
      }
    } catch (const Error& e) {
      err << "error: " << name << ": " << e.what() << "\n";
      ++failures;
    }
  }
  if (failures > 0) {
    err << failures << " of " << args.inputs.size() << " inputs failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dppmask::cli
