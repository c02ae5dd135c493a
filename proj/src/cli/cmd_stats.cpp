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

#include <fstream>

#include "commands.hpp"
#include "dppmask/cli.hpp"
#include "dppmask/error.hpp"
#include "dppmask/io.hpp"
#include "dppmask/stats.hpp"
#include "json.hpp"

namespace dppmask::cli {

namespace {

using nlohmann::json;

// Jitter for the log-det of random fills, which may repeat identical patches.
constexpr double kLogDetJitter = 1e-10;

void put_summary(json& entry, const char* name, const stats::Summary& s) {
  entry[std::string("mean_") + name] = s.mean;
  if (s.count > 1) entry[std::string("var_") + name] = s.variance;
}

json stats_for_input(const LoadedInput& input, const MaskConfig& base,
                     const StatsArgs& args) {
  const LEnsemble kernel = gaussian_kernel(normalize_rows(input.features), base.epsilon);
  json taus = json::array();
  for (double tau : args.tau_list) {
    MaskConfig config = base;
    config.tau = tau;
    config.mode = input.mode;
    validate(config);

    std::vector<std::vector<std::size_t>> sets;
    std::vector<double> greedy, similarity, logdet;
    for (std::size_t t = 0; t < args.trials; ++t) {
      Rng rng = derive_stream(base.seed, t);
      MaskResult r = generate_mask(input.features, input.grid, config, rng);
      greedy.push_back(static_cast<double>(r.greedy_count));
      similarity.push_back(stats::mean_pairwise_similarity(kernel.matrix, r.visible));
      logdet.push_back(stats::subset_log_det(kernel.matrix, r.visible, kLogDetJitter));
      sets.push_back(std::move(r.visible));
    }
    std::vector<double> pairwise;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        pairwise.push_back(stats::jaccard_distance(sets[i], sets[j]));
      }
    }

    json entry;
    entry["tau"] = tau;
    entry["trials"] = args.trials;
    stats::Summary jaccard = stats::summarize(pairwise);
    jaccard.count = sets.size();  // variance only reported with >= 2 draws
    put_summary(entry, "jaccard", jaccard);
    put_summary(entry, "greedy_count", stats::summarize(greedy));
    put_summary(entry, "similarity", stats::summarize(similarity));
    put_summary(entry, "log_det", stats::summarize(logdet));
    taus.push_back(std::move(entry));
  }
  json doc;
  doc["patches"] = input.features.count();
  doc["visible"] = visible_count(base.mask_ratio, input.features.count());
  doc["taus"] = std::move(taus);
  return doc;
}

}  // namespace

int cmd_stats(const StatsArgs& args, std::ostream& out, std::ostream& err) {
  MaskConfig config;
  try {
    config = args.flags.to_config();
    if (args.trials == 0) {
      throw Error::at_field(ErrorKind::InvalidArgument, "trials", "must be at least 1");
    }
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  json report;
  report["schema_version"] = 1;
  report["mask_ratio"] = config.mask_ratio;
  report["epsilon"] = config.epsilon;
  report["seed"] = config.seed;
  json inputs = json::array();
  std::size_t failures = 0;
  for (const auto& name : args.inputs) {
    try {
      const LoadedInput input = load_input(name, config, args.flags.forced_mode());
      json entry = stats_for_input(input, config, args);
      entry["path"] = name;
      inputs.push_back(std::move(entry));
    } catch (const Error& e) {
      err << "error: " << name << ": " << e.what() << "\n";
      ++failures;
    }
  }
  report["inputs"] = std::move(inputs);

  const std::string text = report.dump();
  if (args.out.empty()) {
    out << text << "\n";
  } else {
    io::write_file(args.out,
                   std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace dppmask::cli
