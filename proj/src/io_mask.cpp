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

#include <cmath>
#include <set>
#include <string>

#include "dppmask/error.hpp"
#include "dppmask/io.hpp"
#include "json.hpp"

namespace dppmask::io {

namespace {

using nlohmann::json;

[[noreturn]] void violation(const std::string& field, const std::string& why) {
  throw Error::at_field(ErrorKind::SchemaViolation, field, why);
}

void expect_keys(const json& object, const std::string& path,
                 const std::set<std::string>& keys) {
  if (!object.is_object()) violation(path.empty() ? "$" : path, "expected an object");
  const std::string prefix = path.empty() ? "" : path + ".";
  for (const auto& [key, value] : object.items()) {
    if (keys.count(key) == 0) violation(prefix + key, "unknown field");
  }
  for (const auto& key : keys) {
    if (!object.contains(key)) violation(prefix + key, "missing field");
  }
}

std::uint64_t get_unsigned(const json& value, const std::string& path) {
  if (!value.is_number_unsigned()) {
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
      return value.get<std::uint64_t>();
    }
    violation(path, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

double get_real(const json& value, const std::string& path) {
  if (!value.is_number()) violation(path, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) violation(path, "expected a finite number");
  return v;
}

}  // namespace

MaskDocument to_document(const MaskResult& result) {
  MaskDocument doc;
  doc.rows = result.grid.rows;
  doc.cols = result.grid.cols;
  doc.patch_size = result.grid.patch_size != 0 ? result.grid.patch_size
                                               : result.config.patch_size;
  doc.mask_ratio = result.config.mask_ratio;
  doc.tau = result.config.tau;
  doc.epsilon = result.config.epsilon;
  doc.seed = result.config.seed;
  doc.mode = result.config.mode;
  doc.visible = result.visible;
  doc.greedy_count = result.greedy_count;
  return doc;
}

std::string serialize_mask(const MaskDocument& doc) {
  // nlohmann::json objects are std::map-backed, so keys come out sorted.
  json out;
  out["schema_version"] = doc.schema_version;
  out["grid"] = {{"rows", doc.rows}, {"cols", doc.cols}};
  out["patch_size"] = doc.patch_size;
  out["config"] = {{"mask_ratio", doc.mask_ratio},
                   {"tau", doc.tau},
                   {"epsilon", doc.epsilon},
                   {"seed", doc.seed},
                   {"mode", std::string(to_string(doc.mode))}};
  out["visible"] = doc.visible;
  out["greedy_count"] = doc.greedy_count;
  return out.dump();
}

MaskDocument parse_mask(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    violation("$", std::string("not valid JSON: ") + e.what());
  }
  expect_keys(root, "",
              {"schema_version", "grid", "patch_size", "config", "visible", "greedy_count"});

  MaskDocument doc;
  if (!root["schema_version"].is_number_integer() ||
      root["schema_version"].get<std::int64_t>() != kMaskSchemaVersion) {
    violation("schema_version", "expected " + std::to_string(kMaskSchemaVersion));
  }

  const json& grid = root["grid"];
  expect_keys(grid, "grid", {"rows", "cols"});
  const std::uint64_t rows = get_unsigned(grid["rows"], "grid.rows");
  const std::uint64_t cols = get_unsigned(grid["cols"], "grid.cols");
  constexpr std::uint64_t kMaxSide = 1u << 24;
  if (rows == 0 || rows > kMaxSide) violation("grid.rows", "out of range");
  if (cols == 0 || cols > kMaxSide) violation("grid.cols", "out of range");
  doc.rows = rows;
  doc.cols = cols;
  doc.patch_size = get_unsigned(root["patch_size"], "patch_size");

  const json& config = root["config"];
  expect_keys(config, "config", {"mask_ratio", "tau", "epsilon", "seed", "mode"});
  doc.mask_ratio = get_real(config["mask_ratio"], "config.mask_ratio");
  if (!(doc.mask_ratio >= 0.0 && doc.mask_ratio < 1.0)) {
    violation("config.mask_ratio", "must lie in [0, 1)");
  }
  doc.tau = get_real(config["tau"], "config.tau");
  if (!(doc.tau >= 0.0 && doc.tau <= 1.0)) violation("config.tau", "must lie in [0, 1]");
  doc.epsilon = get_real(config["epsilon"], "config.epsilon");
  if (!(doc.epsilon > 0.0)) violation("config.epsilon", "must be positive");
  doc.seed = get_unsigned(config["seed"], "config.seed");
  if (!config["mode"].is_string()) violation("config.mode", "expected a string");
  const auto mode = parse_feature_mode(config["mode"].get<std::string>());
  if (!mode) violation("config.mode", "expected \"pixel\" or \"feature\"");
  doc.mode = *mode;

  const json& visible = root["visible"];
  if (!visible.is_array()) violation("visible", "expected an array");
  if (visible.empty()) violation("visible", "must not be empty");
  const std::uint64_t total = rows * cols;
  doc.visible.reserve(visible.size());
  for (std::size_t i = 0; i < visible.size(); ++i) {
    const std::string path = "visible[" + std::to_string(i) + "]";
    const std::uint64_t v = get_unsigned(visible[i], path);
    if (v >= total) violation(path, "index " + std::to_string(v) + " outside the grid");
    if (!doc.visible.empty() && v <= doc.visible.back()) {
      violation(path, v == doc.visible.back() ? "duplicate index" : "indices not ascending");
    }
    doc.visible.push_back(v);
  }

  doc.greedy_count = get_unsigned(root["greedy_count"], "greedy_count");
  if (doc.greedy_count > doc.visible.size()) {
    violation("greedy_count", "exceeds the number of visible patches");
  }
  return doc;
}

MaskDocument read_mask(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_mask(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void write_mask(const std::filesystem::path& path, const MaskDocument& doc) {
  const std::string text = serialize_mask(doc);
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace dppmask::io
