// Copyright 2026 The tempologic Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tempologic::scenario {

inline constexpr std::string_view kToolName = "tempologic";
inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kOutEnvVar = "TEMPOLOGIC_OUT";

/// Valid values of the config's "scenario" field.
const std::vector<std::string>& scenario_kinds();

/// Scalars `sweep` accepts for a scenario kind.
std::vector<std::string> sweepable_parameters(std::string_view kind);

/// JSON Schema (draft 2020-12) for scenario configs.
const std::string& config_schema();

struct Artifact {
  std::string name;
  std::string content;
};

using Metrics = std::vector<std::pair<std::string, double>>;

struct RunOutput {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<Artifact> files;  // written in this order
  Metrics headline;             // one scalar row, used by sweeps
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
};

/// Throws ConfigError when the file is missing or not JSON.
nlohmann::json load_config(const std::filesystem::path& path);

/// Validates and runs one scenario entirely in memory. ConfigError for a bad
/// config; any other exception is a runtime failure.
RunOutput run_scenario(const nlohmann::json& config,
                       const RunOptions& options = {});

struct SweepRequest {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
};

/// One row per parameter value, ascending. Points run concurrently on
/// independent engines and are merged in parameter order.
RunOutput run_sweep(const nlohmann::json& config, const SweepRequest& request,
                    const RunOptions& options = {});

/// --out beats TEMPOLOGIC_OUT, which beats the config's output.dir.
std::filesystem::path resolve_output_dir(const nlohmann::json& config,
                                         const std::optional<std::string>& cli_out);

void write_artifacts(const std::filesystem::path& dir, const RunOutput& output);

/// FNV-1a 64 over the canonical (sorted-key, compact) dump.
std::string config_hash(const nlohmann::json& config);

}  // namespace tempologic::scenario
