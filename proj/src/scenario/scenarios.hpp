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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tempologic/engine.hpp"
#include "tempologic/scenario.hpp"

namespace tempologic::scenario::detail {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv(std::string_view comment) const;
};

struct Context {
  std::uint64_t seed = 0;
  std::string units;
  std::string comment;  // "# ..." header line for every CSV, without "# "
};

struct ScenarioResult {
  std::vector<sim::TraceRecord> trace;
  Table summary;
  nlohmann::ordered_json summary_json = nlohmann::ordered_json::object();
  std::vector<Artifact> extra;
  Metrics headline;
};

/// Dispatches on the validated kind. ConfigError on invalid parameters.
ScenarioResult run_kind(const std::string& kind, const nlohmann::json& config,
                        const Context& context);

/// Writes a swept scalar into a config copy.
void apply_sweep_value(const std::string& kind, nlohmann::json& config,
                       const std::string& param, double value);

bool integer_parameter(const std::string& kind, const std::string& param);

}  // namespace tempologic::scenario::detail
