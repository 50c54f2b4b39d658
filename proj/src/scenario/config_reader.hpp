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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tempologic/errors.hpp"
#include "tempologic/fabric.hpp"
#include "tempologic/neuro.hpp"
#include "tempologic/timespace.hpp"

namespace tempologic::scenario::detail {

using nlohmann::json;

// Field accessors that raise ConfigError naming the offending path.
const json& field(const json& obj, std::string_view key, std::string_view where);
const json* optional_field(const json& obj, std::string_view key);
double number(const json& obj, std::string_view key, std::string_view where);
double number_or(const json& obj, std::string_view key, double fallback,
                 std::string_view where);
std::int64_t integer(const json& obj, std::string_view key,
                     std::string_view where);
std::int64_t integer_or(const json& obj, std::string_view key,
                        std::int64_t fallback, std::string_view where);
std::string text(const json& obj, std::string_view key, std::string_view where);
std::string text_or(const json& obj, std::string_view key,
                    std::string_view fallback, std::string_view where);
const json& array(const json& obj, std::string_view key, std::string_view where);
std::vector<double> numbers(const json& obj, std::string_view key,
                            std::string_view where);
SpatialPoint point(const json& value, std::string_view where);

/// The "components" array indexed by id, with typed lookups.
class Geometry {
 public:
  explicit Geometry(const json& config);

  fabric::Core core(const std::string& id) const;
  fabric::CacheMemory cache(const std::string& id) const;
  fabric::BusChannel bus(const std::string& id) const;
  neuro::OscillatorNeuron neuron(const std::string& id,
                                 Seconds step = neuro::kDefaultStep) const;
  bool has(const std::string& id) const { return by_id_.count(id) != 0; }

 private:
  const json& typed(const std::string& id, std::string_view type) const;

  std::map<std::string, const json*> by_id_;
};

/// Runs `fn`, converting DomainError into ConfigError with context.
template <class Fn>
auto checked(std::string_view where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
}

}  // namespace tempologic::scenario::detail
