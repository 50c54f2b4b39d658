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

#include "config_reader.hpp"

#include <cmath>

#include "tempologic/errors.hpp"

namespace tempologic::scenario::detail {

namespace {

std::string at(std::string_view where, std::string_view key) {
  return std::string(where) + "." + std::string(key);
}

}  // namespace

const json* optional_field(const json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

const json& field(const json& obj, std::string_view key, std::string_view where) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  const json* v = optional_field(obj, key);
  if (v == nullptr) throw ConfigError("missing field " + at(where, key));
  return *v;
}

double number(const json& obj, std::string_view key, std::string_view where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) throw ConfigError(at(where, key) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(at(where, key) + " must be finite");
  return d;
}

double number_or(const json& obj, std::string_view key, double fallback,
                 std::string_view where) {
  return optional_field(obj, key) ? number(obj, key, where) : fallback;
}

std::int64_t integer(const json& obj, std::string_view key,
                     std::string_view where) {
  const json& v = field(obj, key, where);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d)) {
      return static_cast<std::int64_t>(d);
    }
  }
  throw ConfigError(at(where, key) + " must be an integer");
}

std::int64_t integer_or(const json& obj, std::string_view key,
                        std::int64_t fallback, std::string_view where) {
  return optional_field(obj, key) ? integer(obj, key, where) : fallback;
}

std::string text(const json& obj, std::string_view key, std::string_view where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw ConfigError(at(where, key) + " must be a string");
  return v.get<std::string>();
}

std::string text_or(const json& obj, std::string_view key,
                    std::string_view fallback, std::string_view where) {
  return optional_field(obj, key) ? text(obj, key, where)
                                  : std::string(fallback);
}

const json& array(const json& obj, std::string_view key, std::string_view where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) throw ConfigError(at(where, key) + " must be an array");
  return v;
}

std::vector<double> numbers(const json& obj, std::string_view key,
                            std::string_view where) {
  std::vector<double> out;
  for (const auto& v : array(obj, key, where)) {
    if (!v.is_number()) {
      throw ConfigError(at(where, key) + " must hold only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

SpatialPoint point(const json& value, std::string_view where) {
  if (!value.is_array() || value.size() < 2 || value.size() > 3) {
    throw ConfigError(std::string(where) + " must be [x, y] or [x, y, z]");
  }
  for (const auto& c : value) {
    if (!c.is_number() || !std::isfinite(c.get<double>())) {
      throw ConfigError(std::string(where) + " coordinates must be finite");
    }
  }
  return {value[0].get<double>(), value[1].get<double>(),
          value.size() == 3 ? value[2].get<double>() : 0.0};
}

Geometry::Geometry(const json& config) {
  const json* comps = optional_field(config, "components");
  if (comps == nullptr) return;
  if (!comps->is_array()) throw ConfigError("components must be an array");
  for (std::size_t i = 0; i < comps->size(); ++i) {
    const json& c = (*comps)[i];
    const std::string where = "components[" + std::to_string(i) + "]";
    const std::string id = text(c, "id", where);
    text(c, "type", where);
    if (!by_id_.emplace(id, &c).second) {
      throw ConfigError("duplicate component id '" + id + "'");
    }
  }
}

const json& Geometry::typed(const std::string& id, std::string_view type) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw ConfigError("undefined component '" + id + "'");
  }
  const json& c = *it->second;
  if (c.at("type").get<std::string>() != type) {
    throw ConfigError("component '" + id + "' is not a " + std::string(type));
  }
  return c;
}

fabric::Core Geometry::core(const std::string& id) const {
  const json& c = typed(id, "core");
  const std::string where = "component '" + id + "'";
  fabric::Core core{id, point(field(c, "position", where), where + ".position"),
                    number_or(c, "tp", 0.0, where)};
  checked(where, [&] { fabric::validate(core); });
  return core;
}

fabric::CacheMemory Geometry::cache(const std::string& id) const {
  const json& c = typed(id, "cache");
  const std::string where = "component '" + id + "'";
  fabric::CacheMemory cache{
      id, point(field(c, "position", where), where + ".position"),
      number(c, "operate_time", where)};
  checked(where, [&] { fabric::validate(cache); });
  return cache;
}

fabric::BusChannel Geometry::bus(const std::string& id) const {
  const json& c = typed(id, "bus");
  const std::string where = "component '" + id + "'";
  fabric::BusChannel bus;
  bus.id = id;
  bus.position = point(field(c, "position", where), where + ".position");
  bus.arbitration = number(c, "t_b", where);
  bus.delivery = number_or(c, "t_d", 0.0, where);
  if (const json* f = optional_field(c, "foreign")) {
    const std::string fw = where + ".foreign";
    const std::string kind = text_or(*f, "kind", "constant", fw);
    const double value = number_or(*f, "value", 0.0, fw);
    if (kind == "constant") {
      bus.foreign = fabric::ForeignLoad::constant(value);
    } else if (kind == "exponential") {
      bus.foreign = fabric::ForeignLoad::exponential(value);
    } else {
      throw ConfigError(fw + ".kind must be 'constant' or 'exponential'");
    }
  }
  checked(where, [&] { fabric::validate(bus); });
  return bus;
}

neuro::OscillatorNeuron Geometry::neuron(const std::string& id,
                                         Seconds step) const {
  const json& c = typed(id, "neuron");
  const std::string where = "component '" + id + "'";
  neuro::OscillatorNeuron n;
  n.id = id;
  n.position = point(field(c, "position", where), where + ".position");
  n.rc = number_or(c, "rc", n.rc, where);
  n.v_th = number_or(c, "v_th", n.v_th, where);
  n.i_th = number_or(c, "i_th", neuro::default_current_threshold(step),
                     where);
  checked(where, [&] { neuro::validate(n); });
  return n;
}

}  // namespace tempologic::scenario::detail
