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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "config_reader.hpp"
#include "scenarios.hpp"
#include "tempologic/errors.hpp"
#include "tempologic/fabric.hpp"
#include "tempologic/numfmt.hpp"
#include "tempologic/scenario.hpp"

namespace tempologic::scenario {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

struct Validated {
  std::string kind;
  std::string units;
  std::uint64_t seed = 0;
  json normalized;
};

std::string kinds_list() {
  std::string s;
  for (const auto& k : scenario_kinds()) {
    if (!s.empty()) s += ", ";
    s += k;
  }
  return s;
}

Validated validate(const json& config, const RunOptions& options) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  const auto it = config.find("scenario");
  if (it == config.end() || !it->is_string()) {
    throw ConfigError("config needs a string 'scenario'; valid kinds: " +
                      kinds_list());
  }
  Validated v;
  v.kind = it->get<std::string>();
  const auto& kinds = scenario_kinds();
  if (std::find(kinds.begin(), kinds.end(), v.kind) == kinds.end()) {
    throw ConfigError("unknown scenario kind '" + v.kind +
                      "'; valid kinds: " + kinds_list());
  }
  const json& units = detail::field(config, "units", "config");
  v.units = detail::text(units, "length", "units");
  if (v.units.empty()) throw ConfigError("units.length must not be empty");
  for (const auto& [key, _] : config.items()) {
    static const std::vector<std::string> known{
        "scenario", "units", "seed", "output", "components", "parameters"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown top-level field '" + key + "'");
    }
  }
  if (const json* out = detail::optional_field(config, "output")) {
    detail::text_or(*out, "dir", "", "output");
  }
  if (options.seed) {
    v.seed = *options.seed;
  } else if (const json* s = detail::optional_field(config, "seed")) {
    if (!s->is_number_unsigned() && !(s->is_number_integer() && *s >= 0)) {
      throw ConfigError("seed must be a non-negative integer");
    }
    v.seed = s->get<std::uint64_t>();
  }
  v.normalized = config;
  v.normalized["seed"] = v.seed;
  return v;
}

std::string header_comment(const Validated& v) {
  return std::string(kToolName) + " scenario=" + v.kind + " units=" + v.units +
         " seed=" + std::to_string(v.seed);
}

ojson manifest(const Validated& v, const std::vector<Artifact>& files,
               const ojson& extra) {
  ojson m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["json_library"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                      std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  m["scenario"] = v.kind;
  m["units"] = v.units;
  m["seed"] = v.seed;
  m["config_hash"] = config_hash(v.normalized);
  ojson names = ojson::array();
  for (const auto& f : files) names.push_back(f.name);
  names.push_back("manifest.json");
  m["files"] = std::move(names);
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = *it;
  m["config"] = ojson::parse(v.normalized.dump());
  return m;
}

std::vector<double> sweep_values(const std::string& kind,
                                 const SweepRequest& req) {
  if (!std::isfinite(req.from) || !std::isfinite(req.to)) {
    throw ConfigError("sweep range must be finite");
  }
  if (req.steps < 1) throw ConfigError("--steps must be >= 1");
  std::vector<double> values;
  for (int i = 0; i < req.steps; ++i) {
    const double t = req.steps == 1 ? 0.0 : static_cast<double>(i) / (req.steps - 1);
    values.push_back(i == req.steps - 1 && req.steps > 1
                         ? req.to
                         : req.from + (req.to - req.from) * t);
  }
  if (detail::integer_parameter(kind, req.param)) {
    for (auto& x : values) x = std::round(x);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

const std::vector<std::string>& scenario_kinds() {
  static const std::vector<std::string> kinds{
      "lightcone",        "cache",         "bus",
      "hidden-layer",     "shallow-deep",  "perf-fit",
      "efficiency-sweep", "assembly-sync", "feedback-staleness"};
  return kinds;
}

std::vector<std::string> sweepable_parameters(std::string_view kind) {
  if (kind == "lightcone") return {"tp", "speed"};
  if (kind == "cache") return {"operate_time", "speed"};
  if (kind == "bus") return {"L", "t_b", "t_d", "x"};
  if (kind == "hidden-layer") return {"L", "t_b", "t_d"};
  if (kind == "shallow-deep") return {"tp", "t_b"};
  if (kind == "perf-fit") return {"fp0", "k"};
  if (kind == "efficiency-sweep") return {"transfer_fraction", "fp0"};
  if (kind == "assembly-sync") return {"eta", "base_frequency", "max_iter"};
  if (kind == "feedback-staleness") return {"drop_threshold", "cycle_length"};
  return {};
}

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " +
                      e.what());
  }
}

RunOutput run_scenario(const json& config, const RunOptions& options) {
  const Validated v = validate(config, options);
  const std::string comment = header_comment(v);
  const auto result =
      detail::run_kind(v.kind, v.normalized, {v.seed, v.units, comment});

  RunOutput out;
  out.kind = v.kind;
  out.seed = v.seed;
  out.headline = result.headline;
  out.files.push_back({"trace.csv", sim::trace_csv(result.trace, comment)});
  out.files.push_back({"summary.csv", result.summary.csv(comment)});
  ojson summary;
  summary["scenario"] = v.kind;
  summary["units"] = v.units;
  summary["seed"] = v.seed;
  for (auto it = result.summary_json.begin(); it != result.summary_json.end();
       ++it) {
    summary[it.key()] = *it;
  }
  out.files.push_back({"summary.json", summary.dump(2) + "\n"});
  for (const auto& extra : result.extra) out.files.push_back(extra);
  out.files.push_back(
      {"manifest.json", manifest(v, out.files, ojson::object()).dump(2) + "\n"});
  return out;
}

RunOutput run_sweep(const json& config, const SweepRequest& request,
                    const RunOptions& options) {
  const Validated v = validate(config, options);
  const auto allowed = sweepable_parameters(v.kind);
  if (std::find(allowed.begin(), allowed.end(), request.param) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError("parameter '" + request.param +
                      "' is not sweepable for scenario '" + v.kind +
                      "'; sweepable: " + list);
  }
  const auto values = sweep_values(v.kind, request);
  const std::string comment = header_comment(v) + " sweep=" + request.param;

  std::vector<json> configs;
  for (double x : values) {
    json c = v.normalized;
    detail::apply_sweep_value(v.kind, c, request.param, x);
    configs.push_back(std::move(c));
  }

  std::vector<Metrics> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        rows[i] = detail::run_kind(v.kind, configs[i], {v.seed, v.units, comment})
                      .headline;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(values.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  detail::Table table;
  table.columns.push_back(request.param);
  for (const auto& [name, _] : rows.front()) table.columns.push_back(name);
  ojson json_rows = ojson::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<std::string> cells{format_number(values[i])};
    ojson row;
    row[request.param] = values[i];
    for (const auto& [name, value] : rows[i]) {
      cells.push_back(format_number(value));
      row[name] = value;
    }
    table.rows.push_back(std::move(cells));
    json_rows.push_back(std::move(row));
  }

  ojson report;
  report["scenario"] = v.kind;
  report["units"] = v.units;
  report["seed"] = v.seed;
  report["param"] = request.param;
  report["rows"] = json_rows;

  auto column = [&](const std::string& name) {
    std::vector<double> col;
    for (const auto& r : rows) {
      for (const auto& [n, value] : r) {
        if (n == name) col.push_back(value);
      }
    }
    return col;
  };
  if (request.param == "L" && v.kind == "bus" && values.size() >= 2) {
    const auto tt = column("receiver_transmission");
    const auto fit = fabric::least_squares(values, tt);
    report["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}};
  }
  if (v.kind == "efficiency-sweep" && request.param == "transfer_fraction") {
    std::vector<double> targets{10.0, 100.0, 250.0, 1000.0};
    const json& p = v.normalized.contains("parameters")
                        ? v.normalized.at("parameters")
                        : json::object();
    if (detail::optional_field(p, "ratio_targets")) {
      targets = detail::numbers(p, "ratio_targets", "parameters");
    }
    const auto ratio = column("ratio");
    ojson thresholds = ojson::array();
    for (double t : targets) {
      const auto hit = std::find_if(ratio.begin(), ratio.end(),
                                    [&](double r) { return r >= t; });
      thresholds.push_back(
          {{"ratio", t},
           {"first_transfer_fraction",
            hit == ratio.end() ? ojson(nullptr)
                               : ojson(values[hit - ratio.begin()])}});
    }
    report["thresholds"] = std::move(thresholds);
  }

  RunOutput out;
  out.kind = v.kind;
  out.seed = v.seed;
  out.files.push_back({"sweep.csv", table.csv(comment)});
  out.files.push_back({"sweep.json", report.dump(2) + "\n"});
  ojson extra;
  extra["sweep"] = {{"param", request.param},
                    {"from", request.from},
                    {"to", request.to},
                    {"steps", request.steps}};
  out.files.push_back(
      {"manifest.json", manifest(v, out.files, extra).dump(2) + "\n"});
  return out;
}

std::filesystem::path resolve_output_dir(
    const json& config, const std::optional<std::string>& cli_out) {
  if (cli_out && !cli_out->empty()) return *cli_out;
  if (const char* env = std::getenv(std::string(kOutEnvVar).c_str());
      env != nullptr && *env != '\0') {
    return env;
  }
  if (const json* out = detail::optional_field(config, "output")) {
    if (const json* dir = detail::optional_field(*out, "dir");
        dir != nullptr && dir->is_string() && !dir->get<std::string>().empty()) {
      return dir->get<std::string>();
    }
  }
  return "out";
}

void write_artifacts(const std::filesystem::path& dir, const RunOutput& output) {
  std::filesystem::create_directories(dir);
  for (const auto& f : output.files) {
    const auto path = dir / f.name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << f.content;
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  }
}

std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

}  // namespace tempologic::scenario
