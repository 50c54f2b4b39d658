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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempologic/errors.hpp"
#include "tempologic/scenario.hpp"

using namespace tempologic;
using namespace tempologic::scenario;
using nlohmann::json;

namespace {

const std::filesystem::path kDir = TEMPOLOGIC_SCENARIO_DIR;

json bundled(const std::string& name) { return load_config(kDir / (name + ".json")); }

const std::string& file(const RunOutput& out, const std::string& name) {
  for (const auto& f : out.files) {
    if (f.name == name) return f.content;
  }
  FAIL("missing artifact " << name);
  static const std::string empty;
  return empty;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

double headline(const RunOutput& out, const std::string& name) {
  for (const auto& [k, v] : out.headline) {
    if (k == name) return v;
  }
  FAIL("missing headline " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("every bundled scenario runs and labels its outputs") {
  for (const auto& kind : scenario_kinds()) {
    CAPTURE(kind);
    const auto out = run_scenario(bundled(kind));
    CHECK(out.kind == kind);
    for (const auto& f : out.files) {
      if (f.name.ends_with(".csv")) {
        CHECK(f.content.rfind("# tempologic scenario=" + kind + " units=m seed=", 0) == 0);
      } else {
        const auto j = json::parse(f.content);
        CHECK(j.contains("seed"));
        CHECK(j.contains("units"));
      }
    }
    CHECK(csv_rows(file(out, "trace.csv"))[0] ==
          std::vector<std::string>{"seq", "time", "component", "kind", "x", "y", "detail"});
  }
}

TEST_CASE("bundled cache scenario matches the hand geometry") {
  const auto rows = csv_rows(file(run_scenario(bundled("cache")), "summary.csv"));
  REQUIRE(rows.size() == 5);
  const double near = std::hypot(0.5, 0.5);
  const double far = std::hypot(0.5, 1.0);
  const double expected[] = {2 * near + 1, 2 * near + 0.1, 2 * far + 1, 2 * far + 0.1};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::stod(rows[i + 1][4]) == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("config errors") {
  json c = bundled("cache");
  c["scenario"] = "warp-drive";
  try {
    run_scenario(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("warp-drive") != std::string::npos);
    for (const auto& k : scenario_kinds()) CHECK(msg.find(k) != std::string::npos);
  }

  json no_units = bundled("cache");
  no_units.erase("units");
  CHECK_THROWS_AS(run_scenario(no_units), ConfigError);

  json dangling = bundled("cache");
  dangling["parameters"]["accesses"][0]["cache"] = "nowhere";
  CHECK_THROWS_AS(run_scenario(dangling), ConfigError);

  json duplicate = bundled("cache");
  duplicate["components"].push_back(duplicate["components"][0]);
  CHECK_THROWS_AS(run_scenario(duplicate), ConfigError);

  json wrong_type = bundled("bus");
  wrong_type["parameters"]["bus"] = "receiver";
  CHECK_THROWS_AS(run_scenario(wrong_type), ConfigError);

  json bad_speed = bundled("cache");
  bad_speed["parameters"]["speed"] = 0;
  CHECK_THROWS_AS(run_scenario(bad_speed), ConfigError);

  json infeasible = bundled("perf-fit");
  infeasible["parameters"]["observations"][0]["speedup"] = 4.5;
  CHECK_THROWS_AS(run_scenario(infeasible), ConfigError);

  json stray = bundled("cache");
  stray["colour"] = "blue";
  CHECK_THROWS_AS(run_scenario(stray), ConfigError);

  CHECK_THROWS_AS(load_config(kDir / "does-not-exist.json"), ConfigError);
  CHECK_THROWS_AS(run_scenario(json::array()), ConfigError);
}

TEST_CASE("a tick that cannot reset a member is a runtime failure") {
  json c = bundled("assembly-sync");
  c["components"][0]["i_th"] = 1e12;
  CHECK_THROWS_AS(run_scenario(c), std::runtime_error);
  try {
    run_scenario(c);
  } catch (const ConfigError&) {
    FAIL("classified as a config error");
  } catch (const std::exception&) {
  }
}

TEST_CASE("runs are deterministic and the manifest config reproduces them") {
  for (const auto& kind : scenario_kinds()) {
    CAPTURE(kind);
    const auto a = run_scenario(bundled(kind));
    const auto b = run_scenario(bundled(kind));
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
      CHECK(a.files[i].content == b.files[i].content);
    }
    const auto manifest = json::parse(file(a, "manifest.json"));
    const auto again = run_scenario(manifest.at("config"));
    for (std::size_t i = 0; i < a.files.size(); ++i) {
      CHECK(a.files[i].content == again.files[i].content);
    }
    CHECK(manifest.at("config_hash") == config_hash(manifest.at("config")));
  }
}

TEST_CASE("seed override is recorded everywhere") {
  auto c = bundled("bus");
  c["components"][2]["foreign"] = {{"kind", "exponential"}, {"value", 0.5}};
  const auto a = run_scenario(c, {123});
  const auto b = run_scenario(c, {124});
  CHECK(a.seed == 123);
  CHECK(json::parse(file(a, "manifest.json"))["config"]["seed"] == 123);
  CHECK(file(a, "trace.csv") != file(b, "trace.csv"));
}

TEST_CASE("config hash ignores key order") {
  const auto a = json::parse(R"({"b": 1, "a": [1, 2]})");
  const auto b = json::parse(R"({"a": [1, 2], "b": 1})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) != config_hash(json::parse(R"({"a": [2, 1], "b": 1})")));
}

TEST_CASE("bus sweep over L is affine with slope 2 T_B") {
  const auto out = run_sweep(bundled("bus"), {"L", 1, 64, 64});
  const auto rows = csv_rows(file(out, "sweep.csv"));
  REQUIRE(rows.size() == 65);
  CHECK(rows[0][0] == "L");
  for (int l = 1; l <= 64; ++l) {
    CHECK(std::stod(rows[l][0]) == l);
    CHECK(std::stod(rows[l][2]) == doctest::Approx(2.0 * l + 0.1));
  }
  const auto report = json::parse(file(out, "sweep.json"));
  CHECK(report["fit"]["slope"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fp0 sweep runs the speedup curve down from k") {
  const auto out = run_sweep(bundled("perf-fit"), {"fp0", 0.0, 50.0, 11});
  const auto rows = csv_rows(file(out, "sweep.csv"));
  REQUIRE(rows.size() == 12);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(4.0));
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));
    CHECK(std::stod(rows[i][1]) > 1.0);
  }
}

TEST_CASE("transfer fraction sweep reports the 1000x threshold") {
  const auto out =
      run_sweep(bundled("efficiency-sweep"), {"transfer_fraction", 0, 3000, 61});
  const auto report = json::parse(file(out, "sweep.json"));
  bool found = false;
  for (const auto& t : report["thresholds"]) {
    if (t["ratio"] == 1000.0) {
      REQUIRE_FALSE(t["first_transfer_fraction"].is_null());
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("sweep rejects undeclared parameters and empty ranges") {
  CHECK_THROWS_AS(run_sweep(bundled("bus"), {"colour", 1, 2, 2}), ConfigError);
  CHECK_THROWS_AS(run_sweep(bundled("bus"), {"L", 1, 2, 0}), ConfigError);
  for (const auto& kind : scenario_kinds()) CHECK_FALSE(sweepable_parameters(kind).empty());
}

TEST_CASE("sweep rows are sorted regardless of range direction") {
  const auto out = run_sweep(bundled("feedback-staleness"), {"drop_threshold", 4, 0, 5});
  const auto rows = csv_rows(file(out, "sweep.csv"));
  REQUIRE(rows.size() == 6);
  for (int i = 1; i <= 5; ++i) CHECK(std::stod(rows[i][0]) == i - 1);
}

TEST_CASE("output directory precedence") {
  json c = bundled("cache");
  c["output"] = {{"dir", "from-config"}};
  ::unsetenv(std::string(kOutEnvVar).c_str());
  CHECK(resolve_output_dir(c, std::nullopt) == "from-config");
  ::setenv(std::string(kOutEnvVar).c_str(), "from-env", 1);
  CHECK(resolve_output_dir(c, std::nullopt) == "from-env");
  CHECK(resolve_output_dir(c, std::string("from-flag")) == "from-flag");
  ::unsetenv(std::string(kOutEnvVar).c_str());
  c.erase("output");
  CHECK(resolve_output_dir(c, std::nullopt) == "out");
}

TEST_CASE("published schema is valid JSON that names every kind") {
  const auto schema = json::parse(config_schema());
  const auto kinds = schema["properties"]["scenario"]["enum"];
  CHECK(kinds.size() == scenario_kinds().size());
  for (const auto& k : scenario_kinds()) {
    CHECK(std::find(kinds.begin(), kinds.end(), k) != kinds.end());
  }
}
