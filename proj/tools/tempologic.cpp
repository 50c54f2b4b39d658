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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tempologic/errors.hpp"
#include "tempologic/scenario.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

namespace sc = tempologic::scenario;

int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const tempologic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

void report(const std::filesystem::path& dir, const sc::RunOutput& out) {
  std::cout << out.kind << " seed=" << out.seed << " -> " << dir.string() << '\n';
  for (const auto& [name, value] : out.headline) {
    std::cout << "  " << name << " = " << value << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-space simulator for compute fabrics and neuron assemblies"};
  app.set_version_flag("--version", std::string(sc::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory");

  sc::SweepRequest request;
  auto* sweep = app.add_subcommand("sweep", "Sweep one scalar parameter");
  sweep->add_option("config", config_path, "Scenario config (JSON)")->required();
  sweep->add_option("--param", request.param, "Parameter name")->required();
  sweep->add_option("--from", request.from, "First value")->required();
  sweep->add_option("--to", request.to, "Last value")->required();
  sweep->add_option("--steps", request.steps, "Number of values")->required();
  sweep->add_option("--seed", seed, "Override the config seed");
  sweep->add_option("--out", out_dir, "Output directory");

  app.add_subcommand("schema", "Print the config JSON Schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (app.got_subcommand("schema")) {
    std::cout << sc::config_schema();
    return 0;
  }

  return guarded([&] {
    const auto config = sc::load_config(config_path);
    const auto output = run->parsed()
                            ? sc::run_scenario(config, {seed})
                            : sc::run_sweep(config, request, {seed});
    const auto dir = sc::resolve_output_dir(config, out_dir);
    sc::write_artifacts(dir, output);
    report(dir, output);
  });
}
