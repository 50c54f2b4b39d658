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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "tempologic/errors.hpp"
#include "tempologic/fabric.hpp"
#include "tempologic/neuro.hpp"
#include "tempologic/perfmodel.hpp"
#include "tempologic/scenario.hpp"
#include "tempologic/timespace.hpp"

namespace py = pybind11;
namespace tl = tempologic;

namespace {

tl::SpatialPoint to_point(const std::vector<double>& xyz) {
  if (xyz.size() < 2 || xyz.size() > 3) {
    throw tl::DomainError("points are [x, y] or [x, y, z]");
  }
  return {xyz[0], xyz[1], xyz.size() == 3 ? xyz[2] : 0.0};
}

std::vector<tl::fabric::Core> to_cores(
    const std::vector<std::pair<std::string, std::vector<double>>>& cores) {
  std::vector<tl::fabric::Core> out;
  for (const auto& [id, pos] : cores) out.push_back({id, to_point(pos), 0.0});
  return out;
}

py::dict files_dict(const tl::scenario::RunOutput& out) {
  py::dict files;
  for (const auto& f : out.files) files[py::str(f.name)] = py::str(f.content);
  py::dict headline;
  for (const auto& [k, v] : out.headline) headline[py::str(k)] = v;
  py::dict d;
  d["kind"] = out.kind;
  d["seed"] = out.seed;
  d["files"] = files;
  d["headline"] = headline;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "tempologic core bindings";
  m.attr("__version__") = std::string(tl::scenario::kVersion);

  py::register_exception<tl::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<tl::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<tl::CausalityError>(m, "CausalityError",
                                             PyExc_RuntimeError);

  m.def("apparent_processing_time",
        py::overload_cast<tl::Seconds, tl::Seconds>(
            &tl::apparent_processing_time),
        py::arg("processing"), py::arg("transmission"));
  m.def("apparent_processing_time_from_ratio",
        &tl::apparent_processing_time_from_ratio, py::arg("processing"),
        py::arg("ratio"));
  m.def(
      "propagation_delay",
      [](const std::vector<double>& a, const std::vector<double>& b,
         double speed, int hops) {
        return tl::propagation_delay(to_point(a), to_point(b),
                                     tl::InteractionSpeed(speed), hops);
      },
      py::arg("a"), py::arg("b"), py::arg("speed"), py::arg("hops") = 0);
  m.def(
      "light_cone_trace",
      [](double tp_source, double tp_observer,
         const std::vector<double>& observer, double speed) {
        const auto c = tl::light_cone_trace(tp_source, tp_observer,
                                            to_point(observer),
                                            tl::InteractionSpeed(speed));
        py::dict d;
        d["transmission"] = c.transmission;
        d["notice_time"] = c.notice_time;
        d["observer_cone_start"] = c.observer_cone_start;
        d["apparent_time"] = c.apparent_time;
        return d;
      },
      py::arg("tp_source"), py::arg("tp_observer"), py::arg("observer"),
      py::arg("speed") = 1.0);

  m.def(
      "cache_access",
      [](const std::vector<double>& core, const std::vector<double>& cache,
         double operate_time, double speed) {
        const auto r = tl::fabric::cache_access_scenario(
            {"core", to_point(core), 0.0},
            {"cache", to_point(cache), operate_time},
            tl::InteractionSpeed(speed));
        py::dict d;
        d["one_way"] = r.one_way;
        d["apparent_access_time"] = r.apparent_access_time;
        d["apparent_speed"] = r.apparent_speed;
        return d;
      },
      py::arg("core"), py::arg("cache"), py::arg("operate_time") = 1.0,
      py::arg("speed") = 1.0);
  m.def(
      "shared_bus_transfer",
      [](const std::vector<std::pair<std::string, std::vector<double>>>& senders,
         const std::vector<double>& bus_position, double t_b, double t_d,
         double x, std::uint64_t seed) {
        tl::fabric::BusChannel bus;
        bus.position = to_point(bus_position);
        bus.arbitration = t_b;
        bus.delivery = t_d;
        bus.foreign = tl::fabric::ForeignLoad::constant(x);
        const auto cores = to_cores(senders);
        const auto r = tl::fabric::shared_bus_transfer(
            cores, bus, {"receiver", {0.0, -1.0, 0.0}, 0.0}, seed);
        py::list order;
        for (const auto& t : r.transfers) order.append(t.sender_id);
        py::dict d;
        d["grant_order"] = order;
        d["receiver_transmission"] = r.receiver_transmission;
        d["last_arrival"] = r.last_arrival;
        return d;
      },
      py::arg("senders"), py::arg("bus_position"), py::arg("t_b"),
      py::arg("t_d") = 0.0, py::arg("x") = 0.0, py::arg("seed") = 0);
  m.def(
      "hidden_layer_scaling",
      [](const std::vector<std::size_t>& sizes, double t_b, double t_d,
         const std::string& topology) {
        tl::fabric::BusChannel bus;
        bus.arbitration = t_b;
        bus.delivery = t_d;
        const auto topo = topology == "parallel"
                              ? tl::fabric::Topology::parallel
                              : tl::fabric::Topology::shared_bus;
        if (topology != "parallel" && topology != "shared-bus") {
          throw tl::DomainError("topology is 'shared-bus' or 'parallel'");
        }
        const auto t = tl::fabric::hidden_layer_scaling(sizes, bus, topo);
        std::vector<double> tt;
        for (const auto& row : t.rows) tt.push_back(row.transmission);
        return py::make_tuple(tt, t.fit.slope, t.fit.intercept);
      },
      py::arg("layer_sizes"), py::arg("t_b"), py::arg("t_d") = 0.0,
      py::arg("topology") = "shared-bus");

  m.def("operand_speedup", &tl::perf::operand_speedup, py::arg("fp0"),
        py::arg("k") = 4.0);
  m.def(
      "fit_housekeeping",
      [](double speedup, double k) {
        return tl::perf::fit_housekeeping({"", speedup, k});
      },
      py::arg("speedup"), py::arg("k") = 4.0);
  m.def(
      "efficiency",
      [](double fp0, double transfer_fraction) {
        return tl::perf::efficiency({"", fp0, transfer_fraction});
      },
      py::arg("fp0"), py::arg("transfer_fraction"));
  m.def(
      "blocking_fraction_for_ratio",
      [](double baseline_fp0, double ratio) {
        return tl::perf::blocking_fraction_for_ratio({"", baseline_fp0, 0.0},
                                                     ratio);
      },
      py::arg("baseline_fp0"), py::arg("ratio"));

  m.def("phase_shift", &tl::neuro::phase_shift, py::arg("delay"), py::arg("hz"));
  m.def(
      "circular_mean",
      [](const std::vector<double>& deg) { return tl::neuro::circular_mean(deg); },
      py::arg("degrees"));
  m.def(
      "learn_arrival_phase",
      [](const std::vector<double>& delays, double hz, double eta, int max_iter,
         double tolerance_deg) {
        tl::neuro::Assembly assembly;
        std::vector<tl::neuro::Axon> axons;
        for (std::size_t i = 0; i < delays.size(); ++i) {
          tl::neuro::OscillatorNeuron n;
          n.id = "n" + std::to_string(i);
          assembly.members.push_back(n);
          axons.push_back({n.id, assembly.target_id, delays[i], 1.0, 1.0});
        }
        tl::neuro::LearningOptions opts;
        opts.tolerance_deg = tolerance_deg;
        const auto r = tl::neuro::learn_arrival_phase(
            assembly, axons, tl::neuro::BaseOscillator(hz), eta, max_iter, opts);
        py::dict d;
        d["converged"] = r.converged;
        d["iterations"] = r.iterations;
        d["spread_history"] = r.spread_history;
        d["charge_history"] = r.charge_history;
        d["offsets"] = r.offsets;
        d["arrival_phases"] = r.arrival_phases;
        return d;
      },
      py::arg("delays"), py::arg("hz"), py::arg("eta") = 1.0,
      py::arg("max_iter") = 100, py::arg("tolerance_deg") = 1e-9);

  m.def("scenario_kinds", &tl::scenario::scenario_kinds);
  m.def("config_schema", &tl::scenario::config_schema);
  m.def(
      "run_scenario",
      [](const std::string& config_json, std::optional<std::uint64_t> seed) {
        const auto cfg = nlohmann::json::parse(config_json);
        tl::scenario::RunOutput out;
        {
          py::gil_scoped_release release;
          out = tl::scenario::run_scenario(cfg, {seed});
        }
        return files_dict(out);
      },
      py::arg("config_json"), py::arg("seed") = py::none());
  m.def(
      "run_sweep",
      [](const std::string& config_json, const std::string& param, double from,
         double to, int steps, std::optional<std::uint64_t> seed) {
        const auto cfg = nlohmann::json::parse(config_json);
        tl::scenario::RunOutput out;
        {
          py::gil_scoped_release release;
          out = tl::scenario::run_sweep(cfg, {param, from, to, steps}, {seed});
        }
        return files_dict(out);
      },
      py::arg("config_json"), py::arg("param"), py::arg("from_"), py::arg("to"),
      py::arg("steps"), py::arg("seed") = py::none());
}
