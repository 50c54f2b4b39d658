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

#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "config_reader.hpp"
#include "tempologic/errors.hpp"
#include "tempologic/fabric.hpp"
#include "tempologic/neuro.hpp"
#include "tempologic/numfmt.hpp"
#include "tempologic/perfmodel.hpp"
#include "tempologic/timespace.hpp"

namespace tempologic::scenario::detail {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kParams = "parameters";

const json& params(const json& config) {
  static const json empty = json::object();
  const json* p = optional_field(config, kParams);
  if (p == nullptr) return empty;
  if (!p->is_object()) throw ConfigError("parameters must be an object");
  return *p;
}

std::string num(double v) { return format_number(v); }

std::string where_index(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

void require_ok(const sim::RunResult& run) {
  if (!run.ok) throw std::runtime_error("simulation aborted: " + run.error);
}

std::size_t positive_count(const json& obj, std::string_view key,
                           std::string_view where) {
  const auto v = integer(obj, key, where);
  if (v < 1) {
    throw ConfigError(std::string(where) + "." + std::string(key) +
                      " must be >= 1");
  }
  return static_cast<std::size_t>(v);
}

json& component_by_id(json& config, const std::string& id) {
  for (auto& c : config.at("components")) {
    if (c.value("id", "") == id) return c;
  }
  throw ConfigError("undefined component '" + id + "'");
}

// --- lightcone ---------------------------------------------------------------

ScenarioResult run_lightcone(const json& cfg, const Context& ctx) {
  const Geometry geo(cfg);
  const json& p = params(cfg);
  const fabric::Core source = geo.core(text(p, "source", kParams));
  std::vector<fabric::Observer> observers;
  const json& list = array(p, "observers", kParams);
  if (list.empty()) throw ConfigError("parameters.observers must not be empty");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = where_index("parameters.observers", i);
    const double speed = number_or(list[i], "speed", 1.0, w);
    observers.push_back(fabric::Observer{
        geo.core(text(list[i], "core", w)),
        checked(w, [&] { return InteractionSpeed(speed); })});
  }

  auto rep = fabric::simulate_light_cone(source, observers, ctx.seed);
  require_ok(rep.run);

  ScenarioResult out;
  out.trace = rep.run.trace;
  out.summary.columns = {"observer",   "speed",         "distance",
                         "transmission", "notice_time", "cone_start",
                         "apparent_time", "formula_apparent_time", "ratio"};
  ojson observers_json = ojson::array();
  for (std::size_t i = 0; i < observers.size(); ++i) {
    const auto& o = observers[i];
    const auto& t = rep.observers[i];
    const SpatialPoint rel{o.core.position.x - source.position.x,
                           o.core.position.y - source.position.y,
                           o.core.position.z - source.position.z};
    const ConeTrace cone =
        light_cone_trace(source.processing, o.core.processing, rel, o.speed);
    const auto ratio = EventTiming(source.processing, t.transmission).ratio();
    out.summary.rows.push_back(
        {o.core.id, num(o.speed.value()),
         num(distance(source.position, o.core.position)), num(t.transmission),
         num(t.notice_time), num(t.cone_start), num(t.traced_apparent_time),
         num(cone.apparent_time), ratio ? num(*ratio) : ""});
    observers_json.push_back({{"observer", o.core.id},
                              {"transmission", t.transmission},
                              {"notice_time", t.notice_time},
                              {"cone_start", t.cone_start},
                              {"apparent_time", t.traced_apparent_time},
                              {"formula_apparent_time", cone.apparent_time}});
  }
  out.summary_json["source"] = source.id;
  out.summary_json["source_done"] = rep.source_done;
  out.summary_json["observers"] = std::move(observers_json);
  const auto& first = rep.observers.front();
  out.headline = {{"transmission", first.transmission},
                  {"cone_start", first.cone_start},
                  {"apparent_time", first.traced_apparent_time}};
  return out;
}

// --- cache -------------------------------------------------------------------------

ScenarioResult run_cache(const json& cfg, const Context& ctx) {
  const Geometry geo(cfg);
  const json& p = params(cfg);
  const double speed_value = number_or(p, "speed", 1.0, kParams);
  const auto speed =
      checked("parameters.speed", [&] { return InteractionSpeed(speed_value); });
  std::vector<fabric::CacheAccess> accesses;
  const json& list = array(p, "accesses", kParams);
  if (list.empty()) throw ConfigError("parameters.accesses must not be empty");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = where_index("parameters.accesses", i);
    accesses.push_back({geo.core(text(list[i], "core", w)),
                        geo.cache(text(list[i], "cache", w))});
  }

  auto run = fabric::simulate_cache_accesses(accesses, speed, ctx.seed);
  require_ok(run.run);

  ScenarioResult out;
  out.trace = run.run.trace;
  out.summary.columns = {"core",    "cache",
                         "operate_time", "one_way",
                         "apparent_access_time", "apparent_speed"};
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    const auto& r = run.accesses[i];
    const double op = accesses[i].cache.operate_time;
    out.summary.rows.push_back({r.core_id, r.cache_id, num(op), num(r.one_way),
                                num(r.apparent_access_time),
                                num(r.apparent_speed)});
    rows.push_back({{"core", r.core_id},
                    {"cache", r.cache_id},
                    {"operate_time", op},
                    {"one_way", r.one_way},
                    {"apparent_access_time", r.apparent_access_time},
                    {"apparent_speed", r.apparent_speed},
                    {"cache_idle", r.cache_idle},
                    {"core_idle", r.core_idle}});
  }
  out.summary_json["speed"] = speed.value();
  out.summary_json["accesses"] = std::move(rows);
  out.headline = {
      {"apparent_access_time", run.accesses.front().apparent_access_time},
      {"apparent_speed", run.accesses.front().apparent_speed}};
  return out;
}

// --- bus ------------------------------------------------------------------------------

fabric::LayerGeometry layer_geometry(const json& p) {
  fabric::LayerGeometry g;
  if (const json* gj = optional_field(p, "geometry")) {
    const std::string w = "parameters.geometry";
    if (const json* r = optional_field(*gj, "receiver")) {
      g.receiver = point(*r, w + ".receiver");
    }
    g.radius = number_or(*gj, "radius", g.radius, w);
    g.speed = number_or(*gj, "speed", g.speed, w);
    checked(w, [&] { return InteractionSpeed(g.speed); });
    if (!(g.radius >= 0.0)) throw ConfigError(w + ".radius must be >= 0");
  }
  return g;
}

ScenarioResult run_bus(const json& cfg, const Context& ctx) {
  const Geometry geo(cfg);
  const json& p = params(cfg);
  const auto bus = geo.bus(text(p, "bus", kParams));
  const auto receiver = geo.core(text(p, "receiver", kParams));
  std::vector<fabric::Core> senders;
  if (optional_field(p, "layer_size")) {
    fabric::LayerGeometry g = layer_geometry(p);
    g.receiver = receiver.position;
    senders = fabric::layer_senders(positive_count(p, "layer_size", kParams), g);
  } else {
    const json& ids = array(p, "senders", kParams);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!ids[i].is_string()) {
        throw ConfigError(where_index("parameters.senders", i) +
                          " must be a component id");
      }
      senders.push_back(geo.core(ids[i].get<std::string>()));
    }
  }
  if (senders.empty()) throw ConfigError("bus scenario needs senders");

  auto rep = fabric::shared_bus_transfer(senders, bus, receiver, ctx.seed);
  require_ok(rep.run);

  ScenarioResult out;
  out.trace = rep.run.trace;
  out.summary.columns = {"grant_index",  "sender",     "distance_to_bus",
                         "request_time", "grant_time", "reach_time",
                         "foreign",      "delivery_start", "delivery_end"};
  ojson order = ojson::array();
  for (const auto& t : rep.transfers) {
    const auto it = std::find_if(senders.begin(), senders.end(),
                                 [&](const auto& s) { return s.id == t.sender_id; });
    out.summary.rows.push_back(
        {std::to_string(t.grant_index), t.sender_id,
         num(distance(it->position, bus.position)), num(t.request_time),
         num(t.grant_time), num(t.reach_time), num(t.foreign),
         num(t.delivery_start), num(t.delivery_end)});
    order.push_back(t.sender_id);
  }
  const double layer = static_cast<double>(senders.size());
  out.summary_json["layer_size"] = senders.size();
  out.summary_json["grant_order"] = std::move(order);
  out.summary_json["receiver_transmission"] = rep.receiver_transmission;
  out.summary_json["receiver_start"] = rep.receiver_start;
  if (bus.foreign.kind == fabric::ForeignLoad::Kind::constant) {
    out.summary_json["formula_transmission"] =
        layer * 2.0 * bus.arbitration + bus.delivery + bus.foreign.value;
  }
  out.headline = {{"layer_size", layer},
                  {"receiver_transmission", rep.receiver_transmission}};
  return out;
}

// --- hidden layer ------------------------------------------------------------------------

std::vector<std::size_t> layer_sizes(const json& p, std::string_view key) {
  std::vector<std::size_t> out;
  const json& list = array(p, key, kParams);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = "parameters." + std::string(key);
    if (!list[i].is_number_integer() || list[i].get<std::int64_t>() < 1) {
      throw ConfigError(where_index(w, i) + " must be an integer >= 1");
    }
    out.push_back(list[i].get<std::size_t>());
  }
  if (out.empty()) throw ConfigError("parameters." + std::string(key) +
                                     " must not be empty");
  return out;
}

ScenarioResult run_hidden_layer(const json& cfg, const Context& ctx) {
  const Geometry geo(cfg);
  const json& p = params(cfg);
  const auto bus = geo.bus(text(p, "bus", kParams));
  const auto sizes = layer_sizes(p, "layer_sizes");
  const auto g = layer_geometry(p);

  std::vector<fabric::Topology> topologies;
  if (const json* t = optional_field(p, "topologies")) {
    if (!t->is_array()) throw ConfigError("parameters.topologies must be an array");
    for (const auto& name : *t) {
      if (name == "shared-bus") {
        topologies.push_back(fabric::Topology::shared_bus);
      } else if (name == "parallel") {
        topologies.push_back(fabric::Topology::parallel);
      } else {
        throw ConfigError("parameters.topologies entries must be 'shared-bus' "
                          "or 'parallel'");
      }
    }
  } else {
    topologies = {fabric::Topology::shared_bus, fabric::Topology::parallel};
  }
  if (topologies.empty()) throw ConfigError("parameters.topologies is empty");

  ScenarioResult out;
  out.summary.columns = {"topology", "layer_size", "transmission"};
  ojson fits = ojson::object();
  for (auto topo : topologies) {
    const auto table = fabric::hidden_layer_scaling(sizes, bus, topo, g, ctx.seed);
    for (const auto& row : table.rows) {
      out.summary.rows.push_back({std::string(fabric::to_string(topo)),
                                  std::to_string(row.layer_size),
                                  num(row.transmission)});
    }
    ojson fit = {{"rows", table.rows.size()}};
    if (table.rows.size() >= 2) {
      fit["slope"] = table.fit.slope;
      fit["intercept"] = table.fit.intercept;
    }
    fits[std::string(fabric::to_string(topo))] = std::move(fit);
    out.headline.emplace_back("tt_" + std::string(fabric::to_string(topo)),
                              table.rows.back().transmission);
  }
  out.summary_json["expected_shared_bus_slope"] = 2.0 * bus.arbitration;
  out.summary_json["fits"] = std::move(fits);

  // The trace shows the largest layer on the first listed topology.
  const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
  fabric::Core receiver{"receiver", g.receiver, 0.0};
  const auto senders = fabric::layer_senders(largest, g);
  if (topologies.front() == fabric::Topology::shared_bus) {
    auto rep = fabric::shared_bus_transfer(senders, bus, receiver, ctx.seed);
    require_ok(rep.run);
    out.trace = std::move(rep.run.trace);
  } else {
    auto rep = fabric::parallel_transfer(senders, receiver,
                                         InteractionSpeed(g.speed), ctx.seed);
    require_ok(rep.run);
    out.trace = std::move(rep.run.trace);
  }
  return out;
}

// --- shallow vs deep ------------------------------------------------------------------------

std::string join_widths(const std::vector<std::size_t>& widths) {
  std::string s;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(widths[i]);
  }
  return s;
}

ScenarioResult run_shallow_deep(const json& cfg, const Context& ctx) {
  const Geometry geo(cfg);
  const json& p = params(cfg);
  const auto bus = geo.bus(text(p, "bus", kParams));
  const std::size_t total = positive_count(p, "total_neurons", kParams);
  const double tp = number_or(p, "tp", 0.0, kParams);
  const json& list = array(p, "arrangements", kParams);
  if (list.empty()) throw ConfigError("parameters.arrangements is empty");

  ScenarioResult out;
  out.summary.columns = {"arrangement", "layers", "max_layer_transmission",
                         "end_to_end", "layered_faster"};
  ojson arrangements = ojson::array();
  std::optional<fabric::ArrangementTiming> wide;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = where_index("parameters.arrangements", i);
    std::vector<std::size_t> widths;
    if (!list[i].is_array()) throw ConfigError(w + " must be an array");
    for (const auto& v : list[i]) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw ConfigError(w + " widths must be integers >= 1");
      }
      widths.push_back(v.get<std::size_t>());
    }
    const auto cmp = checked(w, [&] {
      return fabric::shallow_vs_deep(total, widths, bus, tp, ctx.seed);
    });
    if (!wide) {
      wide = cmp.wide;
      out.summary.rows.push_back({join_widths(cmp.wide.widths), "1",
                                  num(cmp.wide.max_layer_transmission),
                                  num(cmp.wide.end_to_end), ""});
    }
    out.summary.rows.push_back(
        {join_widths(widths), std::to_string(widths.size()),
         num(cmp.layered.max_layer_transmission), num(cmp.layered.end_to_end),
         cmp.layered_faster ? "true" : "false"});
    arrangements.push_back(
        {{"widths", widths},
         {"layer_transmission", cmp.layered.layer_transmission},
         {"layer_apparent", cmp.layered.layer_apparent},
         {"max_layer_transmission", cmp.layered.max_layer_transmission},
         {"end_to_end", cmp.layered.end_to_end},
         {"layered_faster", cmp.layered_faster}});
    if (i == 0) {
      out.headline = {{"wide_max_transmission", cmp.wide.max_layer_transmission},
                      {"wide_end_to_end", cmp.wide.end_to_end},
                      {"layered_max_transmission",
                       cmp.layered.max_layer_transmission},
                      {"layered_end_to_end", cmp.layered.end_to_end}};
    }
  }
  out.summary_json["total_neurons"] = total;
  out.summary_json["tp"] = tp;
  out.summary_json["wide"] = {
      {"max_layer_transmission", wide->max_layer_transmission},
      {"end_to_end", wide->end_to_end}};
  out.summary_json["arrangements"] = std::move(arrangements);

  fabric::Core receiver{"receiver", {0.0, -1.0, 0.0}, 0.0};
  auto rep = fabric::shared_bus_transfer(
      fabric::layer_senders(total, fabric::LayerGeometry{}), bus, receiver,
      ctx.seed);
  require_ok(rep.run);
  out.trace = std::move(rep.run.trace);
  return out;
}

// --- perf fit ---------------------------------------------------------------------------

ScenarioResult run_perf_fit(const json& cfg, const Context& ctx) {
  const json& p = params(cfg);
  ScenarioResult out;
  out.summary.columns = {"machine", "k", "speedup", "fp0"};
  ojson fits = ojson::array();
  std::optional<double> first_fp0;
  if (const json* list = optional_field(p, "observations")) {
    if (!list->is_array()) {
      throw ConfigError("parameters.observations must be an array");
    }
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string w = where_index("parameters.observations", i);
      const json& o = (*list)[i];
      perf::BenchmarkObservation obs{text(o, "machine", w),
                                     number(o, "speedup", w),
                                     number_or(o, "k", 4.0, w)};
      const double fp0 = checked(w, [&] { return perf::fit_housekeeping(obs); });
      if (!first_fp0) first_fp0 = fp0;
      const double back = perf::operand_speedup(fp0, obs.operand_shrink);
      out.summary.rows.push_back({obs.machine, num(obs.operand_shrink),
                                  num(obs.speedup), num(fp0)});
      fits.push_back({{"machine", obs.machine},
                      {"k", obs.operand_shrink},
                      {"speedup", obs.speedup},
                      {"fp0", fp0},
                      {"reproduced_speedup", back}});
    }
  }
  const double k = number_or(p, "k", 4.0, kParams);
  const double fp0 = number_or(p, "fp0", 0.0, kParams);
  const double speedup =
      checked("parameters", [&] { return perf::operand_speedup(fp0, k); });

  if (const json* curve = optional_field(p, "curve")) {
    const std::string w = "parameters.curve";
    const double ck = number_or(*curve, "k", k, w);
    Table t;
    t.columns = {"fp0", "k", "speedup"};
    for (double f : numbers(*curve, "fp0", w)) {
      const double s = checked(w, [&] { return perf::operand_speedup(f, ck); });
      t.rows.push_back({num(f), num(ck), num(s)});
    }
    out.extra.push_back({"curve.csv", t.csv(ctx.comment)});
  }

  out.summary_json["observations"] = std::move(fits);
  out.summary_json["point"] = {{"fp0", fp0}, {"k", k}, {"speedup", speedup}};
  out.headline = {{"speedup", speedup}};
  if (first_fp0) out.headline.emplace_back("fp0_fit", *first_fp0);
  return out;
}

// --- efficiency sweep -----------------------------------------------------------------------

perf::WorkloadProfile profile_from(const json& j, std::string_view where,
                                   std::string_view default_label) {
  perf::WorkloadProfile prof{text_or(j, "label", default_label, where),
                             number_or(j, "fp0", 0.0, where),
                             number_or(j, "transfer_fraction", 0.0, where)};
  checked(where, [&] { perf::validate(prof); });
  return prof;
}

ScenarioResult run_efficiency_sweep(const json& cfg, const Context&) {
  const json& p = params(cfg);
  const json* bj = optional_field(p, "baseline");
  const auto baseline = profile_from(bj ? *bj : json::object(),
                                     "parameters.baseline", "baseline");
  std::vector<double> targets{10.0, 100.0, 250.0, 1000.0};
  if (optional_field(p, "ratio_targets")) {
    targets = numbers(p, "ratio_targets", kParams);
  }

  ScenarioResult out;
  out.summary.columns = {"profile", "fp0", "transfer_fraction", "efficiency",
                         "ratio"};
  auto add_row = [&](const perf::WorkloadProfile& prof) {
    const double e = perf::efficiency(prof);
    out.summary.rows.push_back({prof.label, num(prof.housekeeping),
                                num(prof.transfer_fraction), num(e),
                                num(perf::efficiency(baseline) / e)});
  };
  add_row(baseline);
  ojson profiles = ojson::array();
  if (const json* list = optional_field(p, "profiles")) {
    if (!list->is_array()) throw ConfigError("parameters.profiles must be an array");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto prof =
          profile_from((*list)[i], where_index("parameters.profiles", i), "profile");
      add_row(prof);
      profiles.push_back({{"label", prof.label},
                          {"efficiency", perf::efficiency(prof)},
                          {"ratio", perf::efficiency_ratio(baseline, prof)}});
    }
  }

  ojson thresholds = ojson::array();
  if (const json* sj = optional_field(p, "sweep")) {
    const std::string w = "parameters.sweep";
    const double lo = number_or(*sj, "from", 1e-3, w);
    const double hi = number_or(*sj, "to", 1e4, w);
    const auto per_decade = integer_or(*sj, "per_decade", 10, w);
    const std::string label = text_or(*sj, "label", "sweep", w);
    const auto grid = checked(w, [&] {
      return perf::log_grid(lo, hi, static_cast<int>(per_decade));
    });
    std::optional<double> hk;
    if (optional_field(*sj, "fp0")) hk = number(*sj, "fp0", w);
    const auto rows = checked(
        w, [&] { return perf::efficiency_sweep(baseline, grid, label, hk); });
    for (const auto& r : rows) {
      out.summary.rows.push_back({r.label, num(hk.value_or(baseline.housekeeping)),
                                  num(r.transfer_fraction), num(r.efficiency),
                                  num(r.ratio)});
    }
    for (double t : targets) {
      const auto hit = perf::first_fraction_reaching(rows, t);
      const double exact =
          checked(w, [&] { return perf::blocking_fraction_for_ratio(baseline, t); }) -
          hk.value_or(baseline.housekeeping);
      thresholds.push_back({{"ratio", t},
                            {"first_swept_fraction",
                             hit ? ojson(*hit) : ojson(nullptr)},
                            {"exact_fraction", exact}});
    }
  }

  perf::WorkloadProfile point{"point", number_or(p, "fp0", 0.0, kParams),
                              number_or(p, "transfer_fraction", 0.0, kParams)};
  checked("parameters", [&] { perf::validate(point); });
  const double e = perf::efficiency(point);

  out.summary_json["baseline"] = {{"label", baseline.label},
                                  {"fp0", baseline.housekeeping},
                                  {"transfer_fraction", baseline.transfer_fraction},
                                  {"efficiency", perf::efficiency(baseline)}};
  out.summary_json["profiles"] = std::move(profiles);
  out.summary_json["thresholds"] = std::move(thresholds);
  out.headline = {{"efficiency", e},
                  {"ratio", perf::efficiency(baseline) / e}};
  return out;
}

// --- assembly sync ------------------------------------------------------------------------------

ScenarioResult run_assembly_sync(const json& cfg, const Context& ctx) {
  const Geometry geo(cfg);
  const json& p = params(cfg);
  const double hz = number(p, "base_frequency", kParams);
  const auto base =
      checked("parameters.base_frequency", [&] { return neuro::BaseOscillator(hz); });
  const double eta = number_or(p, "eta", 1.0, kParams);
  const auto max_iter = integer_or(p, "max_iter", 100, kParams);
  neuro::LearningOptions opts;
  opts.tolerance_deg = number_or(p, "tolerance_deg", opts.tolerance_deg, kParams);
  opts.step = number_or(p, "step", opts.step, kParams);
  opts.charge = number_or(p, "charge", opts.charge, kParams);
  if (!(opts.step > 0.0)) throw ConfigError("parameters.step must be > 0");

  neuro::Assembly assembly;
  assembly.target_id = text_or(p, "target", "target", kParams);
  std::vector<neuro::Axon> axons;
  const json& members = array(p, "members", kParams);
  if (members.empty()) throw ConfigError("parameters.members is empty");
  bool any_reset = false;
  std::vector<Seconds> resets;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string w = where_index("parameters.members", i);
    const json& m = members[i];
    auto neuron = geo.neuron(text(m, "neuron", w), opts.step);
    const json& aj = field(m, "axon", w);
    neuro::Axon axon{neuron.id, assembly.target_id,
                     number(aj, "length", w + ".axon"),
                     number_or(aj, "base_velocity", 1.0, w + ".axon"),
                     number_or(aj, "myelination", 1.0, w + ".axon")};
    checked(w + ".axon", [&] { neuro::validate(axon); });
    any_reset = any_reset || optional_field(m, "reset_delay") != nullptr;
    resets.push_back(number_or(m, "reset_delay", 0.0, w));
    assembly.members.push_back(std::move(neuron));
    axons.push_back(axon);
  }
  if (any_reset) opts.reset_delays = resets;

  const auto report = checked("parameters", [&] {
    return neuro::learn_arrival_phase(assembly, axons, base, eta,
                                      static_cast<int>(max_iter), opts);
  });

  ScenarioResult out;
  out.trace = report.run.trace;
  out.summary.columns = {"member", "delay", "fire_offset", "emission_time",
                         "arrival_phase_deg"};
  for (std::size_t i = 0; i < assembly.members.size(); ++i) {
    out.summary.rows.push_back(
        {assembly.members[i].id, num(neuro::conduction_delay(axons[i])),
         num(report.offsets[i]), num(report.emission_times[i]),
         num(report.arrival_phases[i])});
  }

  Table raster;
  raster.columns = {"neuron", "emit_time", "arrival_time", "target", "phase_deg",
                    "biological_timestamp"};
  for (const auto& r : report.raster) {
    raster.rows.push_back({r.neuron, num(r.emit_time), num(r.arrival_time),
                           r.target, num(r.phase_deg),
                           num(r.biological_timestamp)});
  }
  out.extra.push_back({"raster.csv", raster.csv(ctx.comment)});

  ojson conv = {{"units", ctx.units},
                {"seed", ctx.seed},
                {"converged", report.converged},
                {"iterations", report.iterations},
                {"spread_history", report.spread_history},
                {"charge_history", report.charge_history},
                {"offsets", ojson::object()}};
  for (std::size_t i = 0; i < assembly.members.size(); ++i) {
    conv["offsets"][assembly.members[i].id] = report.offsets[i];
  }
  out.extra.push_back({"convergence.json", conv.dump(2) + "\n"});

  out.summary_json["converged"] = report.converged;
  out.summary_json["iterations"] = report.iterations;
  out.summary_json["final_spread_deg"] = report.spread_history.back();
  out.headline = {{"iterations", static_cast<double>(report.iterations)},
                  {"final_spread_deg", report.spread_history.back()},
                  {"converged", report.converged ? 1.0 : 0.0}};
  return out;
}

// --- feedback staleness ---------------------------------------------------------------------------

ScenarioResult run_feedback(const json& cfg, const Context& ctx) {
  const json& p = params(cfg);
  const double cycle = number(p, "cycle_length", kParams);
  const auto threshold = integer(p, "drop_threshold", kParams);
  neuro::FeedbackQueue queue =
      checked("parameters.drop_threshold",
              [&] { return neuro::FeedbackQueue(static_cast<int>(threshold)); });
  neuro::BusySchedule busy;
  if (const json* list = optional_field(p, "busy")) {
    if (!list->is_array()) throw ConfigError("parameters.busy must be an array");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string w = where_index("parameters.busy", i);
      busy.add(integer((*list)[i], "first", w), integer((*list)[i], "count", w));
    }
  }
  const json& items = array(p, "items", kParams);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string w = where_index("parameters.items", i);
    const double stamp = number(items[i], "stamp", w);
    const double delay = number(items[i], "delay", w);
    if (delay < 0.0) throw ConfigError(w + ".delay must be >= 0");
    checked(w, [&] {
      queue.push({text(items[i], "source", w), stamp, stamp + delay});
    });
  }
  const std::string receiver = text_or(p, "receiver", "receiver", kParams);

  auto res = checked("parameters", [&] {
    return neuro::feedback_round(queue, busy, cycle, receiver, ctx.seed);
  });
  require_ok(res.run);

  ScenarioResult out;
  out.trace = res.run.trace;
  out.summary.columns = {"source", "stamp", "arrival", "outcome", "time",
                         "staleness", "waited_cycles"};
  for (const auto& d : res.delivered) {
    out.summary.rows.push_back({d.item.source_id, num(d.item.biological_timestamp),
                                num(d.item.arrival_time), "delivered",
                                num(d.delivered_at), num(d.staleness),
                                std::to_string(d.waited_cycles)});
  }
  for (const auto& d : res.dropped) {
    out.summary.rows.push_back({d.item.source_id, num(d.item.biological_timestamp),
                                num(d.item.arrival_time), "dropped",
                                num(d.dropped_at), "",
                                std::to_string(d.waited_cycles)});
  }
  out.summary_json["drop_threshold"] = threshold;
  out.summary_json["delivered"] = res.delivered.size();
  out.summary_json["dropped"] = res.dropped.size();
  out.summary_json["staleness"] = {{"count", res.staleness.count},
                                   {"mean", res.staleness.mean},
                                   {"min", res.staleness.min},
                                   {"max", res.staleness.max}};
  out.headline = {{"delivered", static_cast<double>(res.delivered.size())},
                  {"dropped", static_cast<double>(res.dropped.size())},
                  {"mean_staleness", res.staleness.mean}};
  return out;
}

}  // namespace

std::string Table::csv(std::string_view comment) const {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(columns[i]);
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

ScenarioResult run_kind(const std::string& kind, const json& config,
                        const Context& context) {
  if (kind == "lightcone") return run_lightcone(config, context);
  if (kind == "cache") return run_cache(config, context);
  if (kind == "bus") return run_bus(config, context);
  if (kind == "hidden-layer") return run_hidden_layer(config, context);
  if (kind == "shallow-deep") return run_shallow_deep(config, context);
  if (kind == "perf-fit") return run_perf_fit(config, context);
  if (kind == "efficiency-sweep") return run_efficiency_sweep(config, context);
  if (kind == "assembly-sync") return run_assembly_sync(config, context);
  if (kind == "feedback-staleness") return run_feedback(config, context);
  throw ConfigError("unknown scenario kind '" + kind + "'");
}

bool integer_parameter(const std::string& kind, const std::string& param) {
  return (param == "L" && (kind == "bus" || kind == "hidden-layer")) ||
         (param == "drop_threshold" && kind == "feedback-staleness") ||
         (param == "max_iter" && kind == "assembly-sync");
}

void apply_sweep_value(const std::string& kind, json& config,
                       const std::string& param, double value) {
  json& p = config["parameters"];
  auto set_bus_field = [&](const char* key) {
    json& bus = component_by_id(config, p.at("bus").get<std::string>());
    bus[key] = value;
  };
  auto set_all = [&](const char* type, const char* key) {
    for (auto& c : config["components"]) {
      if (c.value("type", "") == type) c[key] = value;
    }
  };
  const auto as_int = static_cast<std::int64_t>(std::llround(value));

  if (kind == "lightcone") {
    if (param == "tp") return set_all("core", "tp");
    if (param == "speed") {
      for (auto& o : p.at("observers")) o["speed"] = value;
      return;
    }
  } else if (kind == "cache") {
    if (param == "operate_time") return set_all("cache", "operate_time");
    if (param == "speed") {
      p["speed"] = value;
      return;
    }
  } else if (kind == "bus" || kind == "hidden-layer") {
    if (param == "L") {
      if (kind == "bus") {
        p.erase("senders");
        p["layer_size"] = as_int;
      } else {
        p["layer_sizes"] = json::array({as_int});
      }
      return;
    }
    if (param == "t_b") return set_bus_field("t_b");
    if (param == "t_d") return set_bus_field("t_d");
    if (param == "x" && kind == "bus") {
      json& bus = component_by_id(config, p.at("bus").get<std::string>());
      bus["foreign"]["value"] = value;
      if (!bus["foreign"].contains("kind")) bus["foreign"]["kind"] = "constant";
      return;
    }
  } else if (kind == "shallow-deep") {
    if (param == "tp") {
      p["tp"] = value;
      return;
    }
    if (param == "t_b") return set_bus_field("t_b");
  } else if (kind == "perf-fit") {
    if (param == "fp0" || param == "k") {
      p[param] = value;
      return;
    }
  } else if (kind == "efficiency-sweep") {
    if (param == "transfer_fraction" || param == "fp0") {
      p[param] = value;
      return;
    }
  } else if (kind == "assembly-sync") {
    if (param == "eta" || param == "base_frequency") {
      p[param] = value;
      return;
    }
    if (param == "max_iter") {
      p[param] = as_int;
      return;
    }
  } else if (kind == "feedback-staleness") {
    if (param == "drop_threshold") {
      p[param] = as_int;
      return;
    }
    if (param == "cycle_length") {
      p[param] = value;
      return;
    }
  }
  throw ConfigError("parameter '" + param + "' is not sweepable for scenario '" +
                    kind + "'");
}

}  // namespace tempologic::scenario::detail
