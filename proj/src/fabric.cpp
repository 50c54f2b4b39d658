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

#include "tempologic/fabric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "tempologic/errors.hpp"
#include "tempologic/numfmt.hpp"

namespace tempologic::fabric {

namespace {

using sim::ComponentId;
using sim::Engine;
using sim::EventKind;
using sim::SimEvent;

void require_time(Seconds value, const std::string& what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(what + " must be finite and >= 0");
  }
}

std::string interval(Seconds from, Seconds to) {
  return "from=" + format_number(from) + " to=" + format_number(to);
}

}  // namespace

void validate(const Core& core) {
  require_finite(core.position);
  require_time(core.processing, "processing time of core '" + core.id + "'");
}

void validate(const CacheMemory& cache) {
  require_finite(cache.position);
  if (!std::isfinite(cache.operate_time) || cache.operate_time <= 0.0) {
    throw DomainError("operate time of cache '" + cache.id + "' must be > 0");
  }
}

void validate(const BusChannel& bus) {
  require_finite(bus.position);
  require_time(bus.arbitration, "bus arbitration time");
  require_time(bus.delivery, "bus delivery time");
  require_time(bus.foreign.value, "foreign bus load");
}

// --- two-light experiment ---------------------------------------------------

LightConeReport simulate_light_cone(const Core& source,
                                    std::span<const Observer> observers,
                                    std::uint64_t seed) {
  validate(source);
  for (const auto& o : observers) validate(o.core);

  Engine engine(seed);
  LightConeReport report;
  report.observers.resize(observers.size());

  std::vector<ComponentId> observer_ids;
  const ComponentId src = engine.add(
      source.id, source.position,
      [&](const SimEvent& e, Engine& eng) {
        if (e.kind == EventKind::signal_arrival) {
          eng.schedule(eng.now() + source.processing, e.target, e.target,
                       EventKind::process_done, "light on");
          return;
        }
        report.source_done = eng.now();
        for (std::size_t i = 0; i < observers.size(); ++i) {
          const Seconds delay = propagation_delay(
              source.position, observers[i].core.position, observers[i].speed);
          eng.schedule(eng.now() + delay, e.target, observer_ids[i],
                       EventKind::signal_arrival, "light from " + source.id);
        }
      });

  for (std::size_t i = 0; i < observers.size(); ++i) {
    const Core& core = observers[i].core;
    ObserverTiming& timing = report.observers[i];
    timing.id = core.id;
    observer_ids.push_back(engine.add(
        core.id, core.position, [&core, &timing](const SimEvent& e, Engine& eng) {
          if (e.kind == EventKind::signal_arrival) {
            timing.notice_time = eng.now();
            eng.schedule(eng.now() + core.processing, e.target, e.target,
                         EventKind::process_done, "light on");
          } else {
            timing.cone_start = eng.now();
          }
        }));
  }

  engine.schedule(0.0, src, src, EventKind::signal_arrival,
                  "instruction received");
  report.run = engine.run();

  for (auto& timing : report.observers) {
    timing.transmission = timing.notice_time - report.source_done;
    timing.traced_apparent_time =
        std::hypot(timing.transmission, timing.cone_start);
  }
  return report;
}

// --- cache placement ------------------------------------------------------------

CacheRun simulate_cache_accesses(std::span<const CacheAccess> accesses,
                                 InteractionSpeed v, std::uint64_t seed) {
  Engine engine(seed);
  CacheRun out;
  out.accesses.resize(accesses.size());

  // Shared components are registered once even if several accesses use them.
  std::map<std::string, ComponentId> ids;
  std::vector<std::pair<ComponentId, ComponentId>> endpoints;
  struct Leg {
    std::size_t access;
    bool returning;
  };

  auto make_handler = [&](bool is_core) {
    return [&, is_core](const SimEvent& e, Engine& eng) {
      const auto leg = std::any_cast<Leg>(e.payload);
      const CacheAccess& acc = accesses[leg.access];
      CacheAccessReport& rep = out.accesses[leg.access];
      const auto [core_id, cache_id] = endpoints[leg.access];
      if (is_core && e.kind == EventKind::process_done) {
        // Request issued: travels to the cache.
        eng.schedule(eng.now() + rep.one_way, core_id, cache_id,
                     EventKind::signal_arrival, "request from " + acc.core.id,
                     Leg{leg.access, false});
      } else if (!is_core && e.kind == EventKind::signal_arrival) {
        rep.cache_idle = eng.now();
        eng.annotate(cache_id, "idle", interval(0.0, eng.now()));
        eng.schedule(eng.now() + acc.cache.operate_time, cache_id, cache_id,
                     EventKind::process_done, "data ready for " + acc.core.id,
                     Leg{leg.access, true});
      } else if (!is_core && e.kind == EventKind::process_done) {
        eng.schedule(eng.now() + rep.one_way, cache_id, core_id,
                     EventKind::signal_arrival, "data from " + acc.cache.id,
                     Leg{leg.access, true});
      } else if (is_core && e.kind == EventKind::signal_arrival) {
        rep.apparent_access_time = eng.now();
        rep.core_idle = eng.now();
        eng.annotate(core_id, "idle", interval(0.0, eng.now()));
      }
    };
  };

  for (std::size_t i = 0; i < accesses.size(); ++i) {
    const auto& acc = accesses[i];
    validate(acc.core);
    validate(acc.cache);
    auto core_it = ids.find(acc.core.id);
    if (core_it == ids.end()) {
      core_it = ids.emplace(acc.core.id,
                            engine.add(acc.core.id, acc.core.position,
                                       make_handler(true)))
                    .first;
    }
    auto cache_it = ids.find(acc.cache.id);
    if (cache_it == ids.end()) {
      cache_it = ids.emplace(acc.cache.id,
                             engine.add(acc.cache.id, acc.cache.position,
                                        make_handler(false)))
                     .first;
    }
    endpoints.emplace_back(core_it->second, cache_it->second);
    auto& rep = out.accesses[i];
    rep.core_id = acc.core.id;
    rep.cache_id = acc.cache.id;
    rep.one_way = propagation_delay(acc.core.position, acc.cache.position, v);
  }

  for (std::size_t i = 0; i < accesses.size(); ++i) {
    const auto core_id = endpoints[i].first;
    engine.schedule(0.0, core_id, core_id, EventKind::process_done,
                    "access " + accesses[i].cache.id, Leg{i, false});
  }
  out.run = engine.run();
  for (auto& rep : out.accesses) {
    rep.apparent_speed = 1.0 / rep.apparent_access_time;
  }
  return out;
}

CacheAccessReport cache_access_scenario(const Core& core,
                                        const CacheMemory& cache,
                                        InteractionSpeed v) {
  const CacheAccess access{core, cache};
  return simulate_cache_accesses(std::span(&access, 1), v).accesses.front();
}

// --- shared serial bus --------------------------------------------------------------

BusReport shared_bus_transfer(std::span<const Core> senders,
                              const BusChannel& bus, const Core& receiver,
                              std::uint64_t seed) {
  if (senders.empty()) throw DomainError("shared bus needs at least one sender");
  validate(bus);
  validate(receiver);
  for (const auto& s : senders) validate(s);

  Engine engine(seed);
  BusReport report;

  struct Request {
    std::size_t sender;
    Seconds time;
  };
  std::vector<ComponentId> sender_ids(senders.size());
  std::vector<Request> pending;
  bool arbitrating = false;
  Seconds busy_until = -std::numeric_limits<Seconds>::infinity();
  std::size_t arrivals = 0;
  ComponentId arbiter = 0;
  ComponentId sink = 0;

  auto draw_foreign = [&bus](Engine& eng) -> Seconds {
    if (bus.foreign.kind == ForeignLoad::Kind::constant ||
        bus.foreign.value == 0.0) {
      return bus.foreign.value;
    }
    std::exponential_distribution<double> dist(1.0 / bus.foreign.value);
    return dist(eng.rng());
  };

  // Nearest to the arbiter first; equal distances fall back to the id.
  auto pick = [&]() {
    auto best = pending.begin();
    for (auto it = pending.begin() + 1; it != pending.end(); ++it) {
      const double d_it = distance(senders[it->sender].position, bus.position);
      const double d_best =
          distance(senders[best->sender].position, bus.position);
      if (d_it < d_best ||
          (d_it == d_best && senders[it->sender].id < senders[best->sender].id)) {
        best = it;
      }
    }
    const Request chosen = *best;
    pending.erase(best);
    return chosen;
  };

  arbiter = engine.add(bus.id, bus.position, [&](const SimEvent& e,
                                                 Engine& eng) {
    switch (e.kind) {
      case EventKind::bus_request: {
        pending.push_back(std::any_cast<Request>(e.payload));
        if (!arbitrating) {
          arbitrating = true;
          // Scheduled after every request already queued for this instant.
          eng.schedule(eng.now(), arbiter, arbiter, EventKind::bus_grant,
                       "arbitrate");
        }
        break;
      }
      case EventKind::bus_grant: {
        if (pending.empty()) {
          arbitrating = false;
          break;
        }
        const Request req = pick();
        BusTransfer t;
        t.sender_id = senders[req.sender].id;
        t.grant_index = report.transfers.size() + 1;
        t.request_time = req.time;
        t.grant_time = eng.now();
        t.reach_time = eng.now() + 2.0 * bus.arbitration;
        report.transfers.push_back(t);
        eng.schedule(eng.now(), arbiter, sender_ids[req.sender],
                     EventKind::bus_grant,
                     "grant " + std::to_string(t.grant_index) + " by " + bus.id);
        eng.schedule(t.reach_time, sender_ids[req.sender], arbiter,
                     EventKind::bus_delivery, "data from " + t.sender_id,
                     report.transfers.size() - 1);
        break;
      }
      case EventKind::bus_delivery: {
        auto& t = report.transfers.at(std::any_cast<std::size_t>(e.payload));
        t.foreign = draw_foreign(eng);
        t.delivery_start = std::max(eng.now() + t.foreign, busy_until);
        t.delivery_end = t.delivery_start + bus.delivery;
        busy_until = t.delivery_end;
        eng.annotate(arbiter, "bus-busy",
                     "sender=" + t.sender_id + " " +
                         interval(t.delivery_start, t.delivery_end));
        eng.schedule(t.delivery_end, arbiter, sink, EventKind::signal_arrival,
                     "input from " + t.sender_id);
        // The next grant goes out as soon as this data is on the bus.
        eng.schedule(eng.now(), arbiter, arbiter, EventKind::bus_grant,
                     "arbitrate");
        break;
      }
      default:
        break;
    }
  });

  for (std::size_t i = 0; i < senders.size(); ++i) {
    const Core& s = senders[i];
    sender_ids[i] = engine.add(s.id, s.position, [&, i](const SimEvent& e,
                                                        Engine& eng) {
      if (e.kind == EventKind::process_done) {
        eng.schedule(eng.now(), sender_ids[i], arbiter, EventKind::bus_request,
                     "from " + senders[i].id, Request{i, eng.now()});
      }
    });
  }

  sink = engine.add(receiver.id, receiver.position,
                    [&](const SimEvent& e, Engine& eng) {
                      if (e.kind != EventKind::signal_arrival) return;
                      if (arrivals++ == 0) report.first_arrival = eng.now();
                      report.last_arrival = eng.now();
                      if (arrivals < senders.size()) return;
                      report.receiver_start = eng.now();
                      if (report.last_arrival > report.first_arrival) {
                        eng.annotate(sink, "glitch-window",
                                     "output invalid " +
                                         interval(report.first_arrival,
                                                  report.last_arrival));
                      }
                      eng.schedule(eng.now() + receiver.processing, sink, sink,
                                   EventKind::process_done, "all inputs processed");
                    });

  for (std::size_t i = 0; i < senders.size(); ++i) {
    engine.schedule(senders[i].processing, sender_ids[i], sender_ids[i],
                    EventKind::process_done, "result ready");
  }
  report.run = engine.run();

  Seconds earliest = std::numeric_limits<Seconds>::infinity();
  for (const auto& s : senders) earliest = std::min(earliest, s.processing);
  report.receiver_transmission = report.last_arrival - earliest;
  return report;
}

ParallelReport parallel_transfer(std::span<const Core> senders,
                                 const Core& receiver, InteractionSpeed v,
                                 std::uint64_t seed) {
  if (senders.empty()) throw DomainError("parallel links need a sender");
  validate(receiver);
  Engine engine(seed);
  ParallelReport report;
  std::size_t arrivals = 0;
  Seconds last = 0.0;

  const ComponentId sink = engine.add(
      receiver.id, receiver.position, [&](const SimEvent& e, Engine& eng) {
        if (e.kind != EventKind::signal_arrival) return;
        last = eng.now();
        if (++arrivals == senders.size()) {
          report.receiver_start = eng.now();
          eng.schedule(eng.now() + receiver.processing, e.target, e.target,
                       EventKind::process_done, "all inputs processed");
        }
      });

  std::vector<ComponentId> ids;
  for (const auto& s : senders) {
    validate(s);
    const Seconds delay = propagation_delay(s.position, receiver.position, v);
    report.links.push_back(ParallelLink{s.id, receiver.id, delay});
    ids.push_back(engine.add(
        s.id, s.position, [sink, delay, id = s.id](const SimEvent& e,
                                                   Engine& eng) {
          if (e.kind == EventKind::process_done) {
            eng.schedule(eng.now() + delay, e.target, sink,
                         EventKind::signal_arrival, "input from " + id);
          }
        }));
  }
  Seconds earliest = std::numeric_limits<Seconds>::infinity();
  for (std::size_t i = 0; i < senders.size(); ++i) {
    earliest = std::min(earliest, senders[i].processing);
    engine.schedule(senders[i].processing, ids[i], ids[i],
                    EventKind::process_done, "result ready");
  }
  report.run = engine.run();
  report.receiver_transmission = last - earliest;
  return report;
}

// --- layer scaling --------------------------------------------------------------------

std::string_view to_string(Topology topology) {
  return topology == Topology::shared_bus ? "shared-bus" : "parallel";
}

std::vector<Core> layer_senders(std::size_t layer_size,
                                const LayerGeometry& geometry) {
  std::vector<Core> out;
  out.reserve(layer_size);
  for (std::size_t i = 0; i < layer_size; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(layer_size);
    Core c;
    c.id = "n" + std::to_string(i);
    c.position = {geometry.receiver.x + geometry.radius * std::cos(angle),
                  geometry.receiver.y + geometry.radius * std::sin(angle),
                  geometry.receiver.z};
    out.push_back(std::move(c));
  }
  return out;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("line fit needs at least two paired samples");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("line fit needs distinct x values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ScalingTable hidden_layer_scaling(std::span<const std::size_t> layer_sizes,
                                  const BusChannel& bus, Topology topology,
                                  const LayerGeometry& geometry,
                                  std::uint64_t seed) {
  ScalingTable table;
  table.topology = topology;
  const Core receiver{"receiver", geometry.receiver, 0.0};
  for (std::size_t size : layer_sizes) {
    if (size == 0) throw DomainError("layer size must be >= 1");
    const auto senders = layer_senders(size, geometry);
    const Seconds tt =
        topology == Topology::shared_bus
            ? shared_bus_transfer(senders, bus, receiver, seed)
                  .receiver_transmission
            : parallel_transfer(senders, receiver,
                                InteractionSpeed(geometry.speed), seed)
                  .receiver_transmission;
    table.rows.push_back({size, tt});
  }
  if (table.rows.size() >= 2) {
    std::vector<double> xs, ys;
    for (const auto& r : table.rows) {
      xs.push_back(static_cast<double>(r.layer_size));
      ys.push_back(r.transmission);
    }
    table.fit = least_squares(xs, ys);
  }
  return table;
}

// --- shallow vs deep ---------------------------------------------------------------------

ArrangementTiming evaluate_arrangement(std::span<const std::size_t> widths,
                                       const BusChannel& bus,
                                       Seconds processing,
                                       std::uint64_t seed) {
  require_time(processing, "processing time");
  ArrangementTiming out;
  out.widths.assign(widths.begin(), widths.end());
  const Core receiver{"receiver", {0.0, -1.0, 0.0}, 0.0};
  for (std::size_t width : widths) {
    if (width == 0) throw DomainError("layer width must be >= 1");
    const auto senders = layer_senders(width, LayerGeometry{});
    const Seconds tt =
        shared_bus_transfer(senders, bus, receiver, seed).receiver_transmission;
    const Seconds ta = apparent_processing_time(processing, tt);
    out.layer_transmission.push_back(tt);
    out.layer_apparent.push_back(ta);
    out.max_layer_transmission = std::max(out.max_layer_transmission, tt);
    out.end_to_end += ta;
  }
  return out;
}

ShallowDeepComparison shallow_vs_deep(std::size_t total_neurons,
                                      std::span<const std::size_t> widths,
                                      const BusChannel& bus,
                                      Seconds processing,
                                      std::uint64_t seed) {
  if (total_neurons == 0) throw DomainError("network needs neurons");
  if (widths.empty()) throw DomainError("arrangement needs at least one layer");
  const std::size_t sum = std::accumulate(widths.begin(), widths.end(),
                                          std::size_t{0});
  if (sum != total_neurons) {
    throw DomainError("layer widths sum to " + std::to_string(sum) +
                      ", expected " + std::to_string(total_neurons));
  }
  ShallowDeepComparison out;
  const std::size_t wide[] = {total_neurons};
  out.wide = evaluate_arrangement(wide, bus, processing, seed);
  out.layered = evaluate_arrangement(widths, bus, processing, seed);
  out.layered_faster =
      out.layered.max_layer_transmission < out.wide.max_layer_transmission;
  return out;
}

}  // namespace tempologic::fabric
