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

#include <any>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempologic/timespace.hpp"

namespace tempologic::sim {

using ComponentId = std::uint32_t;

enum class EventKind {
  signal_arrival,
  bus_request,
  bus_grant,
  bus_delivery,
  spike,
  base_tick,
  feedback,
  process_done,
};

std::string_view to_string(EventKind kind);

struct SimEvent {
  Seconds fire_time = 0.0;
  std::uint64_t seq = 0;  // assigned by Engine::schedule
  ComponentId source = 0;
  ComponentId target = 0;
  EventKind kind = EventKind::signal_arrival;
  std::string detail;  // copied into the trace record on dispatch
  std::any payload;
};

/// One line of the machine-readable time-space diagram.
struct TraceRecord {
  std::uint64_t seq = 0;  // row index; dispatch order
  Seconds time = 0.0;
  std::string component;
  std::string kind;
  SpatialPoint position;
  std::string detail;
};

class Engine;

class Component {
 public:
  virtual ~Component() = default;
  virtual void handle(const SimEvent& event, Engine& engine) = 0;
};

using Handler = std::function<void(const SimEvent&, Engine&)>;

struct RunResult {
  std::vector<TraceRecord> trace;
  bool ok = true;
  std::string error;
};

/// Single-clock, strictly sequential event kernel. Pending events pop in
/// (fire_time, seq) order; seq is a per-engine counter, so simultaneous
/// events dispatch in scheduling order.
class Engine {
 public:
  explicit Engine(std::uint64_t seed = 0);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  ComponentId add(std::string name, SpatialPoint position,
                  std::unique_ptr<Component> component);
  ComponentId add(std::string name, SpatialPoint position, Handler handler);

  template <class C, class... Args>
  C& emplace(std::string name, SpatialPoint position, Args&&... args) {
    auto owned = std::make_unique<C>(std::forward<Args>(args)...);
    C& ref = *owned;
    add(std::move(name), position, std::move(owned));
    return ref;
  }

  /// Throws CausalityError when fire_time is before now() or not finite.
  std::uint64_t schedule(SimEvent event);
  std::uint64_t schedule(Seconds fire_time, ComponentId source,
                         ComponentId target, EventKind kind,
                         std::string detail = {}, std::any payload = {});

  /// Appends an annotation row (idle interval, drop, glitch window) at now().
  void annotate(ComponentId component, std::string_view kind,
                std::string detail);

  /// Dispatches every event with fire_time <= t_end. A handler exception
  /// aborts the run; the partial trace is returned with an error row.
  RunResult run_until(Seconds t_end);

  /// Dispatches until the queue drains; now() ends at the last fire time.
  RunResult run();

  Seconds now() const noexcept { return now_; }
  std::size_t pending() const noexcept { return queue_.size(); }
  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

  const std::string& name(ComponentId id) const;
  const SpatialPoint& position(ComponentId id) const;
  std::size_t component_count() const noexcept { return slots_.size(); }

  /// The only randomness source available to components.
  std::mt19937_64& rng() noexcept { return rng_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  struct Slot {
    std::string name;
    SpatialPoint position;
    std::unique_ptr<Component> component;
  };
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.seq > b.seq;
    }
  };

  RunResult dispatch(Seconds t_end);
  void record(ComponentId component, std::string kind, std::string detail);

  std::vector<Slot> slots_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
  std::vector<TraceRecord> trace_;
  Seconds now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Trace CSV, columns exactly seq,time,component,kind,x,y,detail. The
/// optional comment line (written with a leading "# ") precedes the header.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace,
                     std::string_view comment = {});
std::string trace_csv(std::span<const TraceRecord> trace,
                      std::string_view comment = {});

}  // namespace tempologic::sim
