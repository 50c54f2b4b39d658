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

#include "tempologic/engine.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "tempologic/errors.hpp"
#include "tempologic/numfmt.hpp"

namespace tempologic::sim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::signal_arrival: return "signal-arrival";
    case EventKind::bus_request: return "bus-request";
    case EventKind::bus_grant: return "bus-grant";
    case EventKind::bus_delivery: return "bus-delivery";
    case EventKind::spike: return "spike";
    case EventKind::base_tick: return "base-tick";
    case EventKind::feedback: return "feedback";
    case EventKind::process_done: return "process-done";
  }
  return "unknown";
}

namespace {

class HandlerComponent final : public Component {
 public:
  explicit HandlerComponent(Handler handler) : handler_(std::move(handler)) {}
  void handle(const SimEvent& event, Engine& engine) override {
    handler_(event, engine);
  }

 private:
  Handler handler_;
};

}  // namespace

Engine::Engine(std::uint64_t seed) : seed_(seed), rng_(seed) {}

ComponentId Engine::add(std::string name, SpatialPoint position,
                        std::unique_ptr<Component> component) {
  require_finite(position);
  if (!component) throw DomainError("component must not be null");
  slots_.push_back(Slot{std::move(name), position, std::move(component)});
  return static_cast<ComponentId>(slots_.size() - 1);
}

ComponentId Engine::add(std::string name, SpatialPoint position,
                        Handler handler) {
  return add(std::move(name), position,
             std::make_unique<HandlerComponent>(std::move(handler)));
}

std::uint64_t Engine::schedule(SimEvent event) {
  if (!std::isfinite(event.fire_time)) {
    throw CausalityError("event fire time must be finite");
  }
  if (event.fire_time < now_) {
    throw CausalityError("event scheduled at " +
                         format_number(event.fire_time) +
                         " before engine time " + format_number(now_));
  }
  if (event.target >= slots_.size() || event.source >= slots_.size()) {
    throw DomainError("event refers to an unknown component");
  }
  event.seq = next_seq_++;
  const auto seq = event.seq;
  queue_.push(std::move(event));
  return seq;
}

std::uint64_t Engine::schedule(Seconds fire_time, ComponentId source,
                               ComponentId target, EventKind kind,
                               std::string detail, std::any payload) {
  SimEvent e;
  e.fire_time = fire_time;
  e.source = source;
  e.target = target;
  e.kind = kind;
  e.detail = std::move(detail);
  e.payload = std::move(payload);
  return schedule(std::move(e));
}

void Engine::record(ComponentId component, std::string kind,
                    std::string detail) {
  TraceRecord r;
  r.seq = trace_.size();
  r.time = now_;
  r.component = slots_.at(component).name;
  r.kind = std::move(kind);
  r.position = slots_.at(component).position;
  r.detail = std::move(detail);
  trace_.push_back(std::move(r));
}

void Engine::annotate(ComponentId component, std::string_view kind,
                      std::string detail) {
  record(component, std::string(kind), std::move(detail));
}

RunResult Engine::run_until(Seconds t_end) {
  if (!std::isfinite(t_end) || t_end < now_) {
    throw CausalityError("run_until target precedes engine time");
  }
  RunResult result = dispatch(t_end);
  if (result.ok) now_ = t_end;
  return result;
}

RunResult Engine::run() {
  return dispatch(std::numeric_limits<Seconds>::infinity());
}

RunResult Engine::dispatch(Seconds t_end) {
  RunResult result;
  while (!queue_.empty() && queue_.top().fire_time <= t_end) {
    // priority_queue::top is const; the event is moved out before pop.
    SimEvent event = std::move(const_cast<SimEvent&>(queue_.top()));
    queue_.pop();
    now_ = event.fire_time;
    record(event.target, std::string(to_string(event.kind)), event.detail);
    try {
      slots_[event.target].component->handle(event, *this);
    } catch (const std::exception& ex) {
      result.ok = false;
      result.error = ex.what();
      record(event.target, "error", ex.what());
      result.trace = trace_;
      return result;
    }
  }
  result.trace = trace_;
  return result;
}

const std::string& Engine::name(ComponentId id) const {
  return slots_.at(id).name;
}

const SpatialPoint& Engine::position(ComponentId id) const {
  return slots_.at(id).position;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace,
                     std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "seq,time,component,kind,x,y,detail\n";
  for (const auto& r : trace) {
    out << r.seq << ',' << format_number(r.time) << ','
        << csv_field(r.component) << ',' << csv_field(r.kind) << ','
        << format_number(r.position.x) << ',' << format_number(r.position.y)
        << ',' << csv_field(r.detail) << '\n';
  }
}

std::string trace_csv(std::span<const TraceRecord> trace,
                      std::string_view comment) {
  std::ostringstream out;
  write_trace_csv(out, trace, comment);
  return out.str();
}

}  // namespace tempologic::sim
