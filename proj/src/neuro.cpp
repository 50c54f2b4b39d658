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

#include "tempologic/neuro.hpp"

#include <algorithm>
#include <any>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tempologic/errors.hpp"
#include "tempologic/numfmt.hpp"

namespace tempologic::neuro {

namespace {

using sim::ComponentId;
using sim::Engine;
using sim::EventKind;
using sim::SimEvent;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

// Offset folded into one base period, [0, period).
Seconds fold(Seconds offset, Seconds period) {
  Seconds r = std::fmod(offset, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace

void validate(const OscillatorNeuron& n) {
  require_finite(n.position);
  if (!std::isfinite(n.rc) || n.rc <= 0.0) {
    throw DomainError("rc of neuron '" + n.id + "' must be > 0");
  }
  if (!std::isfinite(n.v_th) || !std::isfinite(n.i_th) ||
      !std::isfinite(n.potential) || !std::isfinite(n.fire_offset)) {
    throw DomainError("neuron '" + n.id + "' has non-finite state");
  }
  if (!(n.phase >= 0.0 && n.phase < kTwoPi)) {
    throw DomainError("phase of neuron '" + n.id + "' must lie in [0, 2 pi)");
  }
}

void validate(const Axon& a) {
  if (!std::isfinite(a.length) || a.length < 0.0) {
    throw DomainError("axon length must be finite and >= 0");
  }
  if (!std::isfinite(a.base_velocity) || a.base_velocity <= 0.0) {
    throw DomainError("axon base velocity must be > 0");
  }
  if (!(a.myelination >= 1.0 && a.myelination <= 60.0)) {
    throw DomainError("myelination factor must lie in [1, 60]");
  }
}

Seconds conduction_delay(const Axon& axon) {
  validate(axon);
  return axon.length / (axon.base_velocity * axon.myelination);
}

BaseOscillator::BaseOscillator(double hz) : hz_(hz) {
  if (!(hz >= kMinHz && hz <= kMaxHz)) {
    throw DomainError("base frequency " + format_number(hz) +
                      " Hz is outside [0.02, 600]");
  }
}

double wrap_degrees(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;
  return r;
}

double signed_degrees(double degrees) {
  double r = wrap_degrees(degrees);
  return r > 180.0 ? r - 360.0 : r;
}

double phase_shift(Seconds delay, double hz) {
  if (!std::isfinite(delay) || delay < 0.0) {
    throw DomainError("delay must be finite and >= 0");
  }
  if (!std::isfinite(hz) || hz <= 0.0) {
    throw DomainError("frequency must be > 0");
  }
  return wrap_degrees(360.0 * (delay * hz));
}

double circular_mean(std::span<const double> degrees) {
  double s = 0.0;
  double c = 0.0;
  for (double d : degrees) {
    s += std::sin(to_radians(d));
    c += std::cos(to_radians(d));
  }
  return wrap_degrees(std::atan2(s, c) * 180.0 / std::numbers::pi);
}

double circular_spread(std::span<const double> degrees) {
  if (degrees.size() < 2) return 0.0;
  const double mean = circular_mean(degrees);
  double lo = 180.0;
  double hi = -180.0;
  for (double d : degrees) {
    const double dev = signed_degrees(d - mean);
    lo = std::min(lo, dev);
    hi = std::max(hi, dev);
  }
  return hi - lo;
}

double superposed_charge(std::span<const double> phases_deg, double charge) {
  const double mean = circular_mean(phases_deg);
  double total = 0.0;
  for (double p : phases_deg) {
    total += charge * std::cos(to_radians(signed_degrees(p - mean)));
  }
  return total;
}

SpikeDecision integrate_step(OscillatorNeuron& n, Seconds dt, double i_syn) {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw DomainError("integration step must be > 0");
  }
  if (!std::isfinite(i_syn)) throw DomainError("synaptic current not finite");
  n.potential = n.potential * std::exp(-dt / n.rc) + i_syn * dt;
  n.phase = std::fmod(n.phase + dt / n.rc, kTwoPi);
  if (i_syn >= n.i_th) {
    // Fast path: no relaxation, phase restarts.
    n.potential = 0.0;
    n.phase = 0.0;
    return SpikeDecision::current;
  }
  if (n.potential >= n.v_th) {
    n.potential = 0.0;
    return SpikeDecision::voltage;
  }
  return SpikeDecision::none;
}

// --- phase locking ---------------------------------------------------------------

PhaseLockReport phase_lock_network(std::span<const OscillatorNeuron> neurons,
                                   const BaseOscillator& base,
                                   std::span<const Axon> axons,
                                   const PhaseLockOptions& options) {
  if (neurons.size() != axons.size()) {
    throw DomainError("phase lock needs one axon per neuron");
  }
  if (options.periods < 1) throw DomainError("phase lock needs >= 1 period");
  if (!(options.step > 0.0)) throw DomainError("step must be > 0");

  const std::size_t n = neurons.size();
  std::vector<OscillatorNeuron> state(neurons.begin(), neurons.end());
  std::vector<Seconds> delays(n);
  std::vector<Seconds> last_update(n, 0.0);
  PhaseLockReport report;
  report.neurons.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    validate(state[i]);
    delays[i] = conduction_delay(axons[i]);
    report.neurons[i].id = state[i].id;
    report.neurons[i].delay = delays[i];
    report.neurons[i].locked = true;
  }

  Engine engine;
  std::vector<ComponentId> ids(n);
  const ComponentId base_id =
      engine.add("base", SpatialPoint{}, [&](const SimEvent& e, Engine& eng) {
        for (std::size_t i = 0; i < n; ++i) {
          eng.schedule(eng.now() + delays[i], e.target, ids[i],
                       EventKind::base_tick, e.detail);
        }
      });
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = engine.add(state[i].id, state[i].position,
                        [&, i](const SimEvent& e, Engine& eng) {
                          if (e.kind != EventKind::base_tick) return;
                          auto& neuron = state[i];
                          const Seconds idle = eng.now() - last_update[i];
                          if (idle > 0.0) integrate_step(neuron, idle, 0.0);
                          const auto decision = integrate_step(
                              neuron, options.step,
                              options.tick_charge / options.step);
                          last_update[i] = eng.now() + options.step;
                          auto& result = report.neurons[i];
                          if (decision != SpikeDecision::current) {
                            result.locked = false;
                            result.reason = "base tick below current threshold";
                            return;
                          }
                          result.fire_times.push_back(eng.now());
                          eng.schedule(eng.now(), ids[i], ids[i],
                                       EventKind::spike, "phase reset");
                        });
  }

  const Seconds period = base.period();
  for (int k = 0; k < options.periods; ++k) {
    const Seconds t = static_cast<double>(k) * period;
    report.tick_times.push_back(t);
    engine.schedule(t, base_id, base_id, EventKind::base_tick,
                    "tick " + std::to_string(k));
  }
  report.run = engine.run();

  for (auto& r : report.neurons) {
    if (r.locked && !r.fire_times.empty()) {
      r.offset_deg =
          phase_shift(r.fire_times.front() - report.tick_times.front(),
                      base.frequency());
    } else {
      r.locked = false;
      r.fire_times.clear();
    }
  }
  return report;
}

LockResult phase_lock(const OscillatorNeuron& neuron,
                      const BaseOscillator& base, const Axon& axon,
                      const PhaseLockOptions& options) {
  return phase_lock_network(std::span(&neuron, 1), base, std::span(&axon, 1),
                            options)
      .neurons.front();
}

// --- assembly learning ----------------------------------------------------------------

namespace {

struct Arrival {
  std::size_t member;
  Spike spike;
};

}  // namespace

LearningReport learn_arrival_phase(const Assembly& assembly,
                                   std::span<const Axon> axons,
                                   const BaseOscillator& base, double eta,
                                   int max_iter,
                                   const LearningOptions& options) {
  const std::size_t n = assembly.members.size();
  if (n == 0) throw DomainError("assembly has no members");
  if (axons.size() != n) {
    throw DomainError("learning needs one axon per assembly member");
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("eta must lie in (0, 1]");
  if (max_iter < 0) throw DomainError("max_iter must be >= 0");
  if (!options.reset_delays.empty() && options.reset_delays.size() != n) {
    throw DomainError("reset delays must match the member count");
  }
  for (const auto& m : assembly.members) {
    validate(m);
    if (m.rc != assembly.members.front().rc) {
      throw DomainError("assembly members must share the same rc");
    }
  }

  std::vector<OscillatorNeuron> members = assembly.members;
  std::vector<Seconds> delays(n);
  std::vector<Seconds> resets(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    delays[i] = conduction_delay(axons[i]);
    if (!options.reset_delays.empty()) resets[i] = options.reset_delays[i];
    if (!std::isfinite(resets[i]) || resets[i] < 0.0) {
      throw DomainError("reset delays must be finite and >= 0");
    }
  }

  const double hz = base.frequency();
  const Seconds period = base.period();
  const Seconds reach = *std::max_element(resets.begin(), resets.end()) +
                        period + *std::max_element(delays.begin(), delays.end());
  const double episode_periods = std::ceil(reach / period) + 1.0;

  LearningReport report;
  Seconds tick_time = 0.0;
  std::vector<Seconds> arrivals(n, 0.0);
  std::vector<Seconds> emissions(n, 0.0);
  std::vector<Seconds> last_update(n, 0.0);

  Engine engine;
  std::vector<ComponentId> member_ids(n);
  ComponentId target_id = 0;

  const ComponentId base_id =
      engine.add("base", SpatialPoint{}, [&](const SimEvent& e, Engine& eng) {
        for (std::size_t i = 0; i < n; ++i) {
          eng.schedule(eng.now() + resets[i], e.target, member_ids[i],
                       EventKind::base_tick, e.detail);
        }
      });

  for (std::size_t i = 0; i < n; ++i) {
    member_ids[i] = engine.add(
        members[i].id, members[i].position, [&, i](const SimEvent& e,
                                                    Engine& eng) {
          auto& m = members[i];
          switch (e.kind) {
            case EventKind::base_tick: {
              const Seconds idle = eng.now() - last_update[i];
              if (idle > 0.0) integrate_step(m, idle, 0.0);
              const auto decision =
                  integrate_step(m, options.step, options.charge / options.step);
              last_update[i] = eng.now() + options.step;
              if (decision != SpikeDecision::current) {
                throw DomainError("base tick does not reset member '" + m.id +
                                  "'");
              }
              eng.schedule(eng.now() + fold(m.fire_offset, period),
                           member_ids[i], member_ids[i], EventKind::spike,
                           "fire");
              break;
            }
            case EventKind::spike: {
              emissions[i] = eng.now() - tick_time;
              Spike s{m.id, eng.now(), eng.now(), options.charge};
              eng.schedule(eng.now() + delays[i], member_ids[i], target_id,
                           EventKind::signal_arrival, "spike from " + m.id,
                           Arrival{i, s});
              break;
            }
            case EventKind::feedback:
              m.fire_offset -= std::any_cast<Seconds>(e.payload);
              break;
            default:
              break;
          }
        });
  }

  target_id = engine.add(
      assembly.target_id, SpatialPoint{}, [&](const SimEvent& e, Engine& eng) {
        if (e.kind != EventKind::signal_arrival) return;
        const auto a = std::any_cast<Arrival>(e.payload);
        arrivals[a.member] = eng.now();
        report.raster.push_back(RasterRow{
            a.spike.source_id, a.spike.emit_time, eng.now(), assembly.target_id,
            wrap_degrees(360.0 * ((eng.now() - tick_time) * hz)),
            a.spike.biological_timestamp});
      });

  std::vector<double> phases(n);
  int episode = 0;
  auto run_episode = [&]() {
    tick_time = static_cast<double>(episode) * episode_periods * period;
    engine.schedule(tick_time, base_id, base_id, EventKind::base_tick,
                    "episode " + std::to_string(episode));
    report.run = engine.run();
    if (!report.run.ok) throw std::runtime_error(report.run.error);
    for (std::size_t i = 0; i < n; ++i) {
      phases[i] = wrap_degrees(360.0 * ((arrivals[i] - tick_time) * hz));
    }
    report.spread_history.push_back(circular_spread(phases));
    report.charge_history.push_back(superposed_charge(phases, options.charge));
    ++episode;
  };

  run_episode();
  while (report.spread_history.back() >= options.tolerance_deg &&
         report.iterations < max_iter) {
    const double mean = circular_mean(phases);
    for (std::size_t i = 0; i < n; ++i) {
      const double deviation = signed_degrees(phases[i] - mean);
      const Seconds correction = eta * deviation / (360.0 * hz);
      engine.schedule(engine.now(), target_id, member_ids[i],
                      EventKind::feedback,
                      "deviation_deg=" + format_number(deviation), correction);
    }
    ++report.iterations;
    run_episode();
  }

  report.converged = report.spread_history.back() < options.tolerance_deg;
  report.arrival_phases = phases;
  report.emission_times = emissions;
  for (const auto& m : members) report.offsets.push_back(m.fire_offset);
  return report;
}

// --- feedback staleness ------------------------------------------------------------------

FeedbackQueue::FeedbackQueue(int drop_threshold_cycles)
    : threshold_(drop_threshold_cycles) {
  if (threshold_ < 0) throw DomainError("drop threshold must be >= 0");
}

void FeedbackQueue::push(FeedbackItem item) {
  if (!std::isfinite(item.arrival_time) ||
      !std::isfinite(item.biological_timestamp) || item.arrival_time < 0.0) {
    throw DomainError("feedback item times must be finite, arrival >= 0");
  }
  auto pos = std::upper_bound(
      items_.begin(), items_.end(), item.arrival_time,
      [](Seconds t, const FeedbackItem& other) { return t < other.arrival_time; });
  items_.insert(pos, std::move(item));
}

void BusySchedule::add(std::int64_t first_cycle, std::int64_t count) {
  if (count <= 0) return;
  spans_.emplace_back(first_cycle, first_cycle + count);
}

bool BusySchedule::busy(std::int64_t cycle) const {
  return std::any_of(spans_.begin(), spans_.end(), [cycle](const auto& s) {
    return cycle >= s.first && cycle < s.second;
  });
}

std::int64_t BusySchedule::next_idle(std::int64_t from_cycle) const {
  std::int64_t c = from_cycle;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto& s : spans_) {
      if (c >= s.first && c < s.second) {
        c = s.second;
        moved = true;
      }
    }
  }
  return c;
}

FeedbackRoundResult feedback_round(const FeedbackQueue& queue,
                                   const BusySchedule& busy,
                                   Seconds cycle_length,
                                   std::string receiver_id,
                                   std::uint64_t seed) {
  if (!std::isfinite(cycle_length) || cycle_length <= 0.0) {
    throw DomainError("delivery cycle length must be > 0");
  }
  const std::int64_t threshold = queue.drop_threshold();
  FeedbackRoundResult result;

  struct Pending {
    std::size_t item;
    bool drop;
    std::int64_t waited;
  };

  Engine engine(seed);
  const auto& items = queue.items();
  const ComponentId receiver = engine.add(
      receiver_id, SpatialPoint{}, [&](const SimEvent& e, Engine& eng) {
        if (e.kind != EventKind::feedback) return;
        if (e.payload.type() == typeid(std::size_t)) {
          // Physical arrival.
          const std::size_t idx = std::any_cast<std::size_t>(e.payload);
          const auto cycle = static_cast<std::int64_t>(
              std::floor(eng.now() / cycle_length));
          if (!busy.busy(cycle)) {
            result.delivered.push_back(
                {items[idx], eng.now(),
                 eng.now() - items[idx].biological_timestamp, 0});
            return;
          }
          const std::int64_t idle = busy.next_idle(cycle + 1);
          const std::int64_t waited = idle - cycle;
          const std::string who = "from " + items[idx].source_id;
          if (waited <= threshold) {
            eng.schedule(static_cast<double>(idle) * cycle_length, receiver,
                         receiver, EventKind::feedback, "deliver " + who,
                         Pending{idx, false, waited});
          } else {
            eng.schedule(static_cast<double>(cycle + threshold + 1) *
                             cycle_length,
                         receiver, receiver, EventKind::feedback,
                         "drop " + who + " waited_cycles=" +
                             std::to_string(threshold + 1),
                         Pending{idx, true, threshold + 1});
          }
          return;
        }
        const auto p = std::any_cast<Pending>(e.payload);
        if (p.drop) {
          result.dropped.push_back({items[p.item], eng.now(), p.waited});
        } else {
          result.delivered.push_back(
              {items[p.item], eng.now(),
               eng.now() - items[p.item].biological_timestamp, p.waited});
        }
      });

  std::vector<ComponentId> sources;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    const ComponentId src = engine.add(it.source_id, SpatialPoint{},
                                       [](const SimEvent&, Engine&) {});
    engine.schedule(it.arrival_time, src, receiver, EventKind::feedback,
                    "arrive from " + it.source_id + " stamp=" +
                        format_number(it.biological_timestamp),
                    i);
  }
  result.run = engine.run();

  auto& st = result.staleness;
  st.count = result.delivered.size();
  if (st.count > 0) {
    st.min = st.max = result.delivered.front().staleness;
    double sum = 0.0;
    for (const auto& d : result.delivered) {
      sum += d.staleness;
      st.min = std::min(st.min, d.staleness);
      st.max = std::max(st.max, d.staleness);
    }
    st.mean = sum / static_cast<double>(st.count);
  }
  return result;
}

}  // namespace tempologic::neuro
