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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempologic/engine.hpp"
#include "tempologic/timespace.hpp"

namespace tempologic::neuro {

/// Leaky integrator with two firing paths: the usual voltage threshold and a
/// synaptic-current threshold that fires immediately and zeroes the phase.
/// The phase is the neuron's local clock; it advances at 1/rc rad/s.
struct OscillatorNeuron {
  std::string id;
  SpatialPoint position;
  Seconds rc = 0.01;
  double v_th = 1.0;
  double i_th = 1.0e4;  // default_current_threshold for the default step
  double potential = 0.0;
  double phase = 0.0;   // radians, [0, 2 pi)
  Seconds fire_offset = 0.0;
};

/// Engine step used when a pulse is applied as a current.
inline constexpr Seconds kDefaultStep = 1.0e-4;

/// A unit-charge pulse over one step always crosses this threshold.
constexpr double default_current_threshold(Seconds step = kDefaultStep) {
  return 1.0 / step;
}

void validate(const OscillatorNeuron& neuron);

struct Axon {
  std::string from;
  std::string to;
  double length = 0.0;          // meters
  double base_velocity = 1.0;   // m/s
  double myelination = 1.0;     // speed-up factor, [1, 60]
};

void validate(const Axon& axon);

Seconds conduction_delay(const Axon& axon);

/// Time-base oscillation the assembly locks onto.
class BaseOscillator {
 public:
  static constexpr double kMinHz = 0.02;
  static constexpr double kMaxHz = 600.0;

  explicit BaseOscillator(double hz);

  double frequency() const noexcept { return hz_; }
  Seconds period() const noexcept { return 1.0 / hz_; }

 private:
  double hz_;
};

struct Spike {
  std::string source_id;
  Seconds emit_time = 0.0;
  Seconds biological_timestamp = 0.0;
  double charge = 1.0;
};

struct Assembly {
  std::vector<OscillatorNeuron> members;
  std::string target_id = "target";
};

/// Phase accumulated over `delay` at `hz`, in degrees reduced to [0, 360).
double phase_shift(Seconds delay, double hz);

double wrap_degrees(double degrees);  // to [0, 360)
double signed_degrees(double degrees);  // to (-180, 180]

/// Circular mean in degrees, [0, 360).
double circular_mean(std::span<const double> degrees);

/// Range of the deviations from the circular mean, in degrees. Unlike the
/// circular variance it scales exactly when every phase is pulled towards a
/// common point.
double circular_spread(std::span<const double> degrees);

enum class SpikeDecision { none, voltage, current };

/// One leaky-integration step: potential * exp(-dt/rc) + i_syn * dt.
/// The current path wins over the voltage path and also zeroes the phase.
SpikeDecision integrate_step(OscillatorNeuron& neuron, Seconds dt,
                             double i_syn);

// --- phase locking -----------------------------------------------------------

struct PhaseLockOptions {
  int periods = 100;
  Seconds step = kDefaultStep;
  double tick_charge = 1.0;
};

struct LockResult {
  std::string id;
  bool locked = false;
  double offset_deg = 0.0;         // firing phase relative to the base
  Seconds delay = 0.0;
  std::vector<Seconds> fire_times;  // one per base tick when locked
  std::string reason;               // set when not locked
};

struct PhaseLockReport {
  std::vector<LockResult> neurons;
  std::vector<Seconds> tick_times;
  sim::RunResult run;
};

/// The base emits a tick every period; each tick reaches neuron i after the
/// conduction delay of axons[i] and is applied as one step of current.
PhaseLockReport phase_lock_network(std::span<const OscillatorNeuron> neurons,
                                   const BaseOscillator& base,
                                   std::span<const Axon> axons,
                                   const PhaseLockOptions& options = {});

LockResult phase_lock(const OscillatorNeuron& neuron,
                      const BaseOscillator& base, const Axon& axon,
                      const PhaseLockOptions& options = {});

// --- assembly learning -------------------------------------------------------------

struct LearningOptions {
  double tolerance_deg = 1.0e-9;
  Seconds step = kDefaultStep;
  double charge = 1.0;
  /// Base-to-member reset delays; empty means every member resets at the
  /// tick emission time.
  std::vector<Seconds> reset_delays;
};

struct RasterRow {
  std::string neuron;
  Seconds emit_time = 0.0;
  Seconds arrival_time = 0.0;
  std::string target;
  double phase_deg = 0.0;
  Seconds biological_timestamp = 0.0;
};

struct LearningReport {
  bool converged = false;
  int iterations = 0;                    // feedback rounds applied
  std::vector<double> spread_history;    // degrees, one per episode
  std::vector<double> charge_history;    // superposed-charge proxy
  std::vector<Seconds> offsets;          // final fire offsets
  std::vector<double> arrival_phases;    // last episode, degrees
  std::vector<Seconds> emission_times;   // last episode, relative to tick
  std::vector<RasterRow> raster;         // every episode
  sim::RunResult run;
};

/// Each episode: the base tick resets every member, members fire after their
/// fire offset, spikes travel to the target, and each member is fed back the
/// deviation of its arrival phase from the circular mean. The member moves
/// its firing time by -eta times that deviation. DomainError on invalid
/// arguments; std::runtime_error when a tick fails to reset a member.
LearningReport learn_arrival_phase(const Assembly& assembly,
                                   std::span<const Axon> axons,
                                   const BaseOscillator& base, double eta,
                                   int max_iter,
                                   const LearningOptions& options = {});

/// Sum of charge * cos(deviation from circular mean).
double superposed_charge(std::span<const double> phases_deg,
                         double charge = 1.0);

// --- feedback staleness -------------------------------------------------------------

struct FeedbackItem {
  std::string source_id;
  Seconds biological_timestamp = 0.0;
  Seconds arrival_time = 0.0;  // physical arrival at the receiver
};

/// Inbound feedback for one neuron. Items are kept FIFO by physical arrival;
/// equal arrivals keep push order.
class FeedbackQueue {
 public:
  explicit FeedbackQueue(int drop_threshold_cycles);

  void push(FeedbackItem item);
  const std::vector<FeedbackItem>& items() const noexcept { return items_; }
  int drop_threshold() const noexcept { return threshold_; }

 private:
  std::vector<FeedbackItem> items_;
  int threshold_;
};

/// Delivery cycles during which the receiving process is busy.
class BusySchedule {
 public:
  BusySchedule() = default;

  /// Marks cycles [first, first + count) busy.
  void add(std::int64_t first_cycle, std::int64_t count);
  bool busy(std::int64_t cycle) const;
  std::int64_t next_idle(std::int64_t from_cycle) const;

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> spans_;  // [begin, end)
};

struct Delivery {
  FeedbackItem item;
  Seconds delivered_at = 0.0;
  Seconds staleness = 0.0;
  std::int64_t waited_cycles = 0;
};

struct Drop {
  FeedbackItem item;
  Seconds dropped_at = 0.0;
  std::int64_t waited_cycles = 0;
};

struct StalenessStats {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct FeedbackRoundResult {
  std::vector<Delivery> delivered;
  std::vector<Drop> dropped;
  StalenessStats staleness;
  sim::RunResult run;
};

/// An item arriving in an idle cycle is delivered on arrival. Otherwise it
/// waits for the first idle cycle; if that is more than the drop threshold
/// cycles after its arrival cycle it is dropped once the threshold passes.
FeedbackRoundResult feedback_round(const FeedbackQueue& queue,
                                   const BusySchedule& busy,
                                   Seconds cycle_length,
                                   std::string receiver_id = "receiver",
                                   std::uint64_t seed = 0);

}  // namespace tempologic::neuro
