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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tempologic/engine.hpp"
#include "tempologic/timespace.hpp"

namespace tempologic::fabric {

struct Core {
  std::string id;
  SpatialPoint position;
  Seconds processing = 0.0;
};

struct CacheMemory {
  std::string id;
  SpatialPoint position;
  Seconds operate_time = 1.0;  // reciprocal of the physical access speed
};

/// Contribution X of traffic that does not belong to the modelled layer.
struct ForeignLoad {
  enum class Kind { constant, exponential };
  Kind kind = Kind::constant;
  Seconds value = 0.0;  // the constant, or the mean of the exponential draw

  static ForeignLoad constant(Seconds x) { return {Kind::constant, x}; }
  static ForeignLoad exponential(Seconds mean) {
    return {Kind::exponential, mean};
  }
};

/// Shared serial bus. `arbitration` (T_B) lumps request, grant and reach;
/// it is paid twice per access. `delivery` (T_d) is the physical transfer.
struct BusChannel {
  std::string id = "bus";
  SpatialPoint position;  // arbiter location
  Seconds arbitration = 0.0;
  Seconds delivery = 0.0;
  ForeignLoad foreign;
};

struct ParallelLink {
  std::string from;
  std::string to;
  Seconds delay = 0.0;
};

void validate(const Core& core);
void validate(const CacheMemory& cache);
void validate(const BusChannel& bus);

// --- two-light experiment -------------------------------------------------

struct Observer {
  Core core;
  InteractionSpeed speed;
};

struct ObserverTiming {
  std::string id;
  Seconds transmission = 0.0;  // notice time minus source completion
  Seconds notice_time = 0.0;
  Seconds cone_start = 0.0;    // observer completion
  /// Length of (transmission, cone_start), measured from the trace.
  Seconds traced_apparent_time = 0.0;
};

struct LightConeReport {
  Seconds source_done = 0.0;
  std::vector<ObserverTiming> observers;
  sim::RunResult run;
};

/// The source receives its instruction at t = 0, processes, and switches its
/// light on; each observer starts processing only when the light arrives.
LightConeReport simulate_light_cone(const Core& source,
                                    std::span<const Observer> observers,
                                    std::uint64_t seed = 0);

// --- cache placement --------------------------------------------------------

struct CacheAccess {
  Core core;
  CacheMemory cache;
};

struct CacheAccessReport {
  std::string core_id;
  std::string cache_id;
  Seconds one_way = 0.0;
  Seconds apparent_access_time = 0.0;
  double apparent_speed = 0.0;
  Seconds cache_idle = 0.0;  // waiting for the request to arrive
  Seconds core_idle = 0.0;   // waiting for the data to come back
};

struct CacheRun {
  std::vector<CacheAccessReport> accesses;
  sim::RunResult run;
};

/// Every access starts at t = 0; accesses do not contend with each other.
CacheRun simulate_cache_accesses(std::span<const CacheAccess> accesses,
                                 InteractionSpeed v, std::uint64_t seed = 0);

CacheAccessReport cache_access_scenario(const Core& core,
                                        const CacheMemory& cache,
                                        InteractionSpeed v);

// --- shared serial bus --------------------------------------------------------

struct BusTransfer {
  std::string sender_id;
  std::size_t grant_index = 0;  // 1-based grant order
  Seconds request_time = 0.0;
  Seconds grant_time = 0.0;
  Seconds reach_time = 0.0;     // grant + 2 T_B
  Seconds foreign = 0.0;        // X for this access
  Seconds delivery_start = 0.0;
  Seconds delivery_end = 0.0;   // arrival at the receiver
};

struct BusReport {
  std::vector<BusTransfer> transfers;  // in grant order
  Seconds first_arrival = 0.0;
  Seconds last_arrival = 0.0;
  /// Time from the earliest request until the last input reaches the
  /// receiver; L * 2 T_B + T_d + X for simultaneous requests.
  Seconds receiver_transmission = 0.0;
  Seconds receiver_start = 0.0;
  sim::RunResult run;
};

/// Senders request the bus once they finish processing. Simultaneous
/// requests are granted nearest-arbiter first, ties by id. The next grant
/// happens when the previous sender's data reaches the bus; a delivery never
/// starts before the previous one has left the bus.
BusReport shared_bus_transfer(std::span<const Core> senders,
                              const BusChannel& bus, const Core& receiver,
                              std::uint64_t seed = 0);

struct ParallelReport {
  std::vector<ParallelLink> links;
  Seconds receiver_transmission = 0.0;
  Seconds receiver_start = 0.0;
  sim::RunResult run;
};

/// Dedicated point-to-point wiring; links never block each other.
ParallelReport parallel_transfer(std::span<const Core> senders,
                                 const Core& receiver, InteractionSpeed v,
                                 std::uint64_t seed = 0);

// --- layer scaling ------------------------------------------------------------

enum class Topology { shared_bus, parallel };

std::string_view to_string(Topology topology);

/// Hidden-layer placement: senders sit evenly on a circle around the
/// receiver, so every parallel link has the same length.
struct LayerGeometry {
  SpatialPoint receiver{0.0, -1.0, 0.0};
  double radius = 1.0;
  double speed = 1.0;
};

std::vector<Core> layer_senders(std::size_t layer_size,
                                const LayerGeometry& geometry);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y);

struct ScalingRow {
  std::size_t layer_size = 0;
  Seconds transmission = 0.0;
};

struct ScalingTable {
  Topology topology = Topology::shared_bus;
  std::vector<ScalingRow> rows;
  LineFit fit;
};

ScalingTable hidden_layer_scaling(std::span<const std::size_t> layer_sizes,
                                  const BusChannel& bus, Topology topology,
                                  const LayerGeometry& geometry = {},
                                  std::uint64_t seed = 0);

// --- shallow vs deep ------------------------------------------------------------

struct ArrangementTiming {
  std::vector<std::size_t> widths;
  std::vector<Seconds> layer_transmission;
  std::vector<Seconds> layer_apparent;
  Seconds max_layer_transmission = 0.0;
  /// Sum of per-layer apparent times; stages do not overlap.
  Seconds end_to_end = 0.0;
};

ArrangementTiming evaluate_arrangement(std::span<const std::size_t> widths,
                                       const BusChannel& bus,
                                       Seconds processing,
                                       std::uint64_t seed = 0);

struct ShallowDeepComparison {
  ArrangementTiming wide;     // every neuron in one layer
  ArrangementTiming layered;  // the caller's widths
  /// Compares the worst per-layer transmission time, the metric for which
  /// the wide layer is always strictly worse when T_B > 0.
  bool layered_faster = false;
};

ShallowDeepComparison shallow_vs_deep(std::size_t total_neurons,
                                      std::span<const std::size_t> widths,
                                      const BusChannel& bus,
                                      Seconds processing,
                                      std::uint64_t seed = 0);

}  // namespace tempologic::fabric
