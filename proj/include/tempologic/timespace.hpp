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

#include <optional>
#include <span>

namespace tempologic {

/// Simulated time, in seconds.
using Seconds = double;

/// A position in scenario length units. The unit is global to a scenario and
/// never converted implicitly.
struct SpatialPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const SpatialPoint&, const SpatialPoint&) = default;
};

/// Finite propagation speed of information, in length units per second.
/// Construction rejects zero, negative and non-finite values, so an
/// instantaneous interaction cannot be expressed.
class InteractionSpeed {
 public:
  explicit InteractionSpeed(double length_per_second);

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// All-time four-vector: three path-length coordinates converted to time,
/// plus time proper.
struct TimeVector {
  Seconds tx = 0.0;
  Seconds ty = 0.0;
  Seconds tz = 0.0;
  Seconds t = 0.0;

  friend bool operator==(const TimeVector&, const TimeVector&) = default;
};

/// Processing and transmission times of one computing step.
class EventTiming {
 public:
  EventTiming(Seconds processing, Seconds transmission);

  Seconds processing() const noexcept { return processing_; }
  Seconds transmission() const noexcept { return transmission_; }

  /// Transmission over processing time; absent when processing is zero.
  std::optional<double> ratio() const noexcept;

 private:
  Seconds processing_;
  Seconds transmission_;
};

enum class Axis { x, y, z };

void require_finite(const SpatialPoint& p);

/// Maps a position onto time coordinates by dividing each coordinate by the
/// interaction speed. Hop contributions (multiplexing, network hops) are
/// additive scalars placed on `hop_axis`; the time coordinate is zero.
TimeVector to_time_vector(const SpatialPoint& p, InteractionSpeed v,
                          Seconds extra_hops = 0.0, Axis hop_axis = Axis::x);

double distance(const SpatialPoint& a, const SpatialPoint& b);

/// Euclidean path length over speed, plus hops. Symmetric and nonnegative.
Seconds propagation_delay(const SpatialPoint& a, const SpatialPoint& b,
                          InteractionSpeed v, Seconds extra_hops = 0.0);

/// When several transfers feed one processing step the step has to wait for
/// the slowest, so the effective transmission time is the maximum.
Seconds longest_transmission(std::span<const Seconds> transfers);

/// Euclidean length of the vector from the source event to the observer's
/// completion in the time-space plane:
///   T_A = sqrt(Tt^2 + (2 Tp + Tt)^2)
/// The factor two assumes source and observer share the same processing time.
Seconds apparent_processing_time(const EventTiming& timing);
Seconds apparent_processing_time(Seconds processing, Seconds transmission);

/// Same law written through R = Tt / Tp: Tp * sqrt(R^2 + (2 + R)^2).
Seconds apparent_processing_time_from_ratio(Seconds processing, double ratio);

/// Geometry of the two-light experiment for one observer.
struct ConeTrace {
  Seconds transmission = 0.0;         ///< origin-to-observer delay
  Seconds notice_time = 0.0;          ///< source finishes + transmission
  Seconds observer_cone_start = 0.0;  ///< observer's own light goes on
  /// Length of (transmission, observer_cone_start). Reduces to
  /// apparent_processing_time when both processing times are equal.
  Seconds apparent_time = 0.0;
};

/// Source event at the origin, observer at `observer`.
ConeTrace light_cone_trace(Seconds source_processing,
                           Seconds observer_processing,
                           const SpatialPoint& observer, InteractionSpeed v);

}  // namespace tempologic
