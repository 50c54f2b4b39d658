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

#include "tempologic/timespace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempologic/errors.hpp"

namespace tempologic {

namespace {

void require_nonnegative(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

InteractionSpeed::InteractionSpeed(double length_per_second)
    : value_(length_per_second) {
  if (!std::isfinite(value_) || value_ <= 0.0) {
    throw DomainError("interaction speed must be finite and > 0");
  }
}

EventTiming::EventTiming(Seconds processing, Seconds transmission)
    : processing_(processing), transmission_(transmission) {
  require_nonnegative(processing_, "processing time");
  require_nonnegative(transmission_, "transmission time");
}

std::optional<double> EventTiming::ratio() const noexcept {
  if (processing_ == 0.0) return std::nullopt;
  return transmission_ / processing_;
}

void require_finite(const SpatialPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw DomainError("spatial coordinates must be finite");
  }
}

TimeVector to_time_vector(const SpatialPoint& p, InteractionSpeed v,
                          Seconds extra_hops, Axis hop_axis) {
  require_finite(p);
  require_nonnegative(extra_hops, "hop time");
  TimeVector out{p.x / v.value(), p.y / v.value(), p.z / v.value(), 0.0};
  switch (hop_axis) {
    case Axis::x: out.tx += extra_hops; break;
    case Axis::y: out.ty += extra_hops; break;
    case Axis::z: out.tz += extra_hops; break;
  }
  return out;
}

double distance(const SpatialPoint& a, const SpatialPoint& b) {
  require_finite(a);
  require_finite(b);
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

Seconds propagation_delay(const SpatialPoint& a, const SpatialPoint& b,
                          InteractionSpeed v, Seconds extra_hops) {
  require_nonnegative(extra_hops, "hop time");
  return distance(a, b) / v.value() + extra_hops;
}

Seconds longest_transmission(std::span<const Seconds> transfers) {
  Seconds longest = 0.0;
  for (Seconds t : transfers) {
    require_nonnegative(t, "transmission time");
    longest = std::max(longest, t);
  }
  return longest;
}

Seconds apparent_processing_time(const EventTiming& timing) {
  const Seconds tp = timing.processing();
  const Seconds tt = timing.transmission();
  return std::hypot(tt, 2.0 * tp + tt);
}

Seconds apparent_processing_time(Seconds processing, Seconds transmission) {
  return apparent_processing_time(EventTiming(processing, transmission));
}

Seconds apparent_processing_time_from_ratio(Seconds processing, double ratio) {
  require_nonnegative(processing, "processing time");
  require_nonnegative(ratio, "time ratio");
  return processing * std::hypot(ratio, 2.0 + ratio);
}

ConeTrace light_cone_trace(Seconds source_processing,
                           Seconds observer_processing,
                           const SpatialPoint& observer, InteractionSpeed v) {
  require_nonnegative(source_processing, "source processing time");
  require_nonnegative(observer_processing, "observer processing time");
  ConeTrace out;
  out.transmission = propagation_delay(SpatialPoint{}, observer, v);
  out.notice_time = source_processing + out.transmission;
  out.observer_cone_start = out.notice_time + observer_processing;
  out.apparent_time = std::hypot(out.transmission, out.observer_cone_start);
  return out;
}

}  // namespace tempologic
