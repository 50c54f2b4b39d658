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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "tempologic/errors.hpp"
#include "tempologic/timespace.hpp"

using namespace tempologic;

TEST_CASE("interaction speed rejects non-positive and non-finite values") {
  CHECK_THROWS_AS(InteractionSpeed(0.0), DomainError);
  CHECK_THROWS_AS(InteractionSpeed(-1.0), DomainError);
  CHECK_THROWS_AS(InteractionSpeed(std::numeric_limits<double>::infinity()),
                  DomainError);
  CHECK_THROWS_AS(InteractionSpeed(std::nan("")), DomainError);
  CHECK(InteractionSpeed(2.5).value() == 2.5);
}

TEST_CASE("event timing validates and reports the ratio") {
  CHECK_THROWS_AS(EventTiming(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(EventTiming(1.0, -0.5), DomainError);
  CHECK_FALSE(EventTiming(0.0, 2.0).ratio().has_value());
  CHECK(*EventTiming(2.0, 3.0).ratio() == doctest::Approx(1.5));
}

TEST_CASE("time vector divides each coordinate by the speed") {
  const auto tv = to_time_vector({3.0, -6.0, 9.0}, InteractionSpeed(3.0));
  CHECK(tv.tx == doctest::Approx(1.0));
  CHECK(tv.ty == doctest::Approx(-2.0));
  CHECK(tv.tz == doctest::Approx(3.0));
  CHECK(tv.t == 0.0);

  const auto hop = to_time_vector({3.0, 0.0, 0.0}, InteractionSpeed(3.0), 0.25,
                                  Axis::y);
  CHECK(hop.tx == doctest::Approx(1.0));
  CHECK(hop.ty == doctest::Approx(0.25));
  CHECK_THROWS_AS(to_time_vector({std::nan(""), 0, 0}, InteractionSpeed(1.0)),
                  DomainError);
}

TEST_CASE("propagation delay is distance over speed plus hops") {
  const double diag = std::sqrt(0.5 * 0.5 + 0.5 * 0.5);
  CHECK(propagation_delay({-0.5, 0.0, 0.0}, {0.0, 0.5, 0.0},
                          InteractionSpeed(1.0)) == doctest::Approx(diag));
  CHECK(propagation_delay({-0.5, 0.0, 0.0}, {0.0, 0.5, 0.0},
                          InteractionSpeed(10.0)) == doctest::Approx(diag / 10));
  CHECK(propagation_delay({0, 0, 0}, {0, 0, 2}, InteractionSpeed(1.0), 0.5) ==
        doctest::Approx(2.5));
  CHECK_THROWS_AS(propagation_delay({}, {}, InteractionSpeed(1.0), -1.0),
                  DomainError);
}

TEST_CASE("longest transmission picks the slowest input") {
  const std::vector<Seconds> t{0.3, 1.7, 0.2};
  CHECK(longest_transmission(t) == 1.7);
  CHECK(longest_transmission(std::span<const Seconds>{}) == 0.0);
  const std::vector<Seconds> bad{1.0, -0.1};
  CHECK_THROWS_AS(longest_transmission(bad), DomainError);
}

TEST_CASE("apparent processing time") {
  SUBCASE("equal processing and transmission exceeds three times Tp") {
    const double ta = apparent_processing_time(1.0, 1.0);
    CHECK(ta == doctest::Approx(std::sqrt(1.0 + 9.0)));
    CHECK(ta > 3.0);
  }
  SUBCASE("no transmission leaves the cone start") {
    CHECK(apparent_processing_time(2.0, 0.0) == doctest::Approx(4.0));
  }
  SUBCASE("ratio form agrees with the two-argument form") {
    for (double r : {0.0, 0.1, 1.0, 7.5, 1000.0}) {
      CHECK(apparent_processing_time_from_ratio(2.0, r) ==
            doctest::Approx(apparent_processing_time(2.0, 2.0 * r)));
    }
  }
  SUBCASE("rejects negative inputs") {
    CHECK_THROWS_AS(apparent_processing_time(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(apparent_processing_time_from_ratio(1.0, -1.0), DomainError);
  }
}

TEST_CASE("apparent time bounds hold for random timings") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double tp = u(rng);
    const double tt = u(rng);
    const double ta = apparent_processing_time(tp, tt);
    CHECK(ta >= 2.0 * tp + tt - 1e-12);
    CHECK(ta >= std::sqrt(2.0) * tt - 1e-12);
    CHECK(apparent_processing_time(tp, tt + 1.0) > ta);
  }
}

TEST_CASE("light cone trace with a shared processing time matches the law") {
  const auto c = light_cone_trace(1.0, 1.0, {3.0, 4.0, 0.0}, InteractionSpeed(5.0));
  CHECK(c.transmission == doctest::Approx(1.0));
  CHECK(c.notice_time == doctest::Approx(2.0));
  CHECK(c.observer_cone_start == doctest::Approx(3.0));
  CHECK(c.apparent_time == doctest::Approx(apparent_processing_time(1.0, 1.0)));

  const auto uneven = light_cone_trace(1.0, 3.0, {2.0, 0.0, 0.0},
                                       InteractionSpeed(1.0));
  CHECK(uneven.observer_cone_start == doctest::Approx(6.0));
  CHECK(uneven.apparent_time == doctest::Approx(std::sqrt(4.0 + 36.0)));
}
