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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "tempologic/errors.hpp"
#include "tempologic/fabric.hpp"

using namespace tempologic;
using namespace tempologic::fabric;

namespace {

BusChannel make_bus(double t_b, double t_d, double x = 0.0) {
  BusChannel bus;
  bus.position = {0.0, 0.5, 0.0};
  bus.arbitration = t_b;
  bus.delivery = t_d;
  bus.foreign = ForeignLoad::constant(x);
  return bus;
}

const Core kReceiver{"receiver", {0.0, 2.0, 0.0}, 0.0};

}  // namespace

TEST_CASE("cache access geometry") {
  // Hand geometry: request and reply each cross the core-cache distance.
  const double near = std::hypot(0.5, 0.5);
  const double far = std::hypot(0.5, 1.0);
  const Core left{"left", {-0.5, 0.0, 0.0}, 0.0};
  const Core right{"right", {0.5, 0.0, 0.0}, 0.0};

  const auto slow = cache_access_scenario(left, {"c", {0.0, 0.5, 0.0}, 1.0},
                                          InteractionSpeed(1.0));
  CHECK(slow.one_way == doctest::Approx(near));
  CHECK(slow.apparent_access_time == doctest::Approx(2.0 * near + 1.0));
  CHECK(std::abs(slow.apparent_access_time - 2.41421) < 5e-6);
  CHECK(slow.apparent_speed == doctest::Approx(1.0 / (2.0 * near + 1.0)));

  const auto fast = cache_access_scenario(left, {"c", {0.0, 0.5, 0.0}, 0.1},
                                          InteractionSpeed(1.0));
  CHECK(std::abs(fast.apparent_access_time - 1.51421) < 5e-6);
  CHECK(slow.apparent_access_time / fast.apparent_access_time < 2.0);

  const auto far_slow = cache_access_scenario(
      right, {"c", {0.0, 1.0, 0.0}, 1.0}, InteractionSpeed(1.0));
  CHECK(far_slow.apparent_access_time == doctest::Approx(2.0 * far + 1.0));

  const auto quick_wire = cache_access_scenario(
      left, {"c", {0.0, 0.5, 0.0}, 1.0}, InteractionSpeed(10.0));
  CHECK(quick_wire.apparent_access_time == doctest::Approx(0.2 * near + 1.0));
}

TEST_CASE("cache runs annotate idle intervals") {
  const std::vector<CacheAccess> accesses{
      {{"core", {-0.5, 0.0, 0.0}, 0.0}, {"cache", {0.0, 0.5, 0.0}, 1.0}}};
  const auto run = simulate_cache_accesses(accesses, InteractionSpeed(1.0));
  REQUIRE(run.run.ok);
  const auto idle = std::count_if(run.run.trace.begin(), run.run.trace.end(),
                                  [](const auto& r) { return r.kind == "idle"; });
  CHECK(idle == 2);
  CHECK(run.accesses[0].cache_idle == doctest::Approx(std::hypot(0.5, 0.5)));
  CHECK(run.accesses[0].core_idle ==
        doctest::Approx(run.accesses[0].apparent_access_time));
}

TEST_CASE("shared bus transmission time") {
  auto senders = layer_senders(1, {});
  CHECK(shared_bus_transfer(senders, make_bus(1.0, 0.1), kReceiver)
            .receiver_transmission == doctest::Approx(2.1));
  senders = layer_senders(5, {});
  const auto rep = shared_bus_transfer(senders, make_bus(1.0, 0.1), kReceiver);
  CHECK(rep.receiver_transmission == doctest::Approx(10.1));
  REQUIRE(rep.transfers.size() == 5);
  for (const auto& t : rep.transfers) {
    const double k = static_cast<double>(t.grant_index);
    CHECK(t.delivery_end == doctest::Approx(k * 2.0 + 0.1));
  }
  CHECK(rep.receiver_start >= rep.last_arrival);
}

TEST_CASE("bus grants go to the nearest requester first, ties by id") {
  const std::vector<Core> senders{{"far", {0.6, 0.0, 0.0}, 0.0},
                                  {"near", {-0.3, 0.0, 0.0}, 0.0}};
  const auto rep = shared_bus_transfer(senders, make_bus(1.0, 0.1), kReceiver);
  REQUIRE(rep.transfers.size() == 2);
  CHECK(rep.transfers[0].sender_id == "near");
  CHECK(rep.transfers[1].sender_id == "far");

  const std::vector<Core> twins{{"b", {1.0, 0.5, 0.0}, 0.0},
                                {"a", {-1.0, 0.5, 0.0}, 0.0}};
  const auto tie = shared_bus_transfer(twins, make_bus(1.0, 0.0), kReceiver);
  CHECK(tie.transfers[0].sender_id == "a");

  // The first grant reaches the sender core in the trace.
  const auto& trace = rep.run.trace;
  const auto grant = std::find_if(trace.begin(), trace.end(), [](const auto& r) {
    return r.kind == "bus-grant" && r.detail.rfind("grant 1", 0) == 0;
  });
  REQUIRE(grant != trace.end());
  CHECK(grant->component == "near");
}

TEST_CASE("late requesters wait for the grant in progress") {
  const std::vector<Core> senders{{"early", {0.0, 0.0, 0.0}, 0.0},
                                  {"late", {0.0, 0.1, 0.0}, 1.0}};
  const auto rep = shared_bus_transfer(senders, make_bus(1.0, 0.5), kReceiver);
  REQUIRE(rep.transfers.size() == 2);
  CHECK(rep.transfers[0].sender_id == "early");
  CHECK(rep.transfers[1].grant_time == doctest::Approx(2.0));
  CHECK(rep.transfers[1].delivery_end == doctest::Approx(4.5));
  CHECK(rep.receiver_transmission == doctest::Approx(4.5));
}

TEST_CASE("a slow delivery phase serializes the bus") {
  const auto senders = layer_senders(3, {});
  const auto rep = shared_bus_transfer(senders, make_bus(0.5, 3.0), kReceiver);
  for (std::size_t i = 1; i < rep.transfers.size(); ++i) {
    CHECK(rep.transfers[i].delivery_start >= rep.transfers[i - 1].delivery_end);
  }
  CHECK(rep.receiver_transmission == doctest::Approx(1.0 + 3.0 * 3.0));
}

TEST_CASE("stochastic foreign load is seeded and never overlaps deliveries") {
  auto bus = make_bus(0.2, 0.3);
  bus.foreign = ForeignLoad::exponential(0.5);
  const auto senders = layer_senders(16, {});
  const auto a = shared_bus_transfer(senders, bus, kReceiver, 9);
  const auto b = shared_bus_transfer(senders, bus, kReceiver, 9);
  const auto c = shared_bus_transfer(senders, bus, kReceiver, 10);
  CHECK(a.receiver_transmission == b.receiver_transmission);
  CHECK(a.receiver_transmission != c.receiver_transmission);
  for (std::size_t i = 0; i < a.transfers.size(); ++i) {
    CHECK(a.transfers[i].foreign >= 0.0);
    CHECK(a.transfers[i].delivery_start >=
          a.transfers[i].reach_time + a.transfers[i].foreign);
    if (i > 0) {
      CHECK(a.transfers[i].delivery_start >= a.transfers[i - 1].delivery_end);
    }
  }
}

TEST_CASE("hidden layer scaling") {
  const std::vector<std::size_t> sizes{1, 2, 4, 8};
  const auto bus = make_bus(1.0, 0.0);
  const auto shared = hidden_layer_scaling(sizes, bus, Topology::shared_bus);
  const std::vector<double> expected{2.0, 4.0, 8.0, 16.0};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    CHECK(shared.rows[i].transmission == doctest::Approx(expected[i]));
  }
  CHECK(shared.fit.slope == doctest::Approx(2.0).epsilon(1e-12));

  const auto parallel = hidden_layer_scaling(sizes, bus, Topology::parallel);
  for (const auto& row : parallel.rows) {
    CHECK(row.transmission == doctest::Approx(parallel.rows[0].transmission));
  }
  CHECK(std::abs(parallel.fit.slope) < 1e-12);
}

TEST_CASE("receiver never starts before its last input") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), t(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Core> senders;
    const int n = 1 + trial % 7;
    for (int i = 0; i < n; ++i) {
      senders.push_back({"s" + std::to_string(i), {pos(rng), pos(rng), 0.0}, t(rng)});
    }
    const auto bus = make_bus(t(rng), t(rng), t(rng));
    const auto rep = shared_bus_transfer(senders, bus, kReceiver);
    CHECK(rep.receiver_start >= rep.last_arrival);
    for (const auto& tr : rep.transfers) CHECK(tr.delivery_end <= rep.last_arrival);
    const auto par = parallel_transfer(senders, kReceiver, InteractionSpeed(1.0));
    for (const auto& l : par.links) {
      const auto& s = *std::find_if(senders.begin(), senders.end(),
                                    [&](const Core& c) { return c.id == l.from; });
      CHECK(par.receiver_start >= s.processing + l.delay - 1e-12);
    }
  }
}

TEST_CASE("shallow versus deep arrangement") {
  const auto bus = make_bus(1.0, 0.0);
  const std::vector<std::size_t> halves{4, 4};
  const auto cmp = shallow_vs_deep(8, halves, bus, 1.0);
  CHECK(cmp.wide.max_layer_transmission == doctest::Approx(16.0));
  CHECK(cmp.layered.max_layer_transmission == doctest::Approx(8.0));
  CHECK(cmp.layered_faster);
  CHECK(cmp.wide.end_to_end == doctest::Approx(std::sqrt(16.0 * 16 + 18.0 * 18)));
  CHECK(cmp.layered.end_to_end ==
        doctest::Approx(2.0 * std::sqrt(8.0 * 8 + 10.0 * 10)));

  const std::vector<std::size_t> wrong{4, 3};
  CHECK_THROWS_AS(shallow_vs_deep(8, wrong, bus, 1.0), DomainError);
}

TEST_CASE("layered is faster per stage for every split with a smaller widest layer") {
  const auto bus = make_bus(0.7, 0.2);
  for (std::size_t total = 2; total <= 12; ++total) {
    for (std::size_t first = 1; first < total; ++first) {
      const std::vector<std::size_t> widths{first, total - first};
      CHECK(shallow_vs_deep(total, widths, bus, 0.5).layered_faster);
    }
  }
}

TEST_CASE("light cone experiment with several observers") {
  const Core source{"A", {0.0, 0.0, 0.0}, 2.0};
  const std::vector<Observer> observers{
      {{"B", {3.0, 4.0, 0.0}, 2.0}, InteractionSpeed(1.0)},
      {{"C", {0.0, 1.0, 0.0}, 0.5}, InteractionSpeed(2.0)}};
  const auto rep = simulate_light_cone(source, observers);
  REQUIRE(rep.run.ok);
  CHECK(rep.source_done == 2.0);
  CHECK(rep.observers[0].transmission == doctest::Approx(5.0));
  CHECK(rep.observers[0].traced_apparent_time ==
        doctest::Approx(apparent_processing_time(2.0, 5.0)));
  CHECK(rep.observers[1].transmission == doctest::Approx(0.5));
  CHECK(rep.observers[1].cone_start == doctest::Approx(3.0));
}

TEST_CASE("least squares recovers an exact line") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3.5, 5.5, 7.5, 9.5};
  const auto fit = least_squares(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.5));
  const std::vector<double> one{1};
  CHECK_THROWS_AS(least_squares(one, one), DomainError);
}

TEST_CASE("component validation") {
  CHECK_THROWS_AS(validate(Core{"c", {}, -1.0}), DomainError);
  CHECK_THROWS_AS(validate(CacheMemory{"m", {}, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(make_bus(-1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(shared_bus_transfer({}, make_bus(1.0, 0.0), kReceiver),
                  DomainError);
}
