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
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "tempologic/errors.hpp"
#include "tempologic/neuro.hpp"

using namespace tempologic;
using namespace tempologic::neuro;

namespace {

OscillatorNeuron neuron(const std::string& id) {
  OscillatorNeuron n;
  n.id = id;
  return n;
}

Axon axon_with_delay(const std::string& from, Seconds delay) {
  return Axon{from, "target", delay, 1.0, 1.0};
}

struct Learning {
  Assembly assembly;
  std::vector<Axon> axons;
};

Learning assembly_with_delays(const std::vector<Seconds>& delays) {
  Learning l;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    const std::string id = "n" + std::to_string(i);
    l.assembly.members.push_back(neuron(id));
    l.axons.push_back(axon_with_delay(id, delays[i]));
  }
  return l;
}

}  // namespace

TEST_CASE("phase shift") {
  CHECK(phase_shift(5e-3, 100.0) == doctest::Approx(180.0));
  CHECK(phase_shift(2.5e-3, 100.0) == doctest::Approx(90.0));
  CHECK(phase_shift(1.0 / 1200.0, 100.0) == doctest::Approx(30.0));
  CHECK(phase_shift(10e-3, 100.0) == doctest::Approx(0.0));
  CHECK(phase_shift(12.5e-3, 100.0) == doctest::Approx(90.0));
  CHECK_THROWS_AS(phase_shift(-1.0, 100.0), DomainError);
  CHECK_THROWS_AS(phase_shift(1.0, 0.0), DomainError);
}

TEST_CASE("angle helpers") {
  CHECK(wrap_degrees(-90.0) == doctest::Approx(270.0));
  CHECK(wrap_degrees(720.0) == 0.0);
  CHECK(signed_degrees(270.0) == doctest::Approx(-90.0));
  CHECK(signed_degrees(180.0) == doctest::Approx(180.0));
  const std::vector<double> across{350.0, 10.0};
  const double m = circular_mean(across);
  CHECK(std::min(m, 360.0 - m) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(circular_spread(across) == doctest::Approx(20.0));
  const std::vector<double> same{42.0, 42.0, 42.0};
  CHECK(circular_spread(same) == doctest::Approx(0.0));
  CHECK(superposed_charge(same, 2.0) == doctest::Approx(6.0));
}

TEST_CASE("axon conduction and the base oscillator range") {
  CHECK(conduction_delay({"a", "b", 0.06, 1.0, 60.0}) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(conduction_delay({"a", "b", 1.0, 1.0, 61.0}), DomainError);
  CHECK_THROWS_AS(conduction_delay({"a", "b", 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(BaseOscillator(0.01), DomainError);
  CHECK_THROWS_AS(BaseOscillator(601.0), DomainError);
  CHECK(BaseOscillator(40.0).period() == doctest::Approx(0.025));
}

TEST_CASE("saltatoric reset zeroes the phase from any state") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> potential(-5.0, 5.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> extra(1.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    auto n = neuron("x");
    n.potential = potential(rng);
    n.phase = std::fmod(phase(rng), 2.0 * std::numbers::pi);
    const double i_syn = n.i_th * extra(rng);
    CHECK(integrate_step(n, kDefaultStep, i_syn) == SpikeDecision::current);
    CHECK(n.phase == 0.0);
    CHECK(n.potential == 0.0);
  }
}

TEST_CASE("voltage path matches the leaky-integration recurrence") {
  auto n = neuron("x");
  const double dt = 1e-4;
  const double current = 150.0;  // below the current threshold
  // Closed form of p_k = p_{k-1} a + I dt from rest.
  const double a = std::exp(-dt / n.rc);
  const double gain = current * dt / (1.0 - a);
  const int expected_step =
      static_cast<int>(std::ceil(std::log(1.0 - n.v_th / gain) / std::log(a)));
  int step = 0;
  SpikeDecision d = SpikeDecision::none;
  double phase_before = 0.0;
  while (d == SpikeDecision::none && step < 100000) {
    phase_before = n.phase;
    d = integrate_step(n, dt, current);
    ++step;
  }
  CHECK(d == SpikeDecision::voltage);
  CHECK(step == expected_step);
  CHECK(n.potential == 0.0);
  CHECK(n.phase != 0.0);
  CHECK(n.phase == doctest::Approx(phase_before + dt / n.rc));

  // The step recurrence tracks the continuous crossing within a few steps.
  const double continuous = -n.rc * std::log(1.0 - n.v_th / (current * n.rc));
  CHECK(std::abs(step * dt - continuous) < 5 * dt);
}

TEST_CASE("integration rejects invalid steps") {
  auto n = neuron("x");
  CHECK_THROWS_AS(integrate_step(n, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(integrate_step(n, 1e-4, std::nan("")), DomainError);
}

TEST_CASE("phase lock offset and stationarity") {
  const BaseOscillator base(100.0);
  const auto r = phase_lock(neuron("n"), base, axon_with_delay("n", 2.5e-3));
  REQUIRE(r.locked);
  CHECK(r.offset_deg == doctest::Approx(90.0));
  REQUIRE(r.fire_times.size() == 100);
  const double first = r.fire_times.front();
  for (std::size_t k = 0; k < r.fire_times.size(); ++k) {
    CHECK(std::abs(r.fire_times[k] - k * base.period() - first) < 1e-9);
  }
}

TEST_CASE("two-member network locks to per-delay offsets") {
  const BaseOscillator base(40.0);
  const std::vector<OscillatorNeuron> ns{neuron("a"), neuron("b")};
  const std::vector<Axon> axons{axon_with_delay("a", 1e-3),
                                axon_with_delay("b", 2e-3)};
  const auto rep = phase_lock_network(ns, base, axons);
  REQUIRE(rep.run.ok);
  CHECK(rep.neurons[0].offset_deg == doctest::Approx(14.4));
  CHECK(rep.neurons[1].offset_deg == doctest::Approx(28.8));
  // Engine trace times agree with the offsets.
  CHECK(rep.neurons[1].fire_times[3] - rep.tick_times[3] == doctest::Approx(2e-3));
}

TEST_CASE("a tick below the current threshold does not lock") {
  auto n = neuron("weak");
  n.i_th = 1e9;
  const auto r = phase_lock(n, BaseOscillator(50.0),
                            axon_with_delay("weak", 1e-3));
  CHECK_FALSE(r.locked);
  CHECK_FALSE(r.reason.empty());
  CHECK(r.fire_times.empty());
}

TEST_CASE("full-gain learning aligns arrivals in one round") {
  const std::vector<Seconds> delays{1e-3, 1.5e-3, 2e-3};
  auto l = assembly_with_delays(delays);
  const auto rep =
      learn_arrival_phase(l.assembly, l.axons, BaseOscillator(40.0), 1.0, 10);
  CHECK(rep.converged);
  CHECK(rep.iterations == 1);
  CHECK(rep.spread_history.back() < 1e-9);
  CHECK(rep.spread_history.front() == doctest::Approx(14.4));
  const double mean_delay = (delays[0] + delays[1] + delays[2]) / 3.0;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    CHECK(std::abs(rep.offsets[i] - (mean_delay - delays[i])) < 1e-12);
  }
}

TEST_CASE("partial-gain learning contracts the spread geometrically") {
  const std::vector<Seconds> delays{1e-3, 1.5e-3, 2e-3};
  for (double eta : {0.25, 0.5, 0.8}) {
    auto l = assembly_with_delays(delays);
    const auto rep =
        learn_arrival_phase(l.assembly, l.axons, BaseOscillator(40.0), eta, 200);
    CHECK(rep.converged);
    const auto& s = rep.spread_history;
    // Below 1e-4 deg the ratio is dominated by clock rounding (absolute
    // engine time times machine epsilon), not by the update rule.
    for (std::size_t k = 1; k < s.size() && s[k] > 1e-4; ++k) {
      CHECK(s[k] / s[k - 1] == doctest::Approx(1.0 - eta).epsilon(1e-6));
    }
    for (std::size_t k = 1; k < rep.charge_history.size(); ++k) {
      CHECK(rep.charge_history[k] >= rep.charge_history[k - 1] - 1e-12);
    }
    CHECK(rep.raster.size() == delays.size() * s.size());
  }
}

TEST_CASE("learning edge cases") {
  auto equal = assembly_with_delays({1e-3, 1e-3});
  const auto rep = learn_arrival_phase(equal.assembly, equal.axons,
                                       BaseOscillator(40.0), 0.5, 10);
  CHECK(rep.iterations == 0);
  CHECK(rep.converged);

  auto slow = assembly_with_delays({1e-3, 2e-3});
  const auto capped = learn_arrival_phase(slow.assembly, slow.axons,
                                          BaseOscillator(40.0), 0.1, 3);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 3);

  CHECK_THROWS_AS(learn_arrival_phase(slow.assembly, slow.axons,
                                      BaseOscillator(40.0), 0.0, 3),
                  DomainError);
  CHECK_THROWS_AS(learn_arrival_phase(slow.assembly, slow.axons,
                                      BaseOscillator(40.0), 1.5, 3),
                  DomainError);
  auto mixed = slow;
  mixed.assembly.members[1].rc = 0.02;
  CHECK_THROWS_AS(learn_arrival_phase(mixed.assembly, mixed.axons,
                                      BaseOscillator(40.0), 0.5, 3),
                  DomainError);
  auto deaf = slow;
  deaf.assembly.members[0].i_th = 1e12;
  CHECK_THROWS_AS(learn_arrival_phase(deaf.assembly, deaf.axons,
                                      BaseOscillator(40.0), 0.5, 3),
                  std::runtime_error);
}

TEST_CASE("learning with reset delays still aligns arrivals") {
  auto l = assembly_with_delays({1e-3, 4e-3, 2e-3});
  LearningOptions opts;
  opts.reset_delays = {0.0, 3e-3, 5e-3};
  const auto rep = learn_arrival_phase(l.assembly, l.axons,
                                       BaseOscillator(40.0), 1.0, 5, opts);
  CHECK(rep.converged);
  CHECK(rep.spread_history.back() < 1e-9);
}

TEST_CASE("feedback on an idle receiver is delivered on arrival") {
  FeedbackQueue q(2);
  q.push({"a", 0.0, 0.3});
  q.push({"b", 1.0, 1.7});
  const auto r = feedback_round(q, {}, 1.0);
  REQUIRE(r.delivered.size() == 2);
  CHECK(r.dropped.empty());
  CHECK(r.delivered[0].staleness == doctest::Approx(0.3));
  CHECK(r.delivered[1].staleness == doctest::Approx(0.7));
  CHECK(r.staleness.mean == doctest::Approx(0.5));
  CHECK(r.staleness.min == doctest::Approx(0.3));
  CHECK(r.staleness.max == doctest::Approx(0.7));
}

TEST_CASE("a receiver busy for threshold plus one cycles drops the head item") {
  const int threshold = 3;
  FeedbackQueue q(threshold);
  q.push({"head", 0.0, 2.5});   // cycle 2, busy until cycle 6
  q.push({"young", 4.0, 5.5});  // cycle 5, waits one cycle
  BusySchedule busy;
  busy.add(2, threshold + 1);
  const auto r = feedback_round(q, busy, 1.0);
  REQUIRE(r.dropped.size() == 1);
  CHECK(r.dropped[0].item.source_id == "head");
  CHECK(r.dropped[0].waited_cycles == threshold + 1);
  CHECK(r.dropped[0].dropped_at == doctest::Approx(2.0 + threshold + 1));
  REQUIRE(r.delivered.size() == 1);
  CHECK(r.delivered[0].delivered_at == doctest::Approx(6.0));
  CHECK(r.delivered[0].staleness == doctest::Approx(2.0));
  const auto logged = std::count_if(
      r.run.trace.begin(), r.run.trace.end(),
      [](const auto& row) { return row.detail.rfind("drop from head", 0) == 0; });
  CHECK(logged == 1);
}

TEST_CASE("equal arrivals keep push order") {
  FeedbackQueue q(1);
  q.push({"first", 0.0, 1.0});
  q.push({"second", 0.5, 1.0});
  q.push({"early", 0.2, 0.4});
  CHECK(q.items()[0].source_id == "early");
  CHECK(q.items()[1].source_id == "first");
  CHECK(q.items()[2].source_id == "second");
  const auto r = feedback_round(q, {}, 1.0);
  CHECK(r.delivered[1].item.source_id == "first");
  CHECK(r.delivered[2].item.source_id == "second");
  CHECK_THROWS_AS(FeedbackQueue(-1), DomainError);
  CHECK_THROWS_AS(feedback_round(q, {}, 0.0), DomainError);
}

TEST_CASE("busy schedule merges overlapping spans") {
  BusySchedule b;
  b.add(2, 3);
  b.add(4, 4);
  CHECK(b.busy(2));
  CHECK(b.busy(7));
  CHECK_FALSE(b.busy(8));
  CHECK(b.next_idle(3) == 8);
  CHECK(b.next_idle(0) == 0);
}
