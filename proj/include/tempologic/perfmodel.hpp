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

#include "tempologic/timespace.hpp"

namespace tempologic::perf {

/// Execution split into payload arithmetic and blocking non-payload time.
/// Both fractions are relative to the full-precision arithmetic time.
struct WorkloadProfile {
  std::string label;
  double housekeeping = 0.0;       // FP0
  double transfer_fraction = 0.0;
};

struct BenchmarkObservation {
  std::string machine;
  double speedup = 1.0;
  double operand_shrink = 4.0;  // k; FP64 -> FP16 is 4
};

void validate(const WorkloadProfile& profile);

/// (fp0 + 1) / (fp0 + 1/k): arithmetic shrinks by k, housekeeping does not.
double operand_speedup(double housekeeping, double operand_shrink);

/// Inverse of operand_speedup: fp0 = (1 - s/k) / (s - 1).
/// Requires 1 < speedup < k.
double fit_housekeeping(const BenchmarkObservation& observation);

/// Tp / T_A(Tp, (transfer_fraction + fp0) * Tp). At most 0.5.
double efficiency(const WorkloadProfile& profile, Seconds processing = 1.0);

/// efficiency(baseline) / efficiency(profile).
double efficiency_ratio(const WorkloadProfile& baseline,
                        const WorkloadProfile& profile);

/// Total blocking fraction r whose efficiency is `ratio` times lower than
/// the baseline's; r = -1 + sqrt(s^2 / 2 - 1) with s the required T_A / Tp.
double blocking_fraction_for_ratio(const WorkloadProfile& baseline,
                                   double ratio);

struct SweepRow {
  std::string label;
  double transfer_fraction = 0.0;
  double efficiency = 0.0;
  double ratio = 1.0;  // baseline efficiency over this row's
};

/// One row per transfer fraction, ascending, for a profile sharing the
/// baseline's housekeeping unless `housekeeping` is given.
std::vector<SweepRow> efficiency_sweep(const WorkloadProfile& baseline,
                                       std::span<const double> fractions,
                                       std::string label,
                                       std::optional<double> housekeeping = {});

/// Smallest swept transfer fraction whose ratio reaches `target`.
std::optional<double> first_fraction_reaching(std::span<const SweepRow> rows,
                                              double target);

/// Geometric grid with `per_decade` points per decade over [lo, hi], plus 0.
std::vector<double> log_grid(double lo, double hi, int per_decade);

/// R = switch cost / payload instructions between switches.
double context_switch_penalty(std::uint64_t instructions_per_switch,
                              std::uint64_t switch_cost_instructions);

/// Timing of one switch interval, given the time of a single instruction.
EventTiming context_switch_timing(std::uint64_t instructions_per_switch,
                                  std::uint64_t switch_cost_instructions,
                                  Seconds instruction_time);

}  // namespace tempologic::perf
