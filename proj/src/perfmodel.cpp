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

#include "tempologic/perfmodel.hpp"

#include <algorithm>
#include <cmath>

#include "tempologic/errors.hpp"
#include "tempologic/numfmt.hpp"

namespace tempologic::perf {

namespace {

void require_fraction(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

void validate(const WorkloadProfile& profile) {
  require_fraction(profile.housekeeping, "housekeeping fraction");
  require_fraction(profile.transfer_fraction, "transfer fraction");
}

double operand_speedup(double housekeeping, double operand_shrink) {
  require_fraction(housekeeping, "housekeeping fraction");
  if (!std::isfinite(operand_shrink) || operand_shrink < 1.0) {
    throw DomainError("operand shrink factor must be >= 1");
  }
  return (housekeeping + 1.0) / (housekeeping + 1.0 / operand_shrink);
}

double fit_housekeeping(const BenchmarkObservation& obs) {
  const double s = obs.speedup;
  const double k = obs.operand_shrink;
  if (!std::isfinite(s) || !std::isfinite(k) || k <= 1.0) {
    throw DomainError("observation needs finite speedup and shrink > 1");
  }
  if (s <= 1.0) {
    throw DomainError("speedup " + format_number(s) + " of '" + obs.machine +
                      "' is not above 1; no housekeeping fraction fits");
  }
  if (s >= k) {
    throw DomainError("speedup " + format_number(s) + " of '" + obs.machine +
                      "' reaches the shrink factor; fit would be negative");
  }
  return (1.0 - s / k) / (s - 1.0);
}

double efficiency(const WorkloadProfile& profile, Seconds processing) {
  validate(profile);
  if (!std::isfinite(processing) || processing <= 0.0) {
    throw DomainError("processing time must be > 0");
  }
  // Housekeeping blocks the arithmetic exactly like a transfer does.
  const Seconds blocking =
      (profile.transfer_fraction + profile.housekeeping) * processing;
  return processing / apparent_processing_time(processing, blocking);
}

double efficiency_ratio(const WorkloadProfile& baseline,
                        const WorkloadProfile& profile) {
  return efficiency(baseline) / efficiency(profile);
}

double blocking_fraction_for_ratio(const WorkloadProfile& baseline,
                                   double ratio) {
  if (!std::isfinite(ratio) || ratio < 1.0) {
    throw DomainError("efficiency ratio must be >= 1");
  }
  const double s = ratio / efficiency(baseline);  // required T_A / Tp
  return -1.0 + std::sqrt(s * s / 2.0 - 1.0);
}

std::vector<SweepRow> efficiency_sweep(const WorkloadProfile& baseline,
                                       std::span<const double> fractions,
                                       std::string label,
                                       std::optional<double> housekeeping) {
  std::vector<double> sorted(fractions.begin(), fractions.end());
  std::sort(sorted.begin(), sorted.end());
  const double base = efficiency(baseline);
  std::vector<SweepRow> rows;
  rows.reserve(sorted.size());
  for (double f : sorted) {
    WorkloadProfile p{label, housekeeping.value_or(baseline.housekeeping), f};
    const double e = efficiency(p);
    rows.push_back({label, f, e, base / e});
  }
  return rows;
}

std::optional<double> first_fraction_reaching(std::span<const SweepRow> rows,
                                              double target) {
  for (const auto& r : rows) {
    if (r.ratio >= target) return r.transfer_fraction;
  }
  return std::nullopt;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1) {
    throw DomainError("log grid needs 0 < lo <= hi and per_decade >= 1");
  }
  std::vector<double> out{0.0};
  const double start = std::log10(lo);
  const double span = std::log10(hi) - start;
  const int steps = static_cast<int>(std::ceil(span * per_decade - 1e-9));
  for (int i = 0; i <= steps; ++i) {
    out.push_back(std::min(hi, std::pow(10.0, start + i / double(per_decade))));
  }
  return out;
}

double context_switch_penalty(std::uint64_t instructions_per_switch,
                              std::uint64_t switch_cost_instructions) {
  if (instructions_per_switch == 0 || switch_cost_instructions == 0) {
    throw DomainError("context switch counts must be > 0");
  }
  return static_cast<double>(switch_cost_instructions) /
         static_cast<double>(instructions_per_switch);
}

EventTiming context_switch_timing(std::uint64_t instructions_per_switch,
                                  std::uint64_t switch_cost_instructions,
                                  Seconds instruction_time) {
  const double r =
      context_switch_penalty(instructions_per_switch, switch_cost_instructions);
  const Seconds tp =
      static_cast<double>(instructions_per_switch) * instruction_time;
  return EventTiming(tp, r * tp);
}

}  // namespace tempologic::perf
