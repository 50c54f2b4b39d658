# Copyright 2026 The tempologic Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the tempologic time-space simulator."""

import json as _json

from ._core import (
    CausalityError,
    ConfigError,
    DomainError,
    __version__,
    apparent_processing_time,
    apparent_processing_time_from_ratio,
    blocking_fraction_for_ratio,
    cache_access,
    circular_mean,
    config_schema,
    efficiency,
    fit_housekeeping,
    hidden_layer_scaling,
    learn_arrival_phase,
    light_cone_trace,
    operand_speedup,
    phase_shift,
    propagation_delay,
    scenario_kinds,
    shared_bus_transfer,
)
from ._core import run_scenario as _run_scenario
from ._core import run_sweep as _run_sweep


def _dump(config):
    return config if isinstance(config, str) else _json.dumps(config)


def run_scenario(config, seed=None):
    """Run a scenario config (dict or JSON text); returns files and headline."""
    return _run_scenario(_dump(config), seed)


def run_sweep(config, param, start, stop, steps, seed=None):
    return _run_sweep(_dump(config), param, start, stop, steps, seed)


def schema():
    return _json.loads(config_schema())
