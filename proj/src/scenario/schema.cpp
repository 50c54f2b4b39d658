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

#include "tempologic/scenario.hpp"

namespace tempologic::scenario {

const std::string& config_schema() {
  static const std::string schema = R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "https://tempologic.invalid/config.schema.json",
  "title": "tempologic scenario config",
  "type": "object",
  "required": ["scenario", "units"],
  "additionalProperties": false,
  "properties": {
    "scenario": {
      "enum": ["lightcone", "cache", "bus", "hidden-layer", "shallow-deep",
               "perf-fit", "efficiency-sweep", "assembly-sync",
               "feedback-staleness"]
    },
    "units": {
      "type": "object",
      "required": ["length"],
      "properties": {"length": {"type": "string", "minLength": 1}}
    },
    "seed": {"type": "integer", "minimum": 0},
    "output": {
      "type": "object",
      "properties": {"dir": {"type": "string"}}
    },
    "components": {
      "type": "array",
      "items": {"$ref": "#/$defs/component"}
    },
    "parameters": {"type": "object"}
  },
  "allOf": [
    {
      "if": {"properties": {"scenario": {"const": "lightcone"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["source", "observers"],
        "properties": {
          "source": {"type": "string"},
          "observers": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["core"],
            "properties": {"core": {"type": "string"},
                           "speed": {"$ref": "#/$defs/positive"}}}}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "cache"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["accesses"],
        "properties": {
          "speed": {"$ref": "#/$defs/positive"},
          "accesses": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["core", "cache"],
            "properties": {"core": {"type": "string"},
                           "cache": {"type": "string"}}}}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "bus"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["bus", "receiver"],
        "properties": {
          "bus": {"type": "string"},
          "receiver": {"type": "string"},
          "senders": {"type": "array", "items": {"type": "string"}},
          "layer_size": {"type": "integer", "minimum": 1},
          "geometry": {"$ref": "#/$defs/layer_geometry"}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "hidden-layer"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["bus", "layer_sizes"],
        "properties": {
          "bus": {"type": "string"},
          "layer_sizes": {"type": "array", "minItems": 1,
                          "items": {"type": "integer", "minimum": 1}},
          "topologies": {"type": "array",
                         "items": {"enum": ["shared-bus", "parallel"]}},
          "geometry": {"$ref": "#/$defs/layer_geometry"}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "shallow-deep"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["bus", "total_neurons", "arrangements"],
        "properties": {
          "bus": {"type": "string"},
          "total_neurons": {"type": "integer", "minimum": 1},
          "tp": {"type": "number", "minimum": 0},
          "arrangements": {"type": "array", "minItems": 1, "items": {
            "type": "array", "minItems": 1,
            "items": {"type": "integer", "minimum": 1}}}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "perf-fit"}}},
      "then": {"properties": {"parameters": {
        "properties": {
          "observations": {"type": "array", "items": {
            "type": "object", "required": ["machine", "speedup"],
            "properties": {"machine": {"type": "string"},
                           "speedup": {"type": "number"},
                           "k": {"type": "number"}}}},
          "k": {"type": "number"},
          "fp0": {"type": "number", "minimum": 0},
          "curve": {"type": "object", "required": ["fp0"], "properties": {
            "k": {"type": "number"},
            "fp0": {"type": "array", "items": {"type": "number"}}}}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "efficiency-sweep"}}},
      "then": {"properties": {"parameters": {
        "properties": {
          "baseline": {"$ref": "#/$defs/profile"},
          "profiles": {"type": "array", "items": {"$ref": "#/$defs/profile"}},
          "sweep": {"type": "object", "properties": {
            "from": {"$ref": "#/$defs/positive"},
            "to": {"$ref": "#/$defs/positive"},
            "per_decade": {"type": "integer", "minimum": 1},
            "label": {"type": "string"},
            "fp0": {"type": "number", "minimum": 0}}},
          "ratio_targets": {"type": "array", "items": {"type": "number"}},
          "transfer_fraction": {"type": "number", "minimum": 0},
          "fp0": {"type": "number", "minimum": 0}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "assembly-sync"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["base_frequency", "members"],
        "properties": {
          "base_frequency": {"type": "number", "minimum": 0.02, "maximum": 600},
          "eta": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
          "max_iter": {"type": "integer", "minimum": 0},
          "tolerance_deg": {"type": "number", "minimum": 0},
          "step": {"$ref": "#/$defs/positive"},
          "charge": {"type": "number"},
          "target": {"type": "string"},
          "members": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["neuron", "axon"],
            "properties": {
              "neuron": {"type": "string"},
              "reset_delay": {"type": "number", "minimum": 0},
              "axon": {"type": "object", "required": ["length"],
                "properties": {
                  "length": {"type": "number", "minimum": 0},
                  "base_velocity": {"$ref": "#/$defs/positive"},
                  "myelination": {"type": "number", "minimum": 1,
                                  "maximum": 60}}}}}}
        }}}}
    },
    {
      "if": {"properties": {"scenario": {"const": "feedback-staleness"}}},
      "then": {"required": ["parameters"], "properties": {"parameters": {
        "required": ["cycle_length", "drop_threshold", "items"],
        "properties": {
          "cycle_length": {"$ref": "#/$defs/positive"},
          "drop_threshold": {"type": "integer", "minimum": 0},
          "receiver": {"type": "string"},
          "busy": {"type": "array", "items": {
            "type": "object", "required": ["first", "count"],
            "properties": {"first": {"type": "integer"},
                           "count": {"type": "integer", "minimum": 0}}}},
          "items": {"type": "array", "items": {
            "type": "object", "required": ["source", "stamp", "delay"],
            "properties": {"source": {"type": "string"},
                           "stamp": {"type": "number"},
                           "delay": {"type": "number", "minimum": 0}}}}
        }}}}
    }
  ],
  "$defs": {
    "positive": {"type": "number", "exclusiveMinimum": 0},
    "point": {"type": "array", "minItems": 2, "maxItems": 3,
              "items": {"type": "number"}},
    "layer_geometry": {"type": "object", "properties": {
      "receiver": {"$ref": "#/$defs/point"},
      "radius": {"type": "number", "minimum": 0},
      "speed": {"$ref": "#/$defs/positive"}}},
    "profile": {"type": "object", "properties": {
      "label": {"type": "string"},
      "fp0": {"type": "number", "minimum": 0},
      "transfer_fraction": {"type": "number", "minimum": 0}}},
    "component": {
      "type": "object",
      "required": ["id", "type", "position"],
      "properties": {
        "id": {"type": "string", "minLength": 1},
        "type": {"enum": ["core", "cache", "bus", "neuron"]},
        "position": {"$ref": "#/$defs/point"},
        "tp": {"type": "number", "minimum": 0},
        "operate_time": {"type": "number", "minimum": 0},
        "t_b": {"type": "number", "minimum": 0},
        "t_d": {"type": "number", "minimum": 0},
        "foreign": {"type": "object", "properties": {
          "kind": {"enum": ["constant", "exponential"]},
          "value": {"type": "number", "minimum": 0}}},
        "rc": {"$ref": "#/$defs/positive"},
        "v_th": {"$ref": "#/$defs/positive"},
        "i_th": {"$ref": "#/$defs/positive"}
      },
      "allOf": [
        {"if": {"properties": {"type": {"const": "cache"}}},
         "then": {"required": ["operate_time"]}},
        {"if": {"properties": {"type": {"const": "bus"}}},
         "then": {"required": ["t_b"]}}
      ]
    }
  }
}
)schema";
  return schema;
}

}  // namespace tempologic::scenario
