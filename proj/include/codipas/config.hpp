// Copyright 2026 The codipas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CODIPAS_CONFIG_HPP_
#define CODIPAS_CONFIG_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "codipas/harness.hpp"

namespace codipas {

// Experiment config file (JSON):
//
// {
//   "game":    {"matrix": [[5,2],[1,3]], "constant_c": 0,
//               "noise": {"kind": "iid-uniform", "lo": -1, "hi": 1}},
//   "players": {"p1": {"scheme": "CRL1", "lambda": {"family": "R2"},
//                      "mu": {"family": "R1"}, "epsilon": 0.05},
//               "p2": {...}},
//   "run":     {"horizon": 8000, "seeds": [1,2,3], "record_stride": 10},
//   "output":  {"directory": "out", "plots": false}
// }
//
// Unknown keys are rejected everywhere; numeric fields are validated against
// the module preconditions at load time.
struct ExperimentConfig {
  Experiment experiment;
  std::filesystem::path output_directory = "out";
  bool plots = false;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& document);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json rate_schedule_to_json(const RateSchedule& schedule);
RateSchedule rate_schedule_from_json(const nlohmann::json& document, const std::string& context);

// Parses a "game" section on its own (used by the solve/ode commands).
GameSpec parse_game(const nlohmann::json& document);

// Parses an inline matrix of the form "5,2;1,3" (rows separated by ';').
GameSpec parse_inline_matrix(const std::string& text);

}  // namespace codipas

#endif  // CODIPAS_CONFIG_HPP_
