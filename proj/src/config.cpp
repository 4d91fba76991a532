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

#include "codipas/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace codipas {
namespace {

using nlohmann::json;

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!object.is_object()) throw ConfigError(context + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + context);
    }
  }
}

double get_number(const json& object, const std::string& key, const std::string& context) {
  if (!object.contains(key)) throw ConfigError(context + " is missing '" + key + "'");
  const json& value = object.at(key);
  if (!value.is_number()) throw ConfigError(context + "." + key + " must be a number");
  return value.get<double>();
}

double get_number_or(const json& object, const std::string& key, double fallback,
                     const std::string& context) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_number()) throw ConfigError(context + "." + key + " must be a number");
  return value.get<double>();
}

std::vector<double> get_vector(const json& value, const std::string& context) {
  if (!value.is_array() || value.empty()) throw ConfigError(context + " must be a non-empty array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& entry : value) {
    if (!entry.is_number()) throw ConfigError(context + " entries must be numbers");
    out.push_back(entry.get<double>());
  }
  return out;
}

NoiseModel parse_noise(const json& document) {
  check_keys(document, {"kind", "lo", "hi"}, "game.noise");
  if (!document.contains("kind") || !document.at("kind").is_string()) {
    throw ConfigError("game.noise.kind must be a string");
  }
  const std::string kind = document.at("kind").get<std::string>();
  if (kind == "none") {
    if (document.contains("lo") || document.contains("hi")) {
      throw ConfigError("game.noise of kind 'none' takes no bounds");
    }
    return NoiseModel::none();
  }
  if (kind == "iid-uniform") {
    try {
      return NoiseModel::iid_uniform(get_number(document, "lo", "game.noise"),
                                     get_number(document, "hi", "game.noise"));
    } catch (const std::domain_error& error) {
      throw ConfigError(error.what());
    }
  }
  throw ConfigError("game.noise.kind must be 'none' or 'iid-uniform'");
}

LearnerConfig parse_player(const json& document, const std::string& context) {
  check_keys(document,
             {"scheme", "lambda", "mu", "epsilon", "rl3_n", "rl3_C", "action_perturbation",
              "initial_strategy", "initial_estimates"},
             context);
  if (!document.contains("scheme") || !document.at("scheme").is_string()) {
    throw ConfigError(context + ".scheme must be a string");
  }
  LearnerConfig config;
  try {
    config.scheme = learner_scheme_from_string(document.at("scheme").get<std::string>());
    if (document.contains("lambda")) {
      config.lambda = rate_schedule_from_json(document.at("lambda"), context + ".lambda");
    }
    if (document.contains("mu")) {
      config.mu = rate_schedule_from_json(document.at("mu"), context + ".mu");
    }
  } catch (const std::domain_error& error) {
    throw ConfigError(error.what());
  }
  config.epsilon = get_number_or(document, "epsilon", config.epsilon, context);
  config.rl3_n = get_number_or(document, "rl3_n", 0.0, context);
  config.rl3_C = get_number_or(document, "rl3_C", 0.0, context);
  config.action_perturbation = get_number_or(document, "action_perturbation", 0.0, context);
  return config;
}

json noise_to_json(const NoiseModel& noise) {
  if (noise.kind == NoiseModel::Kind::kNone) return json{{"kind", "none"}};
  return json{{"kind", "iid-uniform"}, {"lo", noise.lo}, {"hi", noise.hi}};
}

json player_to_json(const LearnerConfig& config, const std::optional<MixedStrategy>& strategy,
                    const std::optional<std::vector<double>>& estimates) {
  json out{{"scheme", to_string(config.scheme)},
           {"lambda", rate_schedule_to_json(config.lambda)}};
  if (config.uses_estimates()) out["mu"] = rate_schedule_to_json(config.mu);
  if (config.uses_epsilon()) out["epsilon"] = config.epsilon;
  if (config.scheme == LearnerScheme::kRl3) {
    if (config.rl3_n > 0.0) out["rl3_n"] = config.rl3_n;
    if (config.rl3_C > 0.0) out["rl3_C"] = config.rl3_C;
  }
  if (config.action_perturbation > 0.0) out["action_perturbation"] = config.action_perturbation;
  if (strategy) out["initial_strategy"] = strategy->probs();
  if (estimates) out["initial_estimates"] = *estimates;
  return out;
}

}  // namespace

RateSchedule rate_schedule_from_json(const json& document, const std::string& context) {
  check_keys(document, {"family", "rho", "cprime", "k", "base"}, context);
  if (!document.contains("family") || !document.at("family").is_string()) {
    throw ConfigError(context + ".family must be a string");
  }
  const std::string family = document.at("family").get<std::string>();
  auto forbid = [&](const char* key) {
    if (document.contains(key)) {
      throw ConfigError(context + ": key '" + key + "' is not valid for family " + family);
    }
  };
  if (family == "R1" || family == "R2" || family == "R3") {
    forbid("rho");
    forbid("cprime");
    forbid("k");
    forbid("base");
    if (family == "R1") return RateSchedule::r1();
    if (family == "R2") return RateSchedule::r2();
    return RateSchedule::r3();
  }
  if (family == "R4") {
    forbid("k");
    forbid("base");
    return RateSchedule::r4(get_number(document, "rho", context),
                            get_number(document, "cprime", context));
  }
  if (family == "scaled") {
    forbid("rho");
    forbid("cprime");
    if (!document.contains("base")) throw ConfigError(context + ".base is required for scaled");
    return RateSchedule::scaled(rate_schedule_from_json(document.at("base"), context + ".base"),
                                get_number(document, "k", context));
  }
  throw ConfigError(context + ".family must be one of R1, R2, R3, R4, scaled");
}

json rate_schedule_to_json(const RateSchedule& schedule) {
  switch (schedule.family()) {
    case RateSchedule::Family::kR1:
      return json{{"family", "R1"}};
    case RateSchedule::Family::kR2:
      return json{{"family", "R2"}};
    case RateSchedule::Family::kR3:
      return json{{"family", "R3"}};
    case RateSchedule::Family::kR4:
      return json{{"family", "R4"}, {"rho", schedule.rho()}, {"cprime", schedule.cprime()}};
    case RateSchedule::Family::kScaled:
      return json{{"family", "scaled"},
                  {"k", schedule.scale_k()},
                  {"base", rate_schedule_to_json(schedule.base())}};
  }
  throw std::logic_error("unknown rate family");
}

GameSpec parse_game(const json& document) {
  check_keys(document, {"matrix", "constant_c", "noise"}, "game");
  if (!document.contains("matrix") || !document.at("matrix").is_array() ||
      document.at("matrix").empty()) {
    throw ConfigError("game.matrix must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> matrix;
  for (const json& row : document.at("matrix")) {
    matrix.push_back(get_vector(row, "game.matrix row"));
  }
  const double constant_c = get_number_or(document, "constant_c", 0.0, "game");
  NoiseModel noise = NoiseModel::none();
  if (document.contains("noise")) noise = parse_noise(document.at("noise"));
  try {
    return GameSpec(std::move(matrix), constant_c, noise);
  } catch (const std::domain_error& error) {
    throw ConfigError(error.what());
  }
}

GameSpec parse_inline_matrix(const std::string& text) {
  std::vector<std::vector<double>> matrix;
  std::stringstream rows(text);
  std::string row_text;
  while (std::getline(rows, row_text, ';')) {
    std::vector<double> row;
    std::stringstream cells(row_text);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ConfigError("cannot parse matrix entry '" + cell + "'");
      }
    }
    matrix.push_back(std::move(row));
  }
  try {
    return GameSpec(std::move(matrix));
  } catch (const std::domain_error& error) {
    throw ConfigError(error.what());
  }
}

ExperimentConfig parse_experiment_config(const json& document) {
  check_keys(document, {"game", "players", "run", "output"}, "config");
  if (!document.contains("game")) throw ConfigError("config is missing the 'game' section");
  if (!document.contains("players")) throw ConfigError("config is missing the 'players' section");
  if (!document.contains("run")) throw ConfigError("config is missing the 'run' section");

  ExperimentConfig config{Experiment{parse_game(document.at("game")), LearnerConfig{},
                                     LearnerConfig{}, 1, {}, 1, std::nullopt, std::nullopt,
                                     std::nullopt, std::nullopt}};
  Experiment& exp = config.experiment;

  const json& players = document.at("players");
  check_keys(players, {"p1", "p2"}, "players");
  if (!players.contains("p1") || !players.contains("p2")) {
    throw ConfigError("players must define both 'p1' and 'p2'");
  }
  exp.p1 = parse_player(players.at("p1"), "players.p1");
  exp.p2 = parse_player(players.at("p2"), "players.p2");

  auto parse_initials = [&](const json& player, const std::string& context, int player_index) {
    if (player.contains("initial_strategy")) {
      try {
        MixedStrategy strategy(get_vector(player.at("initial_strategy"), context + ".initial_strategy"));
        (player_index == 1 ? exp.initial_f : exp.initial_g) = std::move(strategy);
      } catch (const std::domain_error& error) {
        throw ConfigError(context + ".initial_strategy: " + error.what());
      }
    }
    if (player.contains("initial_estimates")) {
      auto estimates = get_vector(player.at("initial_estimates"), context + ".initial_estimates");
      (player_index == 1 ? exp.initial_estimates1 : exp.initial_estimates2) = std::move(estimates);
    }
  };
  parse_initials(players.at("p1"), "players.p1", 1);
  parse_initials(players.at("p2"), "players.p2", 2);

  const json& run = document.at("run");
  check_keys(run, {"horizon", "seeds", "record_stride"}, "run");
  const double horizon = get_number(run, "horizon", "run");
  if (horizon < 1 || horizon != std::floor(horizon)) {
    throw ConfigError("run.horizon must be a positive integer");
  }
  exp.horizon = static_cast<std::int64_t>(horizon);
  if (!run.contains("seeds") || !run.at("seeds").is_array() || run.at("seeds").empty()) {
    throw ConfigError("run.seeds must be a non-empty array of integers");
  }
  for (const json& seed : run.at("seeds")) {
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw ConfigError("run.seeds entries must be integers");
    }
    exp.seeds.push_back(seed.get<std::uint64_t>());
  }
  const double stride = get_number_or(run, "record_stride", 1.0, "run");
  if (stride < 1 || stride != std::floor(stride)) {
    throw ConfigError("run.record_stride must be a positive integer");
  }
  exp.record_stride = static_cast<std::int64_t>(stride);

  if (document.contains("output")) {
    const json& output = document.at("output");
    check_keys(output, {"directory", "plots"}, "output");
    if (output.contains("directory")) {
      if (!output.at("directory").is_string()) throw ConfigError("output.directory must be a string");
      config.output_directory = output.at("directory").get<std::string>();
    }
    if (output.contains("plots")) {
      if (!output.at("plots").is_boolean()) throw ConfigError("output.plots must be a boolean");
      config.plots = output.at("plots").get<bool>();
    }
  }

  exp.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  json document;
  try {
    document = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& error) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + error.what());
  }
  return parse_experiment_config(document);
}

json to_json(const ExperimentConfig& config) {
  const Experiment& exp = config.experiment;
  json game{{"matrix", exp.spec.matrix()},
            {"constant_c", exp.spec.constant_c()},
            {"noise", noise_to_json(exp.spec.noise())}};
  json players{{"p1", player_to_json(exp.p1, exp.initial_f, exp.initial_estimates1)},
               {"p2", player_to_json(exp.p2, exp.initial_g, exp.initial_estimates2)}};
  json run{{"horizon", exp.horizon}, {"seeds", exp.seeds}, {"record_stride", exp.record_stride}};
  json output{{"directory", config.output_directory.string()}, {"plots", config.plots}};
  return json{{"game", game}, {"players", players}, {"run", run}, {"output", output}};
}

}  // namespace codipas
