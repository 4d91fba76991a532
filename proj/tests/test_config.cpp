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

#include <filesystem>

#include <doctest.h>

#include "codipas/config.hpp"

using namespace codipas;
using nlohmann::json;

namespace {

json minimal_config() {
  return json::parse(R"({
    "game": {"matrix": [[5, 2], [1, 3]], "constant_c": 0.0,
             "noise": {"kind": "iid-uniform", "lo": -1.0, "hi": 1.0}},
    "players": {
      "p1": {"scheme": "CRL1", "lambda": {"family": "R2"}, "mu": {"family": "R1"},
             "epsilon": 0.05},
      "p2": {"scheme": "RL2",
             "lambda": {"family": "scaled", "k": 0.1, "base": {"family": "R1"}},
             "action_perturbation": 0.05}
    },
    "run": {"horizon": 100, "seeds": [1, 2], "record_stride": 5},
    "output": {"directory": "out/test", "plots": true}
  })");
}

std::filesystem::path config_dir() { return CODIPAS_CONFIG_DIR; }

}  // namespace

TEST_CASE("parse a full config") {
  const ExperimentConfig config = parse_experiment_config(minimal_config());
  const Experiment& exp = config.experiment;
  CHECK(exp.spec.num_rows() == 2);
  CHECK(exp.spec.noise().kind == NoiseModel::Kind::kIidUniform);
  CHECK(exp.p1.scheme == LearnerScheme::kCrl1);
  CHECK(exp.p1.lambda.family() == RateSchedule::Family::kR2);
  CHECK(exp.p1.epsilon == 0.05);
  CHECK(exp.p2.scheme == LearnerScheme::kRl2);
  CHECK(exp.p2.lambda.scale_k() == 0.1);
  CHECK(exp.p2.action_perturbation == 0.05);
  CHECK(exp.horizon == 100);
  CHECK(exp.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(exp.record_stride == 5);
  CHECK(config.output_directory == std::filesystem::path("out/test"));
  CHECK(config.plots);
}

TEST_CASE("round trip preserves the document semantics") {
  json document = minimal_config();
  document["players"]["p1"]["initial_strategy"] = {0.25, 0.75};
  document["players"]["p2"]["initial_estimates"] = {1.5, -0.5};
  const ExperimentConfig config = parse_experiment_config(document);
  const json serialized = to_json(config);
  const ExperimentConfig reparsed = parse_experiment_config(serialized);
  CHECK(to_json(reparsed) == serialized);
  CHECK(reparsed.experiment.spec == config.experiment.spec);
  CHECK(reparsed.experiment.seeds == config.experiment.seeds);
  CHECK(reparsed.experiment.p1.lambda == config.experiment.p1.lambda);
  CHECK(reparsed.experiment.p2.lambda == config.experiment.p2.lambda);
  CHECK(*reparsed.experiment.initial_f == *config.experiment.initial_f);
  CHECK(*reparsed.experiment.initial_estimates2 == *config.experiment.initial_estimates2);
}

TEST_CASE("unknown keys are rejected at every level") {
  for (const char* path : {"/bogus", "/game/bogus", "/game/noise/bogus", "/players/bogus",
                           "/players/p1/bogus", "/players/p1/lambda/bogus", "/run/bogus",
                           "/output/bogus"}) {
    json document = minimal_config();
    document[json::json_pointer(path)] = 1;
    CHECK_THROWS_AS(parse_experiment_config(document), ConfigError);
  }
}

TEST_CASE("invalid values are rejected with context") {
  auto expect_reject = [](const char* pointer, json value) {
    json document = minimal_config();
    document[json::json_pointer(pointer)] = std::move(value);
    CHECK_THROWS_AS(parse_experiment_config(document), ConfigError);
  };
  expect_reject("/run/horizon", 0);
  expect_reject("/run/horizon", 10.5);
  expect_reject("/run/seeds", json::array());
  expect_reject("/run/record_stride", -1);
  expect_reject("/game/matrix", json::array());
  expect_reject("/game/matrix", json::parse("[[1, 2], [3]]"));
  expect_reject("/game/noise/kind", "gaussian");
  expect_reject("/game/noise/lo", 2.0);  // lo > hi
  expect_reject("/players/p1/scheme", "RL9");
  expect_reject("/players/p1/epsilon", 0.0);
  expect_reject("/players/p1/lambda/family", "R7");
  expect_reject("/players/p1/initial_strategy", json::parse("[0.5, 0.6]"));
  expect_reject("/players/p2/action_perturbation", 1.5);

  json r4_without_params = minimal_config();
  r4_without_params["players"]["p1"]["lambda"] = {{"family", "R4"}};
  CHECK_THROWS_AS(parse_experiment_config(r4_without_params), ConfigError);
  json r1_with_rho = minimal_config();
  r1_with_rho["players"]["p1"]["lambda"] = {{"family", "R1"}, {"rho", 0.7}};
  CHECK_THROWS_AS(parse_experiment_config(r1_with_rho), ConfigError);
}

TEST_CASE("rate schedule serialization round trips") {
  for (const RateSchedule& schedule :
       {RateSchedule::r1(), RateSchedule::r2(), RateSchedule::r3(), RateSchedule::r4(0.75, 3.5),
        RateSchedule::scaled(RateSchedule::r4(0.51, 1e6), 0.115),
        RateSchedule::scaled(RateSchedule::scaled(RateSchedule::r2(), 2.0), 0.5)}) {
    const RateSchedule round = rate_schedule_from_json(rate_schedule_to_json(schedule), "test");
    CHECK(round == schedule);
  }
}

TEST_CASE("inline matrix parsing") {
  const GameSpec spec = parse_inline_matrix("5,2;1,3");
  CHECK(spec.num_rows() == 2);
  CHECK(spec.base_entry(0, 1) == 2.0);
  CHECK(parse_inline_matrix("7").num_rows() == 1);
  CHECK_THROWS_AS(parse_inline_matrix("5,2;1"), ConfigError);
  CHECK_THROWS_AS(parse_inline_matrix("a,b"), ConfigError);
  CHECK_THROWS_AS(parse_inline_matrix(""), ConfigError);
}

TEST_CASE("shipped configs load, validate, and round trip") {
  for (const char* name : {"crl1_selfplay.cfg", "crl1_vs_rl2.cfg", "dominated_crl1.cfg",
                           "two_timescale.cfg", "rl2_replicator_compare.cfg"}) {
    const ExperimentConfig config = load_experiment_config(config_dir() / name);
    CHECK(config.experiment.validate().empty());
    const json serialized = to_json(config);
    CHECK(to_json(parse_experiment_config(serialized)) == serialized);
  }

  const ExperimentConfig selfplay = load_experiment_config(config_dir() / "crl1_selfplay.cfg");
  CHECK(selfplay.experiment.p1.scheme == LearnerScheme::kCrl1);
  CHECK(selfplay.experiment.p1.epsilon == 0.05);
  CHECK(selfplay.experiment.horizon == 8000);
  CHECK(selfplay.experiment.seeds.size() == 20);

  const ExperimentConfig pairing = load_experiment_config(config_dir() / "crl1_vs_rl2.cfg");
  CHECK(pairing.experiment.p2.scheme == LearnerScheme::kRl2);
  CHECK(pairing.experiment.spec.constant_c() == 6.0);
  CHECK((*pairing.experiment.initial_f)[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));

  CHECK_THROWS_AS(load_experiment_config(config_dir() / "missing.cfg"), IoError);
}
