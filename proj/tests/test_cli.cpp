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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using codipas::testing::count_lines;
using codipas::testing::read_file;

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path tmp_root() {
  const fs::path root = fs::path(CODIPAS_TEST_TMPDIR);
  fs::create_directories(root);
  return root;
}

CliResult run_cli(const std::string& args, const std::string& tag) {
  const fs::path out = tmp_root() / (tag + ".out");
  const fs::path err = tmp_root() / (tag + ".err");
  const std::string command = std::string(CODIPAS_CLI_PATH) + " " + args + " > " + out.string() +
                              " 2> " + err.string();
  const int status = std::system(command.c_str());
  int code = -1;
  if (status != -1 && WIFEXITED(status)) code = WEXITSTATUS(status);
  return CliResult{code, read_file(out), read_file(err)};
}

std::string config_path(const std::string& name) {
  return (fs::path(CODIPAS_CONFIG_DIR) / name).string();
}

double parse_result_field(const std::string& output, const std::string& key) {
  const std::string needle = key + "=";
  const std::size_t at = output.rfind(needle);
  REQUIRE(at != std::string::npos);
  return std::stod(output.substr(at + needle.size()));
}

}  // namespace

TEST_CASE("cli solve") {
  const CliResult r = run_cli("solve --matrix \"5,2;1,3\"", "solve_basic");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("RESULT saddle") != std::string::npos);
  CHECK(parse_result_field(r.out, "value") == doctest::Approx(2.6).epsilon(1e-9));
  CHECK(parse_result_field(r.out, "f") == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(parse_result_field(r.out, "g") == doctest::Approx(0.2).epsilon(1e-9));

  const CliResult one = run_cli("solve --matrix \"7\"", "solve_1x1");
  CHECK(one.exit_code == 0);
  CHECK(parse_result_field(one.out, "value") == 7.0);

  const CliResult ragged = run_cli("solve --matrix \"5,2;1\"", "solve_ragged");
  CHECK(ragged.exit_code == 2);

  const CliResult junk = run_cli("solve --matrix \"a,b;c,d\"", "solve_junk");
  CHECK(junk.exit_code == 2);

  const CliResult logit = run_cli("solve --matrix \"5,2;1,3\" --epsilon 0.05", "solve_logit");
  CHECK(logit.exit_code == 0);
  CHECK(logit.out.find("RESULT logit") != std::string::npos);
  CHECK(parse_result_field(logit.out, "converged") == 1.0);
}

TEST_CASE("cli solve flag variants") {
  const CliResult all = run_cli("solve --matrix \"2,2;1,1\" --all", "solve_all");
  CHECK(all.exit_code == 0);
  // Several equal-support saddles exist; each prints its own block.
  CHECK(count_lines(all.out) > 6);
  CHECK(parse_result_field(all.out, "value") == doctest::Approx(2.0).epsilon(1e-9));

  const CliResult from_config =
      run_cli("solve --config " + config_path("crl1_selfplay.cfg"), "solve_config");
  CHECK(from_config.exit_code == 0);
  CHECK(parse_result_field(from_config.out, "value") == doctest::Approx(2.6).epsilon(1e-9));

  const CliResult nothing = run_cli("solve", "solve_nothing");
  CHECK(nothing.exit_code == 2);

  const CliResult help = run_cli("--help", "help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("cli ode config and stride flags") {
  const fs::path out = tmp_root() / "ode_cfg_out";
  fs::remove_all(out);
  const CliResult r = run_cli("ode --system smooth_br --config " +
                                  config_path("crl1_selfplay.cfg") +
                                  " --epsilon 0.05 --t-end 1 --dt 0.01 --stride 10 --out " +
                                  out.string(),
                              "ode_cfg");
  CHECK(r.exit_code == 0);
  // 100 steps recorded every 10th, plus the initial row and the header.
  CHECK(count_lines(read_file(out / "ode_smooth_br.csv")) == 12);
}

TEST_CASE("cli simulate epsilon override changes the dynamics") {
  const fs::path a = tmp_root() / "eps_a";
  const fs::path b = tmp_root() / "eps_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string base = "simulate --config " + config_path("crl1_selfplay.cfg") +
                           " --horizon 200 --seeds 5 ";
  CHECK(run_cli(base + "--out " + a.string(), "eps_a").exit_code == 0);
  CHECK(run_cli(base + "--epsilon 5.0 --out " + b.string(), "eps_b").exit_code == 0);
  CHECK(read_file(a / "seed_5.csv") != read_file(b / "seed_5.csv"));
}

TEST_CASE("cli simulate row-count contract") {
  const fs::path out = tmp_root() / "sim_rows";
  fs::remove_all(out);
  const CliResult r = run_cli("simulate --config " + config_path("crl1_selfplay.cfg") +
                                  " --horizon 10 --seeds 1 --out " + out.string(),
                              "sim_rows");
  CHECK(r.exit_code == 0);
  const std::string csv = read_file(out / "seed_1.csv");
  // stride 10: header + t = 0 and t = 10.
  CHECK(count_lines(csv) == 3);
  CHECK(csv.substr(0, 2) == "t,");
  CHECK(csv.find("\r") == std::string::npos);  // LF endings

  const std::string aggregate = read_file(out / "aggregate.csv");
  CHECK(count_lines(aggregate) == 3);
  CHECK(fs::exists(out / "final_metrics.csv"));
}

TEST_CASE("cli simulate determinism and plot purity") {
  const fs::path a = tmp_root() / "det_a";
  const fs::path b = tmp_root() / "det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string base = "simulate --config " + config_path("crl1_selfplay.cfg") +
                           " --horizon 500 --seeds 3,4 ";
  CHECK(run_cli(base + "--out " + a.string(), "det_a").exit_code == 0);
  CHECK(run_cli(base + "--plots --out " + b.string(), "det_b").exit_code == 0);
  for (const char* name : {"seed_3.csv", "seed_4.csv", "aggregate.csv", "final_metrics.csv"}) {
    CHECK(read_file(a / name) == read_file(b / name));
  }
  CHECK(fs::exists(b / "seed_3_strategies.svg"));
  CHECK(fs::exists(b / "seed_3_estimates.svg"));
  CHECK(fs::exists(b / "aggregate_metrics.svg"));
  CHECK(!fs::exists(a / "seed_3_strategies.svg"));
  const std::string svg = read_file(b / "seed_3_strategies.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("cli simulate error codes") {
  // Unwritable output directory: a regular file blocks the path.
  const fs::path blocker = tmp_root() / "blocker";
  std::ofstream(blocker).put('x');
  const CliResult io = run_cli("simulate --config " + config_path("crl1_selfplay.cfg") +
                                   " --horizon 5 --seeds 1 --out " + blocker.string(),
                               "sim_io");
  CHECK(io.exit_code == 3);

  // Config whose RL2 player sees negative payoffs at runtime.
  const fs::path bad = tmp_root() / "abort.cfg";
  std::ofstream(bad) << R"({
    "game": {"matrix": [[5, 2], [1, 3]], "constant_c": 0.0, "noise": {"kind": "none"}},
    "players": {
      "p1": {"scheme": "RL2", "lambda": {"family": "scaled", "k": 0.1, "base": {"family": "R1"}}},
      "p2": {"scheme": "RL2", "lambda": {"family": "scaled", "k": 0.1, "base": {"family": "R1"}}}
    },
    "run": {"horizon": 50, "seeds": [9], "record_stride": 1},
    "output": {"directory": "out/abort", "plots": false}
  })";
  const fs::path abort_out = tmp_root() / "abort_out";
  const CliResult abort = run_cli(
      "simulate --config " + bad.string() + " --out " + abort_out.string(), "sim_abort");
  CHECK(abort.exit_code == 4);
  CHECK(abort.err.find("seed 9") != std::string::npos);

  const CliResult missing = run_cli("simulate --config /nonexistent.cfg", "sim_missing");
  CHECK(missing.exit_code == 3);

  const fs::path invalid = tmp_root() / "invalid.cfg";
  std::ofstream(invalid) << "{\"game\": {}}";
  const CliResult bad_cfg = run_cli("simulate --config " + invalid.string(), "sim_badcfg");
  CHECK(bad_cfg.exit_code == 2);
}

TEST_CASE("cli ode") {
  const fs::path out = tmp_root() / "ode_out";
  fs::remove_all(out);

  const CliResult unknown = run_cli("ode --system bogus --matrix \"5,2;1,3\"", "ode_unknown");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("replicator") != std::string::npos);  // lists valid names
  CHECK(unknown.err.find("composite_T2") != std::string::npos);

  const CliResult t0 = run_cli(
      "ode --system composite_T2 --matrix \"5,2;1,3\" --epsilon 0.05 --t0 0 --t-end 1", "ode_t0");
  CHECK(t0.exit_code == 2);

  const CliResult vertex = run_cli("ode --system replicator --matrix \"5,2;1,3\" --init-f 1,0 "
                                       "--init-g 1,0 --t-end 2 --dt 0.01 --out " + out.string(),
                                   "ode_vertex");
  CHECK(vertex.exit_code == 0);
  const std::string csv = read_file(out / "ode_replicator.csv");
  CHECK(csv.find("\n0,1,0,1,0,") != std::string::npos);  // t=0 row pinned at the vertices
  CHECK(parse_result_field(vertex.out, "final_dist_saddle") > 0.5);  // stays at the corner

  const CliResult mismatch = run_cli(
      "ode --system replicator --matrix \"5,2;1,3\" --init-f 0.2,0.3,0.5 --t-end 1", "ode_dims");
  CHECK(mismatch.exit_code == 2);

  const CliResult coupled =
      run_cli("ode --system coupled_thm1 --matrix \"5,2;1,3\" --epsilon 0.05 --t-end 200 "
              "--dt 0.001 --out " + out.string(),
              "ode_coupled");
  CHECK(coupled.exit_code == 0);
  CHECK(parse_result_field(coupled.out, "final_exploitability") < 0.1);
}

TEST_CASE("cli compare") {
  const fs::path out = tmp_root() / "cmp_out";
  fs::remove_all(out);
  const CliResult r = run_cli("compare --config " + config_path("rl2_replicator_compare.cfg") +
                                  " --system replicator --out " + out.string(),
                              "cmp_run");
  CHECK(r.exit_code == 0);
  CHECK(parse_result_field(r.out, "final_distance") < 0.05);
  const std::string csv = read_file(out / "compare_replicator.csv");
  CHECK(csv.rfind("t,tau,distance\n", 0) == 0);

  const CliResult mismatch =
      run_cli("compare --config " + config_path("rl2_replicator_compare.cfg") +
                  " --system replicator --init-f 0.2,0.3,0.5",
              "cmp_dims");
  CHECK(mismatch.exit_code == 2);

  const CliResult unknown = run_cli(
      "compare --config " + config_path("rl2_replicator_compare.cfg") + " --system bogus",
      "cmp_unknown");
  CHECK(unknown.exit_code == 2);
}
