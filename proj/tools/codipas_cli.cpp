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

// Command-line front end: solve saddle/logit equilibria, run learning
// experiments, integrate the deterministic dynamics, and compare stochastic
// runs against their ODE counterparts.
//
// Exit codes: 0 success, 2 input error, 3 I/O error, 4 runtime learner
// violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codipas/config.hpp"
#include "codipas/dynamics.hpp"
#include "codipas/equilibrium.hpp"
#include "codipas/harness.hpp"
#include "codipas/svg.hpp"
#include "codipas/trajectory.hpp"

namespace {

using namespace codipas;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitRuntime = 4;

std::string join_values(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_value(values[i]);
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse " + what + " entry '" + cell + "'");
    }
  }
  if (out.empty()) throw ConfigError(what + " must not be empty");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ',')) {
    try {
      out.push_back(std::stoull(cell));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse seed '" + cell + "'");
    }
  }
  if (out.empty()) throw ConfigError("seed list must not be empty");
  return out;
}

void ensure_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
  const fs::path probe = dir / ".codipas_write_probe";
  std::FILE* f = std::fopen(probe.string().c_str(), "wb");
  if (!f) throw IoError("output directory '" + dir.string() + "' is not writable");
  std::fclose(f);
  fs::remove(probe, ec);
}

struct SolveOptions {
  std::string matrix;
  std::string config_path;
  double epsilon = 0.0;
  double damping = 0.5;
  double tol = 1e-10;
  std::int64_t max_iters = 1000000;
  bool all = false;
};

int cmd_solve(const SolveOptions& opt) {
  std::optional<GameSpec> spec;
  if (!opt.matrix.empty()) {
    spec = parse_inline_matrix(opt.matrix);
  } else if (!opt.config_path.empty()) {
    spec = load_experiment_config(opt.config_path).experiment.spec;
  } else {
    throw ConfigError("solve needs --matrix or --config");
  }

  const auto solutions =
      opt.all ? solve_saddle_all(*spec) : std::vector<SaddleSolution>{solve_saddle(*spec)};
  for (const SaddleSolution& s : solutions) {
    std::cout << "saddle point (support enumeration)\n"
              << "  f* = [" << join_values(s.f_star.probs()) << "]\n"
              << "  g* = [" << join_values(s.g_star.probs()) << "]\n"
              << "  value = " << format_value(s.value) << "\n";
  }
  const SaddleSolution& first = solutions.front();
  std::cout << "RESULT saddle value=" << format_value(first.value) << " f="
            << join_values(first.f_star.probs()) << " g=" << join_values(first.g_star.probs())
            << "\n";

  if (opt.epsilon > 0.0) {
    const LogitEquilibrium logit =
        solve_logit(*spec, opt.epsilon, opt.damping, opt.tol, opt.max_iters);
    std::cout << "logit equilibrium (epsilon = " << format_value(opt.epsilon) << ")\n"
              << "  f = [" << join_values(logit.f_eps.probs()) << "]\n"
              << "  g = [" << join_values(logit.g_eps.probs()) << "]\n"
              << "  residual = " << format_value(logit.residual) << " after " << logit.iterations
              << " iterations" << (logit.converged ? "" : " (not converged)") << "\n";
    std::cout << "RESULT logit epsilon=" << format_value(opt.epsilon) << " residual="
              << format_value(logit.residual) << " converged=" << (logit.converged ? 1 : 0)
              << " f=" << join_values(logit.f_eps.probs()) << " g="
              << join_values(logit.g_eps.probs()) << "\n";
  }
  return kExitOk;
}

struct SimulateOptions {
  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::int64_t horizon = 0;
  double epsilon = 0.0;
  int jobs = 0;
  bool plots = false;
  bool no_plots = false;
};

void plot_trajectory(const fs::path& dir, const std::string& stem, const Trajectory& trajectory) {
  std::vector<SvgSeries> strategies;
  const int m = trajectory.f.front().size();
  const int n = trajectory.g.front().size();
  for (int a = 0; a < m; ++a) {
    SvgSeries s{"f_" + std::to_string(a), trajectory.times, {}};
    for (std::size_t i = 0; i < trajectory.size(); ++i) s.y.push_back(trajectory.f[i][a]);
    strategies.push_back(std::move(s));
  }
  for (int b = 0; b < n; ++b) {
    SvgSeries s{"g_" + std::to_string(b), trajectory.times, {}};
    for (std::size_t i = 0; i < trajectory.size(); ++i) s.y.push_back(trajectory.g[i][b]);
    strategies.push_back(std::move(s));
  }
  write_line_chart(dir / (stem + "_strategies.svg"), stem + ": mixed strategies", "t",
                   "probability", strategies);

  std::vector<SvgSeries> estimates;
  for (int a = 0; a < m; ++a) {
    SvgSeries s{"uhat1_" + std::to_string(a), trajectory.times, {}};
    for (std::size_t i = 0; i < trajectory.size(); ++i)
      s.y.push_back(trajectory.u_hat1[i][static_cast<std::size_t>(a)]);
    estimates.push_back(std::move(s));
  }
  for (int b = 0; b < n; ++b) {
    SvgSeries s{"uhat2_" + std::to_string(b), trajectory.times, {}};
    for (std::size_t i = 0; i < trajectory.size(); ++i)
      s.y.push_back(trajectory.u_hat2[i][static_cast<std::size_t>(b)]);
    estimates.push_back(std::move(s));
  }
  write_line_chart(dir / (stem + "_estimates.svg"), stem + ": payoff estimates", "t", "payoff",
                   estimates);
}

int cmd_simulate(const SimulateOptions& opt) {
  ExperimentConfig config = load_experiment_config(opt.config_path);
  if (!opt.out_dir.empty()) config.output_directory = opt.out_dir;
  if (opt.horizon > 0) config.experiment.horizon = opt.horizon;
  if (!opt.seeds.empty()) config.experiment.seeds = parse_seed_list(opt.seeds);
  if (opt.epsilon > 0.0) {
    config.experiment.p1.epsilon = opt.epsilon;
    config.experiment.p2.epsilon = opt.epsilon;
  }
  if (opt.plots) config.plots = true;
  if (opt.no_plots) config.plots = false;

  for (const std::string& warning : config.experiment.validate()) {
    std::cerr << "warning: " << warning << "\n";
  }
  ensure_output_dir(config.output_directory);

  const std::vector<Trajectory> trajectories = run_all_seeds(config.experiment, opt.jobs);
  const AggregateReport report = aggregate_trajectories(config.experiment, trajectories);

  // Single collector writes everything after the parallel phase.
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const std::string stem = "seed_" + std::to_string(config.experiment.seeds[i]);
    write_trajectory_csv(config.output_directory / (stem + ".csv"), trajectories[i]);
    if (config.plots) plot_trajectory(config.output_directory, stem, trajectories[i]);
  }
  write_aggregate_csv(config.output_directory / "aggregate.csv", report);
  write_final_metrics_csv(config.output_directory / "final_metrics.csv", report);
  if (config.plots) {
    std::vector<SvgSeries> metrics{
        {"exploitability (mean)", report.times, report.exploitability.mean},
        {"dist to saddle (mean)", report.times, report.dist_saddle_sup.mean},
        {"estimate error (mean)", report.times, report.estimate_error.mean}};
    write_line_chart(config.output_directory / "aggregate_metrics.svg", "seed-averaged metrics",
                     "t", "value", metrics);
  }

  std::cout << "wrote " << trajectories.size() << " seed trajectories to "
            << config.output_directory.string() << "\n"
            << "RESULT simulate seeds=" << trajectories.size() << " final_exploitability_mean="
            << format_value(report.exploitability.mean.back()) << " final_dist_saddle_mean="
            << format_value(report.dist_saddle_sup.mean.back()) << "\n";
  return kExitOk;
}

struct OdeOptions {
  std::string system;
  std::string matrix;
  std::string config_path;
  std::string out_dir = "out";
  std::string init_f;
  std::string init_g;
  double epsilon = 0.1;
  double k1 = 1.0;
  double k2 = 1.0;
  double dt = 1e-3;
  double t_end = 100.0;
  double t0 = -1.0;
  int stride = 0;
  bool plots = false;
};

int cmd_ode(const OdeOptions& opt) {
  std::optional<GameSpec> spec;
  if (!opt.config_path.empty()) {
    spec = load_experiment_config(opt.config_path).experiment.spec;
  } else if (!opt.matrix.empty()) {
    spec = parse_inline_matrix(opt.matrix);
  } else {
    throw ConfigError("ode needs --config or --matrix");
  }
  DynamicsSystem system = [&] {
    try {
      return DynamicsSystem::from_name(opt.system, *spec, opt.epsilon, opt.k1, opt.k2);
    } catch (const std::domain_error& error) {
      throw ConfigError(error.what());
    }
  }();

  OdeState init{opt.init_f.empty() ? MixedStrategy::uniform(spec->num_rows())
                                   : MixedStrategy(parse_number_list(opt.init_f, "--init-f")),
                opt.init_g.empty() ? MixedStrategy::uniform(spec->num_cols())
                                   : MixedStrategy(parse_number_list(opt.init_g, "--init-g")),
                std::nullopt, 0.0};
  if (init.f.size() != spec->num_rows() || init.g.size() != spec->num_cols()) {
    throw ConfigError("initial strategies do not match the game dimensions");
  }
  init.time = opt.t0 >= 0.0 ? opt.t0 : (system.non_autonomous() ? opt.dt : 0.0);
  if (system.non_autonomous() && !(init.time > 0.0)) {
    throw ConfigError("composite_T2 requires t0 > 0 (the t = 0 temperature is undefined)");
  }

  const int stride = opt.stride > 0
                         ? opt.stride
                         : std::max(1, static_cast<int>((opt.t_end - init.time) / opt.dt / 2000));
  Trajectory trajectory = integrate(system, init, opt.t_end, opt.dt, stride);

  ensure_output_dir(opt.out_dir);
  const std::string stem = "ode_" + opt.system;
  write_trajectory_csv(fs::path(opt.out_dir) / (stem + ".csv"), trajectory);
  if (opt.plots) plot_trajectory(opt.out_dir, stem, trajectory);

  std::cout << "RESULT ode system=" << opt.system << " t_end="
            << format_value(trajectory.times.back()) << " final_exploitability="
            << format_value(trajectory.exploitability.back()) << " final_dist_saddle="
            << format_value(trajectory.dist_saddle_sup.back()) << "\n";
  return kExitOk;
}

struct CompareOptions {
  std::string config_path;
  std::string system;
  std::string out_dir = "out";
  std::string init_f;
  std::string init_g;
  int clock_player = 1;
  double ode_dt = 1e-3;
  bool plots = false;
};

int cmd_compare(const CompareOptions& opt) {
  ExperimentConfig config = load_experiment_config(opt.config_path);
  Experiment& exp = config.experiment;
  if (!opt.init_f.empty()) exp.initial_f = MixedStrategy(parse_number_list(opt.init_f, "--init-f"));
  if (!opt.init_g.empty()) exp.initial_g = MixedStrategy(parse_number_list(opt.init_g, "--init-g"));
  exp.validate();

  DynamicsSystem system = [&] {
    try {
      return DynamicsSystem::from_name(opt.system, exp.spec, exp.p1.epsilon, 1.0, 1.0);
    } catch (const std::domain_error& error) {
      throw ConfigError(error.what());
    }
  }();

  const Trajectory trajectory = run_episode(exp, exp.seeds.front());
  const std::vector<double> distances =
      compare_to_ode(exp, trajectory, system, opt.clock_player, opt.ode_dt);
  const std::vector<double> tau = sa_clock(exp, opt.clock_player);

  ensure_output_dir(opt.out_dir);
  const fs::path csv = fs::path(opt.out_dir) / ("compare_" + opt.system + ".csv");
  {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw IoError("cannot open '" + csv.string() + "' for writing");
    out << "t,tau,distance\n";
    for (std::size_t i = 0; i < distances.size(); ++i) {
      const auto step = static_cast<std::size_t>(trajectory.times[i]);
      out << format_value(trajectory.times[i]) << ',' << format_value(tau[step]) << ','
          << format_value(distances[i]) << '\n';
    }
    if (!out) throw IoError("failed while writing '" + csv.string() + "'");
  }
  if (opt.plots) {
    std::vector<double> taus;
    taus.reserve(distances.size());
    for (double t : trajectory.times) taus.push_back(tau[static_cast<std::size_t>(t)]);
    write_line_chart(fs::path(opt.out_dir) / ("compare_" + opt.system + ".svg"),
                     "distance to the " + opt.system + " flow", "tau", "sup distance",
                     {SvgSeries{"|x_t - ode(tau_t)|", taus, distances}});
  }
  std::cout << "RESULT compare system=" << opt.system << " seed=" << exp.seeds.front()
            << " final_tau=" << format_value(tau[static_cast<std::size_t>(exp.horizon)])
            << " final_distance=" << format_value(distances.back()) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codipas: combined payoff and strategy reinforcement learning in zero-sum games"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve =
      app.add_subcommand("solve", "compute the saddle point (and optional logit equilibrium)");
  solve->add_option("--matrix", solve_opt.matrix,
                    "inline payoff matrix, rows ';'-separated: \"5,2;1,3\"");
  solve->add_option("--config", solve_opt.config_path, "experiment config supplying the game");
  solve->add_option("--epsilon", solve_opt.epsilon,
                    "also solve the logit equilibrium at this temperature");
  solve->add_option("--damping", solve_opt.damping, "initial damping of the fixed-point iteration");
  solve->add_option("--tol", solve_opt.tol, "fixed-point residual tolerance");
  solve->add_option("--max-iters", solve_opt.max_iters, "iteration budget");
  solve->add_flag("--all", solve_opt.all, "enumerate every equal-support saddle point");

  SimulateOptions sim_opt;
  CLI::App* simulate = app.add_subcommand("simulate", "run a learning experiment over all seeds");
  simulate->add_option("--config", sim_opt.config_path, "experiment config file")->required();
  simulate->add_option("--out", sim_opt.out_dir, "output directory (overrides the config)");
  simulate->add_option("--horizon", sim_opt.horizon, "override run.horizon");
  simulate->add_option("--seeds", sim_opt.seeds, "override run.seeds, comma-separated");
  simulate->add_option("--epsilon", sim_opt.epsilon, "override both players' epsilon");
  simulate->add_option("--jobs", sim_opt.jobs, "parallel seed jobs (0 = all cores)");
  simulate->add_flag("--plots", sim_opt.plots, "emit SVG charts");
  simulate->add_flag("--no-plots", sim_opt.no_plots, "suppress SVG charts");

  OdeOptions ode_opt;
  CLI::App* ode = app.add_subcommand("ode", "integrate a deterministic dynamics system");
  ode->add_option("--system", ode_opt.system,
                  "one of: replicator, adjusted_replicator, smooth_br, coupled_thm1, "
                  "composite_T1, composite_T2")
      ->required();
  ode->add_option("--matrix", ode_opt.matrix, "inline payoff matrix");
  ode->add_option("--config", ode_opt.config_path, "experiment config supplying the game");
  ode->add_option("--epsilon", ode_opt.epsilon, "logit temperature");
  ode->add_option("--k1", ode_opt.k1, "player 1 rate factor");
  ode->add_option("--k2", ode_opt.k2, "player 2 rate factor");
  ode->add_option("--dt", ode_opt.dt, "RK4 step size");
  ode->add_option("--t-end", ode_opt.t_end, "integration end time");
  ode->add_option("--t0", ode_opt.t0, "start time (composite_T2 needs t0 > 0; defaults to dt)");
  ode->add_option("--stride", ode_opt.stride, "record every n-th step");
  ode->add_option("--init-f", ode_opt.init_f, "initial f, comma-separated");
  ode->add_option("--init-g", ode_opt.init_g, "initial g, comma-separated");
  ode->add_option("--out", ode_opt.out_dir, "output directory");
  ode->add_flag("--plots", ode_opt.plots, "emit SVG charts");

  CompareOptions cmp_opt;
  CLI::App* compare = app.add_subcommand(
      "compare", "distance between a stochastic run and its ODE counterpart");
  compare->add_option("--config", cmp_opt.config_path, "experiment config file")->required();
  compare->add_option("--system", cmp_opt.system, "dynamics system name")->required();
  compare->add_option("--clock-player", cmp_opt.clock_player,
                      "player whose rate schedule defines the ODE clock");
  compare->add_option("--dt", cmp_opt.ode_dt, "RK4 substep bound");
  compare->add_option("--init-f", cmp_opt.init_f, "override initial f");
  compare->add_option("--init-g", cmp_opt.init_g, "override initial g");
  compare->add_option("--out", cmp_opt.out_dir, "output directory");
  compare->add_flag("--plots", cmp_opt.plots, "emit an SVG of the distance series");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(solve_opt);
    if (simulate->parsed()) return cmd_simulate(sim_opt);
    if (ode->parsed()) return cmd_ode(ode_opt);
    if (compare->parsed()) return cmd_compare(cmp_opt);
    return kExitInput;
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) return app.exit(error);  // --help
    app.exit(error);
    return kExitInput;
  } catch (const LearnerAbortError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitRuntime;
  } catch (const IntegrationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitRuntime;
  } catch (const IoError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInput;
  } catch (const std::exception& error) {
    std::cerr << "internal error: " << error.what() << "\n";
    return kExitRuntime;
  }
}
