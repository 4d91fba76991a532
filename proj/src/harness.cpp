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

#include "codipas/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "codipas/equilibrium.hpp"

namespace codipas {
namespace {

// Fraction of the step-bound budget the clipped rate may use.
constexpr double kClipFraction = 0.999;

// Random substreams of one episode. Player action draws stay separate from
// the shared noise draw so heterogeneous pairings replay identically.
enum Stream : std::uint64_t { kNoiseStream = 0, kPlayer1Stream = 1, kPlayer2Stream = 2 };

const LearnerConfig& player_config(const Experiment& exp, int player) {
  if (player == 1) return exp.p1;
  if (player == 2) return exp.p2;
  throw std::domain_error("player must be 1 or 2");
}

double estimate_sup_error(const GameSpec& spec, const LearnerConfig& config, int player,
                          const std::vector<double>& estimates, const MixedStrategy& opponent) {
  if (!config.uses_estimates()) return 0.0;
  const std::vector<double> u = payoff_vector(spec, player, opponent);
  double err = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    err = std::max(err, std::abs(estimates[a] - u[a]));
  }
  return err;
}

}  // namespace

LearnerAbortError::LearnerAbortError(std::uint64_t seed, std::int64_t step,
                                     const std::string& detail)
    : std::runtime_error("learner abort at seed " + std::to_string(seed) + ", step " +
                         std::to_string(step) + ": " + detail),
      seed_(seed),
      step_(step) {}

MixedStrategy Experiment::start_f() const {
  return initial_f.value_or(MixedStrategy::uniform(spec.num_rows()));
}

MixedStrategy Experiment::start_g() const {
  return initial_g.value_or(MixedStrategy::uniform(spec.num_cols()));
}

std::vector<double> Experiment::start_estimates(int player) const {
  const auto& init = player == 1 ? initial_estimates1 : initial_estimates2;
  return init.value_or(std::vector<double>(static_cast<std::size_t>(spec.num_actions(player)), 0.0));
}

std::vector<std::string> Experiment::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (initial_f && initial_f->size() != spec.num_rows()) {
    throw ConfigError("initial_f does not match the row count");
  }
  if (initial_g && initial_g->size() != spec.num_cols()) {
    throw ConfigError("initial_g does not match the column count");
  }
  if (initial_estimates1 && static_cast<int>(initial_estimates1->size()) != spec.num_rows()) {
    throw ConfigError("initial_estimates for player 1 do not match the row count");
  }
  if (initial_estimates2 && static_cast<int>(initial_estimates2->size()) != spec.num_cols()) {
    throw ConfigError("initial_estimates for player 2 do not match the column count");
  }
  std::vector<std::string> warnings;
  try {
    for (const std::string& w : p1.validate()) warnings.push_back("p1: " + w);
    for (const std::string& w : p2.validate()) warnings.push_back("p2: " + w);
  } catch (const std::domain_error& error) {
    throw ConfigError(error.what());
  }
  return warnings;
}

double effective_lambda(const Experiment& exp, int player, std::int64_t t) {
  const LearnerConfig& config = player_config(exp, player);
  double rate = config.lambda(t);
  switch (config.scheme) {
    case LearnerScheme::kCrl0:
    case LearnerScheme::kRl2: {
      const double bound = exp.spec.payoff_upper_bound(player);
      if (bound > 0.0) rate = std::min(rate, kClipFraction / bound);
      return rate;
    }
    case LearnerScheme::kCrl1:
    case LearnerScheme::kCrl2:
      return std::min(rate, 1.0);
    case LearnerScheme::kRl3:
      return rate;  // RL3 carries no strategy rate; value unused.
  }
  return rate;
}

std::pair<double, double> rl3_constants(const Experiment& exp, int player) {
  const LearnerConfig& config = player_config(exp, player);
  const double n = config.rl3_n > 0.0 ? config.rl3_n : static_cast<double>(exp.spec.num_actions(player));
  const double C = config.rl3_C > 0.0 ? config.rl3_C : exp.spec.payoff_upper_bound(player);
  return {n, C};
}

Trajectory run_episode(const Experiment& exp, std::uint64_t seed) {
  exp.validate();
  const GameSpec& spec = exp.spec;
  const SaddleSolution saddle = solve_saddle(spec);

  RandomSource noise_rng(seed, kNoiseStream);
  RandomSource p1_rng(seed, kPlayer1Stream);
  RandomSource p2_rng(seed, kPlayer2Stream);

  LearnerState state1{exp.start_f(), exp.start_estimates(1), 0};
  LearnerState state2{exp.start_g(), exp.start_estimates(2), 0};
  const auto [n1, C1] = rl3_constants(exp, 1);
  const auto [n2, C2] = rl3_constants(exp, 2);

  Trajectory trajectory;
  auto record = [&](double step, double u1, double u2) {
    trajectory.times.push_back(step);
    trajectory.f.push_back(state1.strategy);
    trajectory.g.push_back(state2.strategy);
    trajectory.u_hat1.push_back(state1.estimates);
    trajectory.u_hat2.push_back(state2.estimates);
    trajectory.payoff1.push_back(u1);
    trajectory.payoff2.push_back(u2);
    trajectory.exploitability.push_back(codipas::exploitability(spec, state1.strategy, state2.strategy));
    trajectory.dist_saddle_sup.push_back(std::max(state1.strategy.sup_distance(saddle.f_star),
                                                  state2.strategy.sup_distance(saddle.g_star)));
    trajectory.estimate_error.push_back(
        std::max(estimate_sup_error(spec, exp.p1, 1, state1.estimates, state2.strategy),
                 estimate_sup_error(spec, exp.p2, 2, state2.estimates, state1.strategy)));
  };
  record(0.0, 0.0, 0.0);

  for (std::int64_t t = 0; t < exp.horizon; ++t) {
    const int a1 = choose_action(exp.p1.action_perturbation > 0.0
                                     ? perturb_strategy(state1.strategy, exp.p1.action_perturbation)
                                     : state1.strategy,
                                 p1_rng);
    const int a2 = choose_action(exp.p2.action_perturbation > 0.0
                                     ? perturb_strategy(state2.strategy, exp.p2.action_perturbation)
                                     : state2.strategy,
                                 p2_rng);
    const auto [u1, u2] = sample_payoff(spec, noise_rng, a1, a2);
    try {
      state1 = apply_step(exp.p1, state1, a1, u1, effective_lambda(exp, 1, t), exp.p1.mu(t), n1, C1);
      state2 = apply_step(exp.p2, state2, a2, u2, effective_lambda(exp, 2, t), exp.p2.mu(t), n2, C2);
    } catch (const StepBoundError& error) {
      throw LearnerAbortError(seed, t, error.what());
    }
    if ((t + 1) % exp.record_stride == 0 || t + 1 == exp.horizon) {
      record(static_cast<double>(t + 1), u1, u2);
    }
  }
  return trajectory;
}

std::vector<Trajectory> run_all_seeds_serial(const Experiment& exp) {
  std::vector<Trajectory> trajectories;
  trajectories.reserve(exp.seeds.size());
  for (std::uint64_t seed : exp.seeds) trajectories.push_back(run_episode(exp, seed));
  return trajectories;
}

std::vector<Trajectory> run_all_seeds(const Experiment& exp, int jobs) {
  exp.validate();
  const int count = static_cast<int>(exp.seeds.size());
  std::vector<Trajectory> trajectories(static_cast<std::size_t>(count));
  std::vector<std::string> errors(static_cast<std::size_t>(count));
  std::vector<char> failed(static_cast<std::size_t>(count), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
  for (int i = 0; i < count; ++i) {
    try {
      trajectories[static_cast<std::size_t>(i)] = run_episode(exp, exp.seeds[static_cast<std::size_t>(i)]);
    } catch (const std::exception& error) {
      failed[static_cast<std::size_t>(i)] = 1;
      errors[static_cast<std::size_t>(i)] = error.what();
    }
  }
  for (int i = 0; i < count; ++i) {
    if (failed[static_cast<std::size_t>(i)]) {
      throw LearnerAbortError(exp.seeds[static_cast<std::size_t>(i)], -1,
                              errors[static_cast<std::size_t>(i)]);
    }
  }
  return trajectories;
}

AggregateReport aggregate_trajectories(const Experiment& exp,
                                       const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) throw ConfigError("aggregate needs at least one trajectory");
  const std::size_t points = trajectories.front().size();
  for (const Trajectory& t : trajectories) {
    t.check_consistent();
    if (t.size() != points || t.times != trajectories.front().times) {
      throw std::logic_error("trajectories do not share a recording grid");
    }
  }

  AggregateReport report;
  report.seeds = exp.seeds;
  report.times = trajectories.front().times;

  auto reduce = [&](auto metric_of) {
    AggregateReport::MetricStats stats;
    stats.mean.resize(points, 0.0);
    stats.stdev.resize(points, 0.0);
    for (std::size_t i = 0; i < points; ++i) {
      double mean = 0.0;
      for (const Trajectory& t : trajectories) mean += metric_of(t, i);
      mean /= static_cast<double>(trajectories.size());
      double variance = 0.0;
      for (const Trajectory& t : trajectories) {
        const double d = metric_of(t, i) - mean;
        variance += d * d;
      }
      variance /= static_cast<double>(trajectories.size());
      stats.mean[i] = mean;
      stats.stdev[i] = std::sqrt(variance);
    }
    return stats;
  };
  report.exploitability = reduce([](const Trajectory& t, std::size_t i) { return t.exploitability[i]; });
  report.dist_saddle_sup = reduce([](const Trajectory& t, std::size_t i) { return t.dist_saddle_sup[i]; });
  report.estimate_error = reduce([](const Trajectory& t, std::size_t i) { return t.estimate_error[i]; });

  for (std::size_t s = 0; s < trajectories.size(); ++s) {
    const Trajectory& t = trajectories[s];
    report.per_seed_final.push_back(AggregateReport::SeedFinal{
        exp.seeds[s], t.exploitability.back(), t.dist_saddle_sup.back(), t.estimate_error.back()});
  }
  return report;
}

AggregateReport run_aggregate(const Experiment& exp, int jobs) {
  return aggregate_trajectories(exp, run_all_seeds(exp, jobs));
}

void write_aggregate_csv(const std::filesystem::path& path, const AggregateReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "t,exploitability_mean,exploitability_std,dist_saddle_sup_mean,dist_saddle_sup_std,"
         "estimate_error_mean,estimate_error_std\n";
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    out << format_value(report.times[i]) << ',' << format_value(report.exploitability.mean[i])
        << ',' << format_value(report.exploitability.stdev[i]) << ','
        << format_value(report.dist_saddle_sup.mean[i]) << ','
        << format_value(report.dist_saddle_sup.stdev[i]) << ','
        << format_value(report.estimate_error.mean[i]) << ','
        << format_value(report.estimate_error.stdev[i]) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

void write_final_metrics_csv(const std::filesystem::path& path, const AggregateReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "seed,exploitability,dist_saddle_sup,estimate_error\n";
  for (const auto& row : report.per_seed_final) {
    out << row.seed << ',' << format_value(row.exploitability) << ','
        << format_value(row.dist_saddle_sup) << ',' << format_value(row.estimate_error) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

std::vector<double> sa_clock(const Experiment& exp, int player) {
  std::vector<double> tau(static_cast<std::size_t>(exp.horizon) + 1, 0.0);
  for (std::int64_t t = 0; t < exp.horizon; ++t) {
    tau[static_cast<std::size_t>(t) + 1] =
        tau[static_cast<std::size_t>(t)] + effective_lambda(exp, player, t);
  }
  return tau;
}

std::vector<double> compare_to_ode(const Experiment& exp, const Trajectory& trajectory,
                                   const DynamicsSystem& system, int clock_player, double ode_dt) {
  trajectory.check_consistent();
  if (trajectory.size() == 0) throw std::domain_error("empty trajectory");
  if (trajectory.f.front().size() != system.spec().num_rows() ||
      trajectory.g.front().size() != system.spec().num_cols()) {
    throw std::domain_error("trajectory dimensions do not match the dynamics system");
  }

  const std::vector<double> tau = sa_clock(exp, clock_player);
  OdeState init{trajectory.f.front(), trajectory.g.front(), std::nullopt, 0.0};
  if (system.kind() == DynamicsSystem::Kind::kCoupledThm1) {
    init.u_hat1 = trajectory.u_hat1.front();
  }
  std::vector<double> x = system.pack(init);

  std::vector<double> distances;
  distances.reserve(trajectory.size());
  double current_tau = 0.0;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto step = static_cast<std::int64_t>(trajectory.times[i]);
    if (step < 0 || step > exp.horizon) throw std::domain_error("trajectory step outside horizon");
    const double target = tau[static_cast<std::size_t>(step)];
    if (target > current_tau) {
      x = rk4_advance(system, std::move(x), current_tau, target, ode_dt);
      current_tau = target;
    }
    const OdeState state = system.unpack(current_tau, x);
    distances.push_back(std::max(trajectory.f[i].sup_distance(state.f),
                                 trajectory.g[i].sup_distance(state.g)));
  }
  return distances;
}

double dominated_strategy_probe(const Experiment& exp, int dominated_action, int jobs) {
  const GameSpec& spec = exp.spec;
  if (dominated_action < 0 || dominated_action >= spec.num_rows()) {
    throw ConfigError("dominated action index out of range");
  }
  if (exp.p1.scheme != LearnerScheme::kCrl1) {
    throw ConfigError("dominated_strategy_probe expects player 1 to use CRL1");
  }
  bool dominated = false;
  for (int a = 0; a < spec.num_rows() && !dominated; ++a) {
    if (a == dominated_action) continue;
    bool dominates = true;
    for (int b = 0; b < spec.num_cols(); ++b) {
      if (!(spec.expected_entry(a, b) > spec.expected_entry(dominated_action, b))) {
        dominates = false;
        break;
      }
    }
    dominated = dominates;
  }
  if (!dominated) {
    throw ConfigError("action " + std::to_string(dominated_action) +
                      " is not strictly dominated in the expected game");
  }
  const std::vector<Trajectory> trajectories = run_all_seeds(exp, jobs);
  double mean = 0.0;
  for (const Trajectory& t : trajectories) mean += t.f.back()[dominated_action];
  return mean / static_cast<double>(trajectories.size());
}

}  // namespace codipas
