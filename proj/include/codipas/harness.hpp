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

#ifndef CODIPAS_HARNESS_HPP_
#define CODIPAS_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "codipas/dynamics.hpp"
#include "codipas/game.hpp"
#include "codipas/learners.hpp"
#include "codipas/trajectory.hpp"

namespace codipas {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A learner step violated its payoff/rate bounds during an episode.
class LearnerAbortError : public std::runtime_error {
 public:
  LearnerAbortError(std::uint64_t seed, std::int64_t step, const std::string& detail);
  std::uint64_t seed() const { return seed_; }
  std::int64_t step() const { return step_; }

 private:
  std::uint64_t seed_;
  std::int64_t step_;
};

// A full experiment: game, both players' learner configs, horizon, seeds and
// recording stride, plus the initial conditions.
struct Experiment {
  GameSpec spec;
  LearnerConfig p1;
  LearnerConfig p2;
  std::int64_t horizon = 1;
  std::vector<std::uint64_t> seeds;
  std::int64_t record_stride = 1;
  std::optional<MixedStrategy> initial_f;           // default: uniform
  std::optional<MixedStrategy> initial_g;           // default: uniform
  std::optional<std::vector<double>> initial_estimates1;  // default: zeros
  std::optional<std::vector<double>> initial_estimates2;  // default: zeros

  MixedStrategy start_f() const;
  MixedStrategy start_g() const;
  std::vector<double> start_estimates(int player) const;

  // Throws ConfigError on hard violations; returns validator advisories.
  std::vector<std::string> validate() const;
};

// The strategy rate actually applied at step t. For CRL0/RL2 the scheduled
// lambda is clipped so that lambda * (payoff bound) stays below one; for
// CRL1/CRL2 it is clipped at one (a convex mixing weight). Payoff-sign
// violations are left to the step functions.
double effective_lambda(const Experiment& exp, int player, std::int64_t t);

// RL3 constants after applying the defaults (n = action count, C = the
// player's payoff upper bound).
std::pair<double, double> rl3_constants(const Experiment& exp, int player);

// Runs one seeded episode: both players draw actions from their current
// strategies, one shared payoff is sampled, and each player's scheme step is
// applied with its scheduled rates. Records the initial state, every
// record_stride-th step, and the final step. Wraps step-bound violations in
// LearnerAbortError carrying the seed and step.
Trajectory run_episode(const Experiment& exp, std::uint64_t seed);

// All seeds of the experiment. The parallel version distributes seeds over
// OpenMP threads (jobs = 0 uses all); per-seed results are identical to the
// serial reference because every episode owns its random streams.
std::vector<Trajectory> run_all_seeds(const Experiment& exp, int jobs = 0);
std::vector<Trajectory> run_all_seeds_serial(const Experiment& exp);

struct AggregateReport {
  struct MetricStats {
    std::vector<double> mean;
    std::vector<double> stdev;
  };
  struct SeedFinal {
    std::uint64_t seed;
    double exploitability;
    double dist_saddle_sup;
    double estimate_error;
  };

  std::vector<std::uint64_t> seeds;
  std::vector<double> times;
  MetricStats exploitability;
  MetricStats dist_saddle_sup;
  MetricStats estimate_error;
  std::vector<SeedFinal> per_seed_final;
};

// Across-seed mean/stdev of each metric at each recorded time (population
// standard deviation), plus per-seed final metrics. Reduction runs in seed
// order regardless of how the trajectories were produced.
AggregateReport aggregate_trajectories(const Experiment& exp,
                                       const std::vector<Trajectory>& trajectories);
AggregateReport run_aggregate(const Experiment& exp, int jobs = 0);

void write_aggregate_csv(const std::filesystem::path& path, const AggregateReport& report);
void write_final_metrics_csv(const std::filesystem::path& path, const AggregateReport& report);

// Stochastic-approximation clock of one player: tau(t) = sum of that player's
// effective strategy rates over steps 0..t-1, returned for t = 0..horizon.
std::vector<double> sa_clock(const Experiment& exp, int player);

// Sup-norm distance between a recorded episode and the system integrated on
// the clock of `clock_player`, starting from the episode's first record.
// One entry per recorded point.
std::vector<double> compare_to_ode(const Experiment& exp, const Trajectory& trajectory,
                                   const DynamicsSystem& system, int clock_player = 1,
                                   double ode_dt = 1e-3);

// Verifies by enumeration that `dominated_action` of player 1 is strictly
// dominated in the expected game (ConfigError otherwise, or when player 1 is
// not a CRL1 learner), runs every seed, and returns the seed-mean final
// probability of that action.
double dominated_strategy_probe(const Experiment& exp, int dominated_action, int jobs = 0);

}  // namespace codipas

#endif  // CODIPAS_HARNESS_HPP_
