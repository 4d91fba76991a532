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

#ifndef CODIPAS_LEARNERS_HPP_
#define CODIPAS_LEARNERS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codipas/rates.hpp"
#include "codipas/rng.hpp"
#include "codipas/strategy.hpp"

namespace codipas {

// The five combined payoff-and-strategy reinforcement learning schemes.
// CRL0/CRL1/CRL2 update a payoff-estimate vector alongside the strategy;
// RL2/RL3 update the strategy alone.
enum class LearnerScheme { kCrl0, kCrl1, kCrl2, kRl2, kRl3 };

std::string to_string(LearnerScheme scheme);
LearnerScheme learner_scheme_from_string(const std::string& name);

// One player's learning state: the mixed strategy, the estimated average
// payoff per own action, and the step counter.
struct LearnerState {
  MixedStrategy strategy;
  std::vector<double> estimates;
  std::int64_t t = 0;
};

// Raised when a multiplicative update would leave the simplex, e.g. when
// lambda * payoff falls outside [0, 1) for CRL0/RL2.
class StepBoundError : public std::domain_error {
 public:
  explicit StepBoundError(const std::string& what) : std::domain_error(what) {}
};

// Boltzmann-Gibbs map with temperature epsilon > 0, computed with
// max-subtraction. Every output entry is strictly positive.
MixedStrategy softmax(const std::vector<double>& u, double epsilon);

// Boltzmann-Gibbs map whose weights are multiplied by the current strategy,
// so actions with zero probability stay at zero. The max-subtraction is taken
// over the supported actions only.
MixedStrategy imitative_softmax(const MixedStrategy& strategy, const std::vector<double>& u,
                                double epsilon);

// Uncoupled payoff/strategy updates:
//   strategy' = strategy + lambda*U*(1_a - strategy)
//   estimates'(a) += mu*(U - estimates(a))        (chosen action only)
// Requires lambda*U in [0, 1).
LearnerState crl0_step(const LearnerState& state, int action, double payoff, double lambda,
                       double mu);

// Boltzmann-Gibbs mixing for the strategy and an importance-weighted payoff
// estimate update:
//   strategy' = (1-lambda)*strategy + lambda*softmax(estimates, epsilon)
//   estimates'(a) += min(1, mu / max(strategy(a), kEstimateFloor))*(U - estimates(a))
// The estimate rate is capped at one: an uncapped mu/strategy(a) above two
// turns the update into a divergent amplifier once the action's probability
// drops below mu/2.
LearnerState crl1_step(const LearnerState& state, int action, double payoff, double lambda,
                       double mu, double epsilon);

// As crl1_step with the imitative map in place of the plain softmax.
LearnerState crl2_step(const LearnerState& state, int action, double payoff, double lambda,
                       double mu, double epsilon);

// Strategy-only reinforcement, identical to the CRL0 strategy line.
LearnerState rl2_step(const LearnerState& state, int action, double payoff, double lambda);

// Normalized-growth reinforcement with payoff bound C and constant n:
//   raw = (C(n+1)/(nC+U)) * (strategy + U*1_a), renormalized onto the simplex.
// Requires 0 <= U <= C and n > 0.
LearnerState rl3_step(const LearnerState& state, int action, double payoff, double n, double C);

// Divisor floor used by crl1_step/crl2_step estimate updates.
inline constexpr double kEstimateFloor = 1e-8;

// Draws an action by inverse CDF on a single uniform variate.
int choose_action(const MixedStrategy& strategy, RandomSource& rng);

// (1-eps)*strategy + eps*uniform.
MixedStrategy perturb_strategy(const MixedStrategy& strategy, double eps);

// Scheme plus rate schedules and scheme-specific constants for one player.
struct LearnerConfig {
  LearnerScheme scheme = LearnerScheme::kCrl1;
  RateSchedule lambda = RateSchedule::r1();
  RateSchedule mu = RateSchedule::r1();   // unused by RL2/RL3
  double epsilon = 0.1;                   // unused by CRL0/RL2/RL3
  double rl3_n = 0.0;                     // 0 = default to the action count
  double rl3_C = 0.0;                     // 0 = default to the harness payoff bound
  // Exploration: actions are drawn from (1-p)*strategy + p*uniform. Keeps
  // pure-reinforcement learners (RL2/RL3/CRL0) off the absorbing boundary.
  double action_perturbation = 0.0;

  bool uses_estimates() const {
    return scheme == LearnerScheme::kCrl0 || scheme == LearnerScheme::kCrl1 ||
           scheme == LearnerScheme::kCrl2;
  }
  bool uses_epsilon() const {
    return scheme == LearnerScheme::kCrl1 || scheme == LearnerScheme::kCrl2;
  }

  // Throws std::domain_error for hard violations (e.g. epsilon <= 0 where
  // the scheme needs it) and returns soft advisories, e.g. when lambda/mu
  // does not vanish structurally for CRL1/CRL2 or a scale factor is zero.
  std::vector<std::string> validate() const;
};

// Applies one step of `config`'s scheme with the given realized payoff and
// scheduled rates.
LearnerState apply_step(const LearnerConfig& config, const LearnerState& state, int action,
                        double payoff, double lambda, double mu, double rl3_n, double rl3_C);

}  // namespace codipas

#endif  // CODIPAS_LEARNERS_HPP_
