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

#include "codipas/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace codipas {
namespace {

void check_action(const LearnerState& state, int action) {
  if (action < 0 || action >= state.strategy.size()) {
    throw std::domain_error("action index out of range");
  }
  if (static_cast<int>(state.estimates.size()) != state.strategy.size()) {
    throw std::domain_error("estimate vector does not match the action count");
  }
}

void check_finite_payoff(double payoff) {
  if (!std::isfinite(payoff)) throw std::domain_error("payoff must be finite");
}

// Shared strategy line of CRL0 and RL2: strategy + lambda*U*(1_a - strategy).
std::vector<double> reinforce_strategy(const MixedStrategy& strategy, int action, double payoff,
                                       double lambda) {
  const double step = lambda * payoff;
  if (!(step >= 0.0) || step >= 1.0) {
    std::ostringstream msg;
    msg << "lambda*U = " << step << " outside [0, 1) (lambda = " << lambda << ", U = " << payoff
        << ")";
    throw StepBoundError(msg.str());
  }
  std::vector<double> next = strategy.probs();
  for (int a = 0; a < strategy.size(); ++a) {
    const double indicator = (a == action) ? 1.0 : 0.0;
    next[static_cast<std::size_t>(a)] += step * (indicator - strategy[a]);
  }
  return next;
}

std::vector<double> q_update(const std::vector<double>& estimates, int action, double payoff,
                             double rate) {
  std::vector<double> next = estimates;
  next[static_cast<std::size_t>(action)] += rate * (payoff - estimates[static_cast<std::size_t>(action)]);
  return next;
}

}  // namespace

std::string to_string(LearnerScheme scheme) {
  switch (scheme) {
    case LearnerScheme::kCrl0:
      return "CRL0";
    case LearnerScheme::kCrl1:
      return "CRL1";
    case LearnerScheme::kCrl2:
      return "CRL2";
    case LearnerScheme::kRl2:
      return "RL2";
    case LearnerScheme::kRl3:
      return "RL3";
  }
  return "?";
}

LearnerScheme learner_scheme_from_string(const std::string& name) {
  if (name == "CRL0") return LearnerScheme::kCrl0;
  if (name == "CRL1") return LearnerScheme::kCrl1;
  if (name == "CRL2") return LearnerScheme::kCrl2;
  if (name == "RL2") return LearnerScheme::kRl2;
  if (name == "RL3") return LearnerScheme::kRl3;
  throw std::domain_error("unknown learner scheme '" + name +
                          "' (expected CRL0, CRL1, CRL2, RL2 or RL3)");
}

MixedStrategy softmax(const std::vector<double>& u, double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("softmax requires epsilon > 0");
  if (u.empty()) throw std::domain_error("softmax requires at least one component");
  double max_u = -std::numeric_limits<double>::infinity();
  for (double value : u) {
    if (!std::isfinite(value)) throw std::domain_error("softmax input must be finite");
    max_u = std::max(max_u, value);
  }
  std::vector<double> weights(u.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    weights[i] = std::exp((u[i] - max_u) / epsilon);
    sum += weights[i];
  }
  for (double& w : weights) w /= sum;
  return MixedStrategy::from_update(std::move(weights));
}

MixedStrategy imitative_softmax(const MixedStrategy& strategy, const std::vector<double>& u,
                                double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("imitative_softmax requires epsilon > 0");
  if (static_cast<int>(u.size()) != strategy.size()) {
    throw std::domain_error("imitative_softmax: payoff vector does not match the strategy");
  }
  // Max over supported actions only, so the supported weights cannot all
  // underflow to zero.
  double max_u = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < strategy.size(); ++a) {
    if (!std::isfinite(u[static_cast<std::size_t>(a)])) {
      throw std::domain_error("imitative_softmax input must be finite");
    }
    if (strategy[a] > 0.0) max_u = std::max(max_u, u[static_cast<std::size_t>(a)]);
  }
  std::vector<double> weights(u.size(), 0.0);
  double sum = 0.0;
  for (int a = 0; a < strategy.size(); ++a) {
    if (strategy[a] > 0.0) {
      weights[static_cast<std::size_t>(a)] =
          strategy[a] * std::exp((u[static_cast<std::size_t>(a)] - max_u) / epsilon);
      sum += weights[static_cast<std::size_t>(a)];
    }
  }
  if (!(sum > 0.0)) throw std::domain_error("imitative_softmax: all weights vanished");
  for (double& w : weights) w /= sum;
  return MixedStrategy::from_update(std::move(weights));
}

LearnerState crl0_step(const LearnerState& state, int action, double payoff, double lambda,
                       double mu) {
  check_action(state, action);
  check_finite_payoff(payoff);
  return LearnerState{MixedStrategy::from_update(reinforce_strategy(state.strategy, action, payoff, lambda)),
                      q_update(state.estimates, action, payoff, mu), state.t + 1};
}

LearnerState crl1_step(const LearnerState& state, int action, double payoff, double lambda,
                       double mu, double epsilon) {
  check_action(state, action);
  check_finite_payoff(payoff);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "CRL1 mixing rate lambda = " << lambda << " outside [0, 1]";
    throw StepBoundError(msg.str());
  }
  const MixedStrategy target = softmax(state.estimates, epsilon);
  std::vector<double> next(static_cast<std::size_t>(state.strategy.size()));
  for (int a = 0; a < state.strategy.size(); ++a) {
    next[static_cast<std::size_t>(a)] = (1.0 - lambda) * state.strategy[a] + lambda * target[a];
  }
  const double rate = std::min(1.0, mu / std::max(state.strategy[action], kEstimateFloor));
  return LearnerState{MixedStrategy::from_update(std::move(next)),
                      q_update(state.estimates, action, payoff, rate), state.t + 1};
}

LearnerState crl2_step(const LearnerState& state, int action, double payoff, double lambda,
                       double mu, double epsilon) {
  check_action(state, action);
  check_finite_payoff(payoff);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "CRL2 mixing rate lambda = " << lambda << " outside [0, 1]";
    throw StepBoundError(msg.str());
  }
  const MixedStrategy target = imitative_softmax(state.strategy, state.estimates, epsilon);
  std::vector<double> next(static_cast<std::size_t>(state.strategy.size()));
  for (int a = 0; a < state.strategy.size(); ++a) {
    next[static_cast<std::size_t>(a)] = (1.0 - lambda) * state.strategy[a] + lambda * target[a];
  }
  const double rate = std::min(1.0, mu / std::max(state.strategy[action], kEstimateFloor));
  return LearnerState{MixedStrategy::from_update(std::move(next)),
                      q_update(state.estimates, action, payoff, rate), state.t + 1};
}

LearnerState rl2_step(const LearnerState& state, int action, double payoff, double lambda) {
  check_action(state, action);
  check_finite_payoff(payoff);
  return LearnerState{MixedStrategy::from_update(reinforce_strategy(state.strategy, action, payoff, lambda)),
                      state.estimates, state.t + 1};
}

LearnerState rl3_step(const LearnerState& state, int action, double payoff, double n, double C) {
  check_action(state, action);
  check_finite_payoff(payoff);
  if (!(n > 0.0)) throw std::domain_error("RL3 requires n > 0");
  if (!(C > 0.0)) throw std::domain_error("RL3 requires C > 0");
  if (payoff < 0.0 || payoff > C) {
    std::ostringstream msg;
    msg << "RL3 payoff U = " << payoff << " outside [0, C] with C = " << C;
    throw StepBoundError(msg.str());
  }
  const double scale = C * (n + 1.0) / (n * C + payoff);
  std::vector<double> raw = state.strategy.probs();
  raw[static_cast<std::size_t>(action)] += payoff;
  double sum = 0.0;
  for (double& p : raw) {
    p *= scale;
    sum += p;
  }
  // The scaled update does not land on the simplex for general U; dividing by
  // the sum is the unique scale factor that restores it.
  for (double& p : raw) p /= sum;
  return LearnerState{MixedStrategy::from_update(std::move(raw)), state.estimates, state.t + 1};
}

int choose_action(const MixedStrategy& strategy, RandomSource& rng) {
  const double draw = rng.next_unit();
  double cumulative = 0.0;
  for (int a = 0; a < strategy.size(); ++a) {
    cumulative += strategy[a];
    if (draw < cumulative) return a;
  }
  return strategy.size() - 1;
}

MixedStrategy perturb_strategy(const MixedStrategy& strategy, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("perturbation eps must be in [0, 1]");
  const double uniform = 1.0 / strategy.size();
  std::vector<double> next(static_cast<std::size_t>(strategy.size()));
  for (int a = 0; a < strategy.size(); ++a) {
    next[static_cast<std::size_t>(a)] = (1.0 - eps) * strategy[a] + eps * uniform;
  }
  return MixedStrategy::from_update(std::move(next));
}

std::vector<std::string> LearnerConfig::validate() const {
  std::vector<std::string> warnings;
  if (uses_epsilon() && !(epsilon > 0.0)) {
    throw std::domain_error(to_string(scheme) + " requires epsilon > 0");
  }
  if (scheme == LearnerScheme::kRl3) {
    if (rl3_n < 0.0) throw std::domain_error("RL3 n must be positive (or 0 for the default)");
    if (rl3_C < 0.0) throw std::domain_error("RL3 C must be positive (or 0 for the default)");
  }
  if (!(action_perturbation >= 0.0 && action_perturbation <= 1.0)) {
    throw std::domain_error("action_perturbation must be in [0, 1]");
  }
  if ((scheme == LearnerScheme::kCrl1 || scheme == LearnerScheme::kCrl2) &&
      !RateSchedule::ratio_vanishes(lambda, mu)) {
    warnings.push_back(to_string(scheme) + ": lambda (" + lambda.name() + ") does not vanish " +
                       "relative to mu (" + mu.name() + "); the strategy should learn on the slower timescale");
  }
  auto flag_frozen = [&warnings](const char* label, const RateSchedule& schedule) {
    if (schedule.family() == RateSchedule::Family::kScaled && schedule.scale_k() == 0.0) {
      warnings.push_back(std::string(label) + " scale factor is 0: the player is frozen and the divergent-sum rate condition is violated");
    }
  };
  flag_frozen("lambda", lambda);
  if (uses_estimates()) flag_frozen("mu", mu);
  return warnings;
}

LearnerState apply_step(const LearnerConfig& config, const LearnerState& state, int action,
                        double payoff, double lambda, double mu, double rl3_n, double rl3_C) {
  switch (config.scheme) {
    case LearnerScheme::kCrl0:
      return crl0_step(state, action, payoff, lambda, mu);
    case LearnerScheme::kCrl1:
      return crl1_step(state, action, payoff, lambda, mu, config.epsilon);
    case LearnerScheme::kCrl2:
      return crl2_step(state, action, payoff, lambda, mu, config.epsilon);
    case LearnerScheme::kRl2:
      return rl2_step(state, action, payoff, lambda);
    case LearnerScheme::kRl3:
      return rl3_step(state, action, payoff, rl3_n, rl3_C);
  }
  throw std::logic_error("unknown learner scheme");
}

}  // namespace codipas
