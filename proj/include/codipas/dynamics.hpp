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

#ifndef CODIPAS_DYNAMICS_HPP_
#define CODIPAS_DYNAMICS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "codipas/equilibrium.hpp"
#include "codipas/game.hpp"
#include "codipas/strategy.hpp"
#include "codipas/trajectory.hpp"

namespace codipas {

// State of a deterministic dynamic: both strategies, an optional payoff
// estimate block (carried by the coupled system), and the current time.
struct OdeState {
  MixedStrategy f;
  MixedStrategy g;
  std::optional<std::vector<double>> u_hat1;
  double time = 0.0;
};

// ---- Per-player vector fields ------------------------------------------

// Component a = own(a) * [u(e_a, opp) - sum_a' own(a') u(e_a', opp)], with
// player 2 evaluated through u2 = c - u1. Tangent to the simplex.
std::vector<double> replicator_field(const GameSpec& spec, int player, const MixedStrategy& own,
                                     const MixedStrategy& opp);

// Payoff-normalized (Maynard-Smith) adjustment: the replicator field divided
// by the average payoff and scaled by k. Requires a positive average payoff.
std::vector<double> adjusted_replicator_field(const GameSpec& spec, int player,
                                              const MixedStrategy& own, const MixedStrategy& opp,
                                              double k);

// k * (softmax(payoff_vector(player, opp), epsilon) - own).
std::vector<double> smooth_br_field(const GameSpec& spec, int player, const MixedStrategy& own,
                                    const MixedStrategy& opp, double epsilon, double k);

// Derivative blocks of the coupled estimate / smooth-BR / replicator system:
//   d/dt u_hat1(a) = u1(e_a, g) - u_hat1(a)
//   df/dt          = k1 * (softmax of u1(., g) - f)
//   dg/dt          = k2 * replicator field of player 2
struct CoupledThm1Deriv {
  std::vector<double> u_hat1_dot;
  std::vector<double> f_dot;
  std::vector<double> g_dot;
};
CoupledThm1Deriv coupled_thm1_field(const GameSpec& spec, const OdeState& state, double epsilon,
                                    double k1, double k2);

// Replicator field for player 1 with the fast opponent collapsed onto its
// smooth best response beta_2(f).
std::vector<double> composite_t1_field(const GameSpec& spec, const MixedStrategy& f,
                                       double epsilon);

// Non-autonomous slow-side field: beta_2(xi_1(g, t)) - g, where
// xi_1(g, t) = softmax(t * u1(., g)) is the time-indexed logit of the frozen
// replicator solution. Requires t > 0.
std::vector<double> composite_t2_field(const GameSpec& spec, const MixedStrategy& g, double t,
                                       double epsilon);

// ---- Integrable systems --------------------------------------------------

class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

class DynamicsSystem {
 public:
  enum class Kind {
    kReplicator,
    kAdjustedReplicator,
    kSmoothBr,
    kCoupledThm1,
    kCompositeT1,
    kCompositeT2,
    kFrozenSmoothBr,
    kFrozenReplicator,
  };

  // Two-sided systems.
  static DynamicsSystem replicator(GameSpec spec);
  static DynamicsSystem adjusted_replicator(GameSpec spec, double k);
  static DynamicsSystem smooth_br(GameSpec spec, double epsilon, double k);
  static DynamicsSystem coupled_thm1(GameSpec spec, double epsilon, double k1, double k2);
  // One-sided composites (the other side is derived from the state).
  static DynamicsSystem composite_t1(GameSpec spec, double epsilon);
  static DynamicsSystem composite_t2(GameSpec spec, double epsilon);
  // One player's dynamic against a frozen opponent; used to check the
  // closed-form solutions.
  static DynamicsSystem frozen_smooth_br(GameSpec spec, int player, MixedStrategy frozen_opp,
                                         double epsilon, double k);
  static DynamicsSystem frozen_replicator(GameSpec spec, int player, MixedStrategy frozen_opp);

  // CLI names: replicator, adjusted_replicator, smooth_br, coupled_thm1,
  // composite_T1, composite_T2.
  static DynamicsSystem from_name(const std::string& name, GameSpec spec, double epsilon,
                                  double k1, double k2);
  static std::vector<std::string> public_names();

  Kind kind() const { return kind_; }
  const GameSpec& spec() const { return spec_; }
  double epsilon() const { return epsilon_; }
  std::string name() const;
  bool non_autonomous() const { return kind_ == Kind::kCompositeT2; }

  std::size_t state_dim() const;
  std::vector<double> pack(const OdeState& state) const;
  OdeState unpack(double time, const std::vector<double>& x) const;
  void eval(double time, const std::vector<double>& x, std::vector<double>& dx) const;

 private:
  DynamicsSystem(Kind kind, GameSpec spec) : kind_(kind), spec_(std::move(spec)) {}

  Kind kind_;
  GameSpec spec_;
  double epsilon_ = 0.0;
  double k1_ = 1.0;
  double k2_ = 1.0;
  int player_ = 1;
  std::optional<MixedStrategy> frozen_opp_;
};

// Classical fixed-step RK4. Strategy blocks are clipped at zero and
// renormalized after a step once the drift exceeds 1e-12; a non-finite field
// value aborts with the offending time. Records the initial state, every
// record_stride-th step and the final step. When `saddle` is null it is
// computed once from the spec.
Trajectory integrate(const DynamicsSystem& system, const OdeState& init, double t_end, double dt,
                     int record_stride = 1, const SaddleSolution* saddle = nullptr);

// Advances a packed state from t0 to t1 with RK4 substeps of size at most dt.
// Same stepping and renormalization rules as integrate().
std::vector<double> rk4_advance(const DynamicsSystem& system, std::vector<double> x, double t0,
                                double t1, double dt);

// ---- Closed forms ---------------------------------------------------------

// Opponent trajectory handed to the closed-form evaluators: either constant
// or an arbitrary sampled path.
class StrategyPath {
 public:
  static StrategyPath constant(MixedStrategy value);
  static StrategyPath from_function(std::function<MixedStrategy(double)> fn);

  bool is_constant() const { return constant_.has_value(); }
  MixedStrategy at(double t) const;

 private:
  StrategyPath() = default;
  std::optional<MixedStrategy> constant_;
  std::function<MixedStrategy(double)> fn_;
};

// Unique solution of df/dt = softmax(u(., g_t), epsilon) - f:
//   f(t) = e^{-t} f0 + int_0^t softmax(u(., g_s), epsilon) e^{s-t} ds,
// reducing to (1 - e^{-t}) beta + e^{-t} f0 for constant g. Time-varying
// paths are integrated by trapezoidal quadrature with the given stride.
MixedStrategy explicit_sbr_solution(const GameSpec& spec, int player, double epsilon,
                                    const MixedStrategy& f0, const StrategyPath& opp_path,
                                    double t, double stride = 1e-4);

// Unique solution of the replicator equation from an interior start:
//   f_t(a) proportional to f0(a) * exp(int_0^t u(e_a, g_s) ds).
// With uniform f0 this is the plain exponential-weight form.
MixedStrategy explicit_replicator_solution(const GameSpec& spec, int player,
                                           const MixedStrategy& f0, const StrategyPath& opp_path,
                                           double t, double stride = 1e-4);

// Sup-norm gap between the replicator explicit solution (uniform start) and
// the logit, with temperature 1/t, of the payoff vector against the
// time-averaged opponent path. Both sides share one quadrature grid.
double prop1_equivalence_check(const GameSpec& spec, const StrategyPath& opp_path, double t,
                               double stride = 1e-4);

// Limit of the slow learner: f0 restricted to the pure best-response set
// against `opp` (ties within 1e-9) and renormalized.
MixedStrategy slow_learner_limit(const GameSpec& spec, int player, const MixedStrategy& f0,
                                 const MixedStrategy& opp);

}  // namespace codipas

#endif  // CODIPAS_DYNAMICS_HPP_
