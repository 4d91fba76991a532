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

#include "codipas/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "codipas/learners.hpp"

namespace codipas {
namespace {

std::vector<double> replicator_from_payoffs(const MixedStrategy& own,
                                            const std::vector<double>& payoffs) {
  double average = 0.0;
  for (int a = 0; a < own.size(); ++a) average += own[a] * payoffs[static_cast<std::size_t>(a)];
  std::vector<double> field(static_cast<std::size_t>(own.size()));
  for (int a = 0; a < own.size(); ++a) {
    field[static_cast<std::size_t>(a)] = own[a] * (payoffs[static_cast<std::size_t>(a)] - average);
  }
  return field;
}

// xi_1(g, t): softmax of t * u(., g), the frozen-opponent replicator solution
// from a uniform start.
MixedStrategy time_indexed_logit(const GameSpec& spec, int player, const MixedStrategy& opp,
                                 double t) {
  std::vector<double> u = payoff_vector(spec, player, opp);
  for (double& value : u) value *= t;
  return softmax(u, 1.0);
}

}  // namespace

std::vector<double> replicator_field(const GameSpec& spec, int player, const MixedStrategy& own,
                                     const MixedStrategy& opp) {
  return replicator_from_payoffs(own, payoff_vector(spec, player, opp));
}

std::vector<double> adjusted_replicator_field(const GameSpec& spec, int player,
                                              const MixedStrategy& own, const MixedStrategy& opp,
                                              double k) {
  const std::vector<double> payoffs = payoff_vector(spec, player, opp);
  double average = 0.0;
  for (int a = 0; a < own.size(); ++a) average += own[a] * payoffs[static_cast<std::size_t>(a)];
  if (!(average > 0.0)) {
    std::ostringstream msg;
    msg << "adjusted replicator needs a positive average payoff, got " << average
        << "; shift the payoffs with constant_c";
    throw std::domain_error(msg.str());
  }
  std::vector<double> field = replicator_from_payoffs(own, payoffs);
  for (double& value : field) value *= k / average;
  return field;
}

std::vector<double> smooth_br_field(const GameSpec& spec, int player, const MixedStrategy& own,
                                    const MixedStrategy& opp, double epsilon, double k) {
  const MixedStrategy target = softmax(payoff_vector(spec, player, opp), epsilon);
  if (target.size() != own.size()) throw std::domain_error("smooth_br_field: dimension mismatch");
  std::vector<double> field(static_cast<std::size_t>(own.size()));
  for (int a = 0; a < own.size(); ++a) field[static_cast<std::size_t>(a)] = k * (target[a] - own[a]);
  return field;
}

CoupledThm1Deriv coupled_thm1_field(const GameSpec& spec, const OdeState& state, double epsilon,
                                    double k1, double k2) {
  if (!state.u_hat1.has_value() ||
      static_cast<int>(state.u_hat1->size()) != spec.num_rows()) {
    throw std::domain_error("coupled_thm1_field: state must carry a u_hat1 block of row size");
  }
  CoupledThm1Deriv deriv;
  const std::vector<double> u1 = payoff_vector(spec, 1, state.g);
  deriv.u_hat1_dot.resize(u1.size());
  for (std::size_t a = 0; a < u1.size(); ++a) {
    deriv.u_hat1_dot[a] = u1[a] - (*state.u_hat1)[a];
  }
  deriv.f_dot = smooth_br_field(spec, 1, state.f, state.g, epsilon, k1);
  deriv.g_dot = replicator_field(spec, 2, state.g, state.f);
  for (double& value : deriv.g_dot) value *= k2;
  return deriv;
}

std::vector<double> composite_t1_field(const GameSpec& spec, const MixedStrategy& f,
                                       double epsilon) {
  const MixedStrategy g = softmax(payoff_vector(spec, 2, f), epsilon);
  return replicator_field(spec, 1, f, g);
}

std::vector<double> composite_t2_field(const GameSpec& spec, const MixedStrategy& g, double t,
                                       double epsilon) {
  if (!(t > 0.0)) throw std::domain_error("composite_T2 is undefined at t <= 0");
  const MixedStrategy xi = time_indexed_logit(spec, 1, g, t);
  const MixedStrategy target = softmax(payoff_vector(spec, 2, xi), epsilon);
  std::vector<double> field(static_cast<std::size_t>(g.size()));
  for (int b = 0; b < g.size(); ++b) field[static_cast<std::size_t>(b)] = target[b] - g[b];
  return field;
}

// ---- DynamicsSystem -------------------------------------------------------

DynamicsSystem DynamicsSystem::replicator(GameSpec spec) {
  return DynamicsSystem(Kind::kReplicator, std::move(spec));
}

DynamicsSystem DynamicsSystem::adjusted_replicator(GameSpec spec, double k) {
  DynamicsSystem system(Kind::kAdjustedReplicator, std::move(spec));
  system.k1_ = k;
  system.k2_ = k;
  return system;
}

DynamicsSystem DynamicsSystem::smooth_br(GameSpec spec, double epsilon, double k) {
  if (!(epsilon > 0.0)) throw std::domain_error("smooth_br requires epsilon > 0");
  DynamicsSystem system(Kind::kSmoothBr, std::move(spec));
  system.epsilon_ = epsilon;
  system.k1_ = k;
  system.k2_ = k;
  return system;
}

DynamicsSystem DynamicsSystem::coupled_thm1(GameSpec spec, double epsilon, double k1, double k2) {
  if (!(epsilon > 0.0)) throw std::domain_error("coupled_thm1 requires epsilon > 0");
  DynamicsSystem system(Kind::kCoupledThm1, std::move(spec));
  system.epsilon_ = epsilon;
  system.k1_ = k1;
  system.k2_ = k2;
  return system;
}

DynamicsSystem DynamicsSystem::composite_t1(GameSpec spec, double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("composite_T1 requires epsilon > 0");
  DynamicsSystem system(Kind::kCompositeT1, std::move(spec));
  system.epsilon_ = epsilon;
  return system;
}

DynamicsSystem DynamicsSystem::composite_t2(GameSpec spec, double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("composite_T2 requires epsilon > 0");
  DynamicsSystem system(Kind::kCompositeT2, std::move(spec));
  system.epsilon_ = epsilon;
  return system;
}

DynamicsSystem DynamicsSystem::frozen_smooth_br(GameSpec spec, int player, MixedStrategy frozen_opp,
                                                double epsilon, double k) {
  if (!(epsilon > 0.0)) throw std::domain_error("frozen_smooth_br requires epsilon > 0");
  DynamicsSystem system(Kind::kFrozenSmoothBr, std::move(spec));
  system.epsilon_ = epsilon;
  system.k1_ = k;
  system.player_ = player;
  system.frozen_opp_ = std::move(frozen_opp);
  return system;
}

DynamicsSystem DynamicsSystem::frozen_replicator(GameSpec spec, int player,
                                                 MixedStrategy frozen_opp) {
  DynamicsSystem system(Kind::kFrozenReplicator, std::move(spec));
  system.player_ = player;
  system.frozen_opp_ = std::move(frozen_opp);
  return system;
}

DynamicsSystem DynamicsSystem::from_name(const std::string& name, GameSpec spec, double epsilon,
                                         double k1, double k2) {
  if (name == "replicator") return replicator(std::move(spec));
  if (name == "adjusted_replicator") return adjusted_replicator(std::move(spec), k1);
  if (name == "smooth_br") return smooth_br(std::move(spec), epsilon, k1);
  if (name == "coupled_thm1") return coupled_thm1(std::move(spec), epsilon, k1, k2);
  if (name == "composite_T1") return composite_t1(std::move(spec), epsilon);
  if (name == "composite_T2") return composite_t2(std::move(spec), epsilon);
  std::ostringstream msg;
  msg << "unknown dynamics system '" << name << "'; valid names:";
  for (const auto& valid : public_names()) msg << ' ' << valid;
  throw std::domain_error(msg.str());
}

std::vector<std::string> DynamicsSystem::public_names() {
  return {"replicator", "adjusted_replicator", "smooth_br",
          "coupled_thm1", "composite_T1",       "composite_T2"};
}

std::string DynamicsSystem::name() const {
  switch (kind_) {
    case Kind::kReplicator:
      return "replicator";
    case Kind::kAdjustedReplicator:
      return "adjusted_replicator";
    case Kind::kSmoothBr:
      return "smooth_br";
    case Kind::kCoupledThm1:
      return "coupled_thm1";
    case Kind::kCompositeT1:
      return "composite_T1";
    case Kind::kCompositeT2:
      return "composite_T2";
    case Kind::kFrozenSmoothBr:
      return "frozen_smooth_br";
    case Kind::kFrozenReplicator:
      return "frozen_replicator";
  }
  return "?";
}

std::size_t DynamicsSystem::state_dim() const {
  const std::size_t m = static_cast<std::size_t>(spec_.num_rows());
  const std::size_t n = static_cast<std::size_t>(spec_.num_cols());
  switch (kind_) {
    case Kind::kReplicator:
    case Kind::kAdjustedReplicator:
    case Kind::kSmoothBr:
      return m + n;
    case Kind::kCoupledThm1:
      return 2 * m + n;
    case Kind::kCompositeT1:
      return m;
    case Kind::kCompositeT2:
      return n;
    case Kind::kFrozenSmoothBr:
    case Kind::kFrozenReplicator:
      return player_ == 1 ? m : n;
  }
  return 0;
}

std::vector<double> DynamicsSystem::pack(const OdeState& state) const {
  const int m = spec_.num_rows();
  const int n = spec_.num_cols();
  if (state.f.size() != m || state.g.size() != n) {
    throw std::domain_error("initial state does not match the game dimensions");
  }
  std::vector<double> x;
  x.reserve(state_dim());
  switch (kind_) {
    case Kind::kReplicator:
    case Kind::kAdjustedReplicator:
    case Kind::kSmoothBr:
      x.insert(x.end(), state.f.probs().begin(), state.f.probs().end());
      x.insert(x.end(), state.g.probs().begin(), state.g.probs().end());
      break;
    case Kind::kCoupledThm1: {
      std::vector<double> u_hat =
          state.u_hat1.value_or(std::vector<double>(static_cast<std::size_t>(m), 0.0));
      if (static_cast<int>(u_hat.size()) != m) {
        throw std::domain_error("u_hat1 block must match the row count");
      }
      x.insert(x.end(), u_hat.begin(), u_hat.end());
      x.insert(x.end(), state.f.probs().begin(), state.f.probs().end());
      x.insert(x.end(), state.g.probs().begin(), state.g.probs().end());
      break;
    }
    case Kind::kCompositeT1:
      x.insert(x.end(), state.f.probs().begin(), state.f.probs().end());
      break;
    case Kind::kCompositeT2:
      x.insert(x.end(), state.g.probs().begin(), state.g.probs().end());
      break;
    case Kind::kFrozenSmoothBr:
    case Kind::kFrozenReplicator: {
      const MixedStrategy& own = player_ == 1 ? state.f : state.g;
      x.insert(x.end(), own.probs().begin(), own.probs().end());
      break;
    }
  }
  return x;
}

OdeState DynamicsSystem::unpack(double time, const std::vector<double>& x) const {
  const std::size_t m = static_cast<std::size_t>(spec_.num_rows());
  const std::size_t n = static_cast<std::size_t>(spec_.num_cols());
  auto strategy = [&x](std::size_t offset, std::size_t count) {
    return MixedStrategy::from_update(
        std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(offset),
                            x.begin() + static_cast<std::ptrdiff_t>(offset + count)));
  };
  switch (kind_) {
    case Kind::kReplicator:
    case Kind::kAdjustedReplicator:
    case Kind::kSmoothBr:
      return OdeState{strategy(0, m), strategy(m, n), std::nullopt, time};
    case Kind::kCoupledThm1:
      return OdeState{strategy(m, m), strategy(2 * m, n),
                      std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m)),
                      time};
    case Kind::kCompositeT1: {
      MixedStrategy f = strategy(0, m);
      MixedStrategy g = softmax(payoff_vector(spec_, 2, f), epsilon_);
      return OdeState{std::move(f), std::move(g), std::nullopt, time};
    }
    case Kind::kCompositeT2: {
      MixedStrategy g = strategy(0, n);
      MixedStrategy f = time > 0.0 ? time_indexed_logit(spec_, 1, g, time)
                                   : MixedStrategy::uniform(static_cast<int>(m));
      return OdeState{std::move(f), std::move(g), std::nullopt, time};
    }
    case Kind::kFrozenSmoothBr:
    case Kind::kFrozenReplicator: {
      if (player_ == 1) return OdeState{strategy(0, m), *frozen_opp_, std::nullopt, time};
      return OdeState{*frozen_opp_, strategy(0, n), std::nullopt, time};
    }
  }
  throw std::logic_error("unknown dynamics kind");
}

void DynamicsSystem::eval(double time, const std::vector<double>& x, std::vector<double>& dx) const {
  dx.assign(x.size(), 0.0);
  const OdeState state = unpack(time, x);
  const std::size_t m = static_cast<std::size_t>(spec_.num_rows());
  switch (kind_) {
    case Kind::kReplicator: {
      std::vector<double> df = replicator_field(spec_, 1, state.f, state.g);
      std::vector<double> dg = replicator_field(spec_, 2, state.g, state.f);
      std::copy(df.begin(), df.end(), dx.begin());
      std::copy(dg.begin(), dg.end(), dx.begin() + static_cast<std::ptrdiff_t>(m));
      break;
    }
    case Kind::kAdjustedReplicator: {
      std::vector<double> df = adjusted_replicator_field(spec_, 1, state.f, state.g, k1_);
      std::vector<double> dg = adjusted_replicator_field(spec_, 2, state.g, state.f, k2_);
      std::copy(df.begin(), df.end(), dx.begin());
      std::copy(dg.begin(), dg.end(), dx.begin() + static_cast<std::ptrdiff_t>(m));
      break;
    }
    case Kind::kSmoothBr: {
      std::vector<double> df = smooth_br_field(spec_, 1, state.f, state.g, epsilon_, k1_);
      std::vector<double> dg = smooth_br_field(spec_, 2, state.g, state.f, epsilon_, k2_);
      std::copy(df.begin(), df.end(), dx.begin());
      std::copy(dg.begin(), dg.end(), dx.begin() + static_cast<std::ptrdiff_t>(m));
      break;
    }
    case Kind::kCoupledThm1: {
      const CoupledThm1Deriv deriv = coupled_thm1_field(spec_, state, epsilon_, k1_, k2_);
      std::copy(deriv.u_hat1_dot.begin(), deriv.u_hat1_dot.end(), dx.begin());
      std::copy(deriv.f_dot.begin(), deriv.f_dot.end(), dx.begin() + static_cast<std::ptrdiff_t>(m));
      std::copy(deriv.g_dot.begin(), deriv.g_dot.end(), dx.begin() + static_cast<std::ptrdiff_t>(2 * m));
      break;
    }
    case Kind::kCompositeT1: {
      std::vector<double> df = composite_t1_field(spec_, state.f, epsilon_);
      std::copy(df.begin(), df.end(), dx.begin());
      break;
    }
    case Kind::kCompositeT2: {
      std::vector<double> dg = composite_t2_field(spec_, state.g, time, epsilon_);
      std::copy(dg.begin(), dg.end(), dx.begin());
      break;
    }
    case Kind::kFrozenSmoothBr: {
      const MixedStrategy& own = player_ == 1 ? state.f : state.g;
      std::vector<double> d = smooth_br_field(spec_, player_, own, *frozen_opp_, epsilon_, k1_);
      std::copy(d.begin(), d.end(), dx.begin());
      break;
    }
    case Kind::kFrozenReplicator: {
      const MixedStrategy& own = player_ == 1 ? state.f : state.g;
      std::vector<double> d = replicator_field(spec_, player_, own, *frozen_opp_);
      std::copy(d.begin(), d.end(), dx.begin());
      break;
    }
  }
}

// ---- Integrator -----------------------------------------------------------

namespace {

struct BlockLayout {
  std::size_t offset;
  std::size_t count;
};

std::vector<BlockLayout> strategy_blocks(const DynamicsSystem& system) {
  const std::size_t m = static_cast<std::size_t>(system.spec().num_rows());
  const std::size_t n = static_cast<std::size_t>(system.spec().num_cols());
  switch (system.kind()) {
    case DynamicsSystem::Kind::kReplicator:
    case DynamicsSystem::Kind::kAdjustedReplicator:
    case DynamicsSystem::Kind::kSmoothBr:
      return {{0, m}, {m, n}};
    case DynamicsSystem::Kind::kCoupledThm1:
      return {{m, m}, {2 * m, n}};
    case DynamicsSystem::Kind::kCompositeT1:
      return {{0, m}};
    case DynamicsSystem::Kind::kCompositeT2:
      return {{0, n}};
    case DynamicsSystem::Kind::kFrozenSmoothBr:
    case DynamicsSystem::Kind::kFrozenReplicator:
      return {{0, system.state_dim()}};
  }
  return {};
}

void renormalize_blocks(std::vector<double>& x, const std::vector<BlockLayout>& blocks) {
  for (const auto& block : blocks) {
    double sum = 0.0;
    for (std::size_t i = block.offset; i < block.offset + block.count; ++i) {
      if (x[i] < 0.0) x[i] = 0.0;
      sum += x[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      for (std::size_t i = block.offset; i < block.offset + block.count; ++i) x[i] /= sum;
    }
  }
}

void record_point(Trajectory& trajectory, const DynamicsSystem& system, const OdeState& state,
                  const SaddleSolution& saddle) {
  const GameSpec& spec = system.spec();
  trajectory.times.push_back(state.time);
  trajectory.f.push_back(state.f);
  trajectory.g.push_back(state.g);
  const std::vector<double> u1 = payoff_vector(spec, 1, state.g);
  const std::vector<double> u2 = payoff_vector(spec, 2, state.f);
  trajectory.u_hat1.push_back(state.u_hat1.value_or(u1));
  trajectory.u_hat2.push_back(u2);
  const double value = expected_value(spec, state.f, state.g);
  trajectory.payoff1.push_back(value);
  trajectory.payoff2.push_back(spec.constant_c() - value);
  trajectory.exploitability.push_back(codipas::exploitability(spec, state.f, state.g));
  trajectory.dist_saddle_sup.push_back(std::max(state.f.sup_distance(saddle.f_star),
                                                state.g.sup_distance(saddle.g_star)));
  double estimate_error = 0.0;
  if (state.u_hat1.has_value()) {
    for (std::size_t a = 0; a < u1.size(); ++a) {
      estimate_error = std::max(estimate_error, std::abs((*state.u_hat1)[a] - u1[a]));
    }
  }
  trajectory.estimate_error.push_back(estimate_error);
}

}  // namespace

std::vector<double> rk4_advance(const DynamicsSystem& system, std::vector<double> x, double t0,
                                double t1, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("rk4_advance requires dt > 0");
  if (t1 < t0) throw std::domain_error("rk4_advance requires t1 >= t0");
  const std::vector<BlockLayout> blocks = strategy_blocks(system);
  const std::size_t dim = x.size();
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), scratch(dim);
  double time = t0;
  while (time < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
    const double h = std::min(dt, t1 - time);
    system.eval(time, x, k1);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = x[i] + 0.5 * h * k1[i];
    system.eval(time + 0.5 * h, scratch, k2);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = x[i] + 0.5 * h * k2[i];
    system.eval(time + 0.5 * h, scratch, k3);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = x[i] + h * k3[i];
    system.eval(time + h, scratch, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(x[i])) {
        std::ostringstream msg;
        msg << "integration of " << system.name() << " produced a non-finite state at t = "
            << time + h;
        throw IntegrationError(msg.str());
      }
    }
    renormalize_blocks(x, blocks);
    time += h;
  }
  return x;
}

Trajectory integrate(const DynamicsSystem& system, const OdeState& init, double t_end, double dt,
                     int record_stride, const SaddleSolution* saddle) {
  if (!(dt > 0.0)) throw std::domain_error("integrate requires dt > 0");
  if (!(t_end > init.time)) throw std::domain_error("integrate requires t_end > start time");
  if (record_stride < 1) throw std::domain_error("record_stride must be >= 1");
  if (system.non_autonomous() && !(init.time > 0.0)) {
    throw std::domain_error("composite_T2 must start at t0 > 0 (the t = 0 temperature is undefined)");
  }

  const SaddleSolution local_saddle = saddle ? *saddle : solve_saddle(system.spec());
  const std::vector<BlockLayout> blocks = strategy_blocks(system);

  std::vector<double> x = system.pack(init);
  renormalize_blocks(x, blocks);
  double time = init.time;

  Trajectory trajectory;
  record_point(trajectory, system, system.unpack(time, x), local_saddle);

  const std::size_t dim = x.size();
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), scratch(dim);
  const auto total_steps = static_cast<std::int64_t>(std::ceil((t_end - init.time) / dt - 1e-12));

  for (std::int64_t step = 0; step < total_steps; ++step) {
    const double h = std::min(dt, t_end - time);
    system.eval(time, x, k1);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = x[i] + 0.5 * h * k1[i];
    system.eval(time + 0.5 * h, scratch, k2);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = x[i] + 0.5 * h * k2[i];
    system.eval(time + 0.5 * h, scratch, k3);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = x[i] + h * k3[i];
    system.eval(time + h, scratch, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(x[i])) {
        std::ostringstream msg;
        msg << "integration of " << system.name() << " produced a non-finite state at t = "
            << time + h;
        throw IntegrationError(msg.str());
      }
    }
    renormalize_blocks(x, blocks);
    time += h;
    if ((step + 1) % record_stride == 0 || step + 1 == total_steps) {
      record_point(trajectory, system, system.unpack(time, x), local_saddle);
    }
  }
  return trajectory;
}

// ---- Closed forms ---------------------------------------------------------

StrategyPath StrategyPath::constant(MixedStrategy value) {
  StrategyPath path;
  path.constant_ = std::move(value);
  return path;
}

StrategyPath StrategyPath::from_function(std::function<MixedStrategy(double)> fn) {
  StrategyPath path;
  path.fn_ = std::move(fn);
  return path;
}

MixedStrategy StrategyPath::at(double t) const {
  if (constant_) return *constant_;
  return fn_(t);
}

MixedStrategy explicit_sbr_solution(const GameSpec& spec, int player, double epsilon,
                                    const MixedStrategy& f0, const StrategyPath& opp_path,
                                    double t, double stride) {
  if (t < 0.0) throw std::domain_error("explicit_sbr_solution requires t >= 0");
  const double decay = std::exp(-t);
  if (opp_path.is_constant()) {
    const MixedStrategy beta = softmax(payoff_vector(spec, player, opp_path.at(0.0)), epsilon);
    std::vector<double> out(static_cast<std::size_t>(f0.size()));
    for (int a = 0; a < f0.size(); ++a) {
      out[static_cast<std::size_t>(a)] = (1.0 - decay) * beta[a] + decay * f0[a];
    }
    return MixedStrategy::from_update(std::move(out));
  }
  if (t == 0.0) return f0;
  // Trapezoidal quadrature of beta(g_s) e^{s-t} on a uniform grid; the shifted
  // exponent keeps every weight at or below one.
  const auto segments = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t / stride)));
  const double h = t / static_cast<double>(segments);
  std::vector<double> acc(static_cast<std::size_t>(f0.size()), 0.0);
  for (std::int64_t i = 0; i <= segments; ++i) {
    const double s = static_cast<double>(i) * h;
    const double weight = (i == 0 || i == segments) ? 0.5 : 1.0;
    const MixedStrategy beta = softmax(payoff_vector(spec, player, opp_path.at(s)), epsilon);
    const double factor = weight * h * std::exp(s - t);
    for (int a = 0; a < f0.size(); ++a) acc[static_cast<std::size_t>(a)] += factor * beta[a];
  }
  for (int a = 0; a < f0.size(); ++a) acc[static_cast<std::size_t>(a)] += decay * f0[a];
  return MixedStrategy::from_update(std::move(acc));
}

MixedStrategy explicit_replicator_solution(const GameSpec& spec, int player,
                                           const MixedStrategy& f0, const StrategyPath& opp_path,
                                           double t, double stride) {
  if (t < 0.0) throw std::domain_error("explicit_replicator_solution requires t >= 0");
  if (!f0.is_interior()) {
    throw std::domain_error("explicit_replicator_solution requires an interior initial condition");
  }
  const int own_actions = f0.size();
  std::vector<double> integral(static_cast<std::size_t>(own_actions), 0.0);
  if (opp_path.is_constant()) {
    const std::vector<double> u = payoff_vector(spec, player, opp_path.at(0.0));
    for (int a = 0; a < own_actions; ++a) integral[static_cast<std::size_t>(a)] = t * u[static_cast<std::size_t>(a)];
  } else if (t > 0.0) {
    const auto segments = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t / stride)));
    const double h = t / static_cast<double>(segments);
    for (std::int64_t i = 0; i <= segments; ++i) {
      const double s = static_cast<double>(i) * h;
      const double weight = ((i == 0 || i == segments) ? 0.5 : 1.0) * h;
      const std::vector<double> u = payoff_vector(spec, player, opp_path.at(s));
      for (int a = 0; a < own_actions; ++a) integral[static_cast<std::size_t>(a)] += weight * u[static_cast<std::size_t>(a)];
    }
  }
  // log-weights: ln f0(a) + integral(a), normalized through softmax at unit
  // temperature for stability.
  std::vector<double> log_weights(static_cast<std::size_t>(own_actions));
  for (int a = 0; a < own_actions; ++a) {
    log_weights[static_cast<std::size_t>(a)] = std::log(f0[a]) + integral[static_cast<std::size_t>(a)];
  }
  return softmax(log_weights, 1.0);
}

double prop1_equivalence_check(const GameSpec& spec, const StrategyPath& opp_path, double t,
                               double stride) {
  if (!(t > 0.0)) throw std::domain_error("prop1_equivalence_check requires t > 0");
  const MixedStrategy uniform = MixedStrategy::uniform(spec.num_rows());
  const MixedStrategy lhs = explicit_replicator_solution(spec, 1, uniform, opp_path, t, stride);

  // Time average of the opponent path on the same quadrature grid.
  std::vector<double> average(static_cast<std::size_t>(spec.num_cols()), 0.0);
  if (opp_path.is_constant()) {
    const MixedStrategy g = opp_path.at(0.0);
    for (int b = 0; b < g.size(); ++b) average[static_cast<std::size_t>(b)] = g[b];
  } else {
    const auto segments = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t / stride)));
    const double h = t / static_cast<double>(segments);
    for (std::int64_t i = 0; i <= segments; ++i) {
      const double s = static_cast<double>(i) * h;
      const double weight = ((i == 0 || i == segments) ? 0.5 : 1.0) * h / t;
      const MixedStrategy g = opp_path.at(s);
      for (int b = 0; b < g.size(); ++b) average[static_cast<std::size_t>(b)] += weight * g[b];
    }
  }
  const MixedStrategy g_bar = MixedStrategy::from_update(std::move(average));
  const MixedStrategy rhs = softmax(payoff_vector(spec, 1, g_bar), 1.0 / t);
  return lhs.sup_distance(rhs);
}

MixedStrategy slow_learner_limit(const GameSpec& spec, int player, const MixedStrategy& f0,
                                 const MixedStrategy& opp) {
  if (!f0.is_interior()) {
    throw std::domain_error("slow_learner_limit requires an interior initial condition");
  }
  const std::vector<double> u = payoff_vector(spec, player, opp);
  double best = u.front();
  for (double value : u) best = std::max(best, value);
  std::vector<double> restricted(u.size(), 0.0);
  double sum = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] >= best - kSaddleTolerance) {
      restricted[a] = f0[static_cast<int>(a)];
      sum += restricted[a];
    }
  }
  for (double& p : restricted) p /= sum;
  return MixedStrategy::from_update(std::move(restricted));
}

}  // namespace codipas
