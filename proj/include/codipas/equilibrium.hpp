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

#ifndef CODIPAS_EQUILIBRIUM_HPP_
#define CODIPAS_EQUILIBRIUM_HPP_

#include <cstdint>
#include <vector>

#include "codipas/game.hpp"
#include "codipas/strategy.hpp"

namespace codipas {

// An exact saddle point of the expected game.
struct SaddleSolution {
  MixedStrategy f_star;
  MixedStrategy g_star;
  double value = 0.0;
  std::vector<int> support1;
  std::vector<int> support2;
};

// A mutual fixed point of both players' Boltzmann-Gibbs responses.
struct LogitEquilibrium {
  MixedStrategy f_eps;
  MixedStrategy g_eps;
  double epsilon = 0.0;
  double residual = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;
  // Best residual seen after each iteration (recorded when requested in
  // solve_logit); non-increasing by construction.
  std::vector<double> residual_history;
};

inline constexpr double kSaddleTolerance = 1e-9;
inline constexpr int kMaxSupportEnumerationSize = 12;

// Exact saddle point by support enumeration with linear-system solves,
// verified against every pure deviation within kSaddleTolerance. Supports are
// scanned by (size, lexicographic) order and the first verified pair is
// returned, which makes ties deterministic. Games up to 12x12 are accepted.
SaddleSolution solve_saddle(const GameSpec& spec);

// Every verified equal-size support pair, in enumeration order. The first
// entry is what solve_saddle returns.
std::vector<SaddleSolution> solve_saddle_all(const GameSpec& spec);

// Damped fixed-point iteration for the logit equilibrium:
//   x <- (1-d)x + d*(softmax of the payoff vectors against the other side).
// `damping` is the initial d. When the residual stalls over a monitoring
// window the solver halves d and restarts from the best iterate seen, since a
// fixed d provably cycles once the map's local spectral radius exceeds one
// (small epsilon). Returns the best iterate flagged non-converged when
// max_iters runs out.
LogitEquilibrium solve_logit(const GameSpec& spec, double epsilon, double damping = 0.5,
                             double tol = 1e-10, std::int64_t max_iters = 1000000,
                             bool record_history = false);

// True iff exploitability(f, g) <= slack.
bool is_epsilon_saddle(const GameSpec& spec, const MixedStrategy& f, const MixedStrategy& g,
                       double slack);

}  // namespace codipas

#endif  // CODIPAS_EQUILIBRIUM_HPP_
