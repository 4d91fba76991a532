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

#ifndef CODIPAS_GAME_HPP_
#define CODIPAS_GAME_HPP_

#include <utility>
#include <vector>

#include "codipas/rng.hpp"
#include "codipas/strategy.hpp"

namespace codipas {

// Per-entry stochastic perturbation of the payoff matrix. The same draw is
// shared by both players within one play of the game.
struct NoiseModel {
  enum class Kind { kNone, kIidUniform };

  Kind kind = Kind::kNone;
  double lo = 0.0;
  double hi = 0.0;

  static NoiseModel none() { return NoiseModel{}; }
  static NoiseModel iid_uniform(double lo, double hi);

  double mean() const { return kind == Kind::kNone ? 0.0 : 0.5 * (lo + hi); }
  double half_width() const { return kind == Kind::kNone ? 0.0 : 0.5 * (hi - lo); }
  double sample(RandomSource& rng) const;

  bool operator==(const NoiseModel&) const = default;
};

// A two-player constant-sum game. The matrix holds player 1's payoff; rows
// are player 1 actions, columns player 2 actions, and player 2 receives
// constant_c minus player 1's payoff.
class GameSpec {
 public:
  GameSpec(std::vector<std::vector<double>> matrix, double constant_c = 0.0,
           NoiseModel noise = NoiseModel::none());

  int num_rows() const { return rows_; }
  int num_cols() const { return cols_; }
  int num_actions(int player) const;

  double base_entry(int a1, int a2) const;
  // Base entry plus the mean of the noise: the entry of the expected game.
  double expected_entry(int a1, int a2) const { return base_entry(a1, a2) + noise_.mean(); }

  double constant_c() const { return constant_c_; }
  const NoiseModel& noise() const { return noise_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }

  // Bounds on the realized payoff a player can receive, noise included.
  double payoff_lower_bound(int player) const;
  double payoff_upper_bound(int player) const;

  bool operator==(const GameSpec&) const = default;

 private:
  std::vector<std::vector<double>> matrix_;
  double constant_c_ = 0.0;
  NoiseModel noise_;
  int rows_ = 0;
  int cols_ = 0;
  double base_min_ = 0.0;
  double base_max_ = 0.0;
};

// One play of the game: returns the pair (u1, u2) = (M[a1][a2] + s, c - u1)
// with a single shared noise draw s.
std::pair<double, double> sample_payoff(const GameSpec& spec, RandomSource& rng, int a1, int a2);

// Expected payoff to player 1 under the mixed profile (f, g), noise mean
// included.
double expected_value(const GameSpec& spec, const MixedStrategy& f, const MixedStrategy& g);

// Component a = the player's expected payoff for pure action a against
// `opponent_mix`. Player 2's entries use u2 = c - u1.
std::vector<double> payoff_vector(const GameSpec& spec, int player, const MixedStrategy& opponent_mix);

// Best pure-deviation gap of the expected game:
//   max_a u1(e_a, g) - min_b u1(f, e_b).
// Nonnegative, and zero exactly at a saddle point.
double exploitability(const GameSpec& spec, const MixedStrategy& f, const MixedStrategy& g);

}  // namespace codipas

#endif  // CODIPAS_GAME_HPP_
