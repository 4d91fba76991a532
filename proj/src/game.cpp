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

#include "codipas/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace codipas {

NoiseModel NoiseModel::iid_uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi) {
    throw std::domain_error("iid-uniform noise requires finite lo <= hi");
  }
  NoiseModel model;
  model.kind = Kind::kIidUniform;
  model.lo = lo;
  model.hi = hi;
  return model;
}

double NoiseModel::sample(RandomSource& rng) const {
  switch (kind) {
    case Kind::kNone:
      return 0.0;
    case Kind::kIidUniform:
      return rng.next_uniform(lo, hi);
  }
  throw std::logic_error("unknown noise kind");
}

GameSpec::GameSpec(std::vector<std::vector<double>> matrix, double constant_c, NoiseModel noise)
    : matrix_(std::move(matrix)), constant_c_(constant_c), noise_(noise) {
  if (matrix_.empty() || matrix_.front().empty()) {
    throw std::domain_error("payoff matrix must have at least one row and one column");
  }
  rows_ = static_cast<int>(matrix_.size());
  cols_ = static_cast<int>(matrix_.front().size());
  base_min_ = std::numeric_limits<double>::infinity();
  base_max_ = -std::numeric_limits<double>::infinity();
  for (const auto& row : matrix_) {
    if (static_cast<int>(row.size()) != cols_) {
      throw std::domain_error("payoff matrix rows must all have the same length");
    }
    for (double entry : row) {
      if (!std::isfinite(entry)) throw std::domain_error("payoff matrix entries must be finite");
      base_min_ = std::min(base_min_, entry);
      base_max_ = std::max(base_max_, entry);
    }
  }
  if (!std::isfinite(constant_c_)) throw std::domain_error("constant_c must be finite");
}

int GameSpec::num_actions(int player) const {
  if (player == 1) return rows_;
  if (player == 2) return cols_;
  throw std::domain_error("player must be 1 or 2");
}

double GameSpec::base_entry(int a1, int a2) const {
  if (a1 < 0 || a1 >= rows_ || a2 < 0 || a2 >= cols_) {
    throw std::domain_error("action index out of range");
  }
  return matrix_[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)];
}

double GameSpec::payoff_lower_bound(int player) const {
  const double u1_lo = base_min_ + (noise_.kind == NoiseModel::Kind::kNone ? 0.0 : noise_.lo);
  const double u1_hi = base_max_ + (noise_.kind == NoiseModel::Kind::kNone ? 0.0 : noise_.hi);
  if (player == 1) return u1_lo;
  if (player == 2) return constant_c_ - u1_hi;
  throw std::domain_error("player must be 1 or 2");
}

double GameSpec::payoff_upper_bound(int player) const {
  const double u1_lo = base_min_ + (noise_.kind == NoiseModel::Kind::kNone ? 0.0 : noise_.lo);
  const double u1_hi = base_max_ + (noise_.kind == NoiseModel::Kind::kNone ? 0.0 : noise_.hi);
  if (player == 1) return u1_hi;
  if (player == 2) return constant_c_ - u1_lo;
  throw std::domain_error("player must be 1 or 2");
}

std::pair<double, double> sample_payoff(const GameSpec& spec, RandomSource& rng, int a1, int a2) {
  const double u1 = spec.base_entry(a1, a2) + spec.noise().sample(rng);
  return {u1, spec.constant_c() - u1};
}

double expected_value(const GameSpec& spec, const MixedStrategy& f, const MixedStrategy& g) {
  if (f.size() != spec.num_rows() || g.size() != spec.num_cols()) {
    throw std::domain_error("expected_value: strategy dimensions do not match the game");
  }
  double value = 0.0;
  for (int a = 0; a < f.size(); ++a) {
    if (f[a] == 0.0) continue;
    double row = 0.0;
    for (int b = 0; b < g.size(); ++b) {
      row += spec.expected_entry(a, b) * g[b];
    }
    value += f[a] * row;
  }
  return value;
}

std::vector<double> payoff_vector(const GameSpec& spec, int player, const MixedStrategy& opponent_mix) {
  if (player == 1) {
    if (opponent_mix.size() != spec.num_cols()) {
      throw std::domain_error("payoff_vector: opponent mix does not match column count");
    }
    std::vector<double> u(static_cast<std::size_t>(spec.num_rows()), 0.0);
    for (int a = 0; a < spec.num_rows(); ++a) {
      for (int b = 0; b < spec.num_cols(); ++b) {
        u[static_cast<std::size_t>(a)] += spec.expected_entry(a, b) * opponent_mix[b];
      }
    }
    return u;
  }
  if (player == 2) {
    if (opponent_mix.size() != spec.num_rows()) {
      throw std::domain_error("payoff_vector: opponent mix does not match row count");
    }
    std::vector<double> u(static_cast<std::size_t>(spec.num_cols()), 0.0);
    for (int b = 0; b < spec.num_cols(); ++b) {
      double u1 = 0.0;
      for (int a = 0; a < spec.num_rows(); ++a) {
        u1 += spec.expected_entry(a, b) * opponent_mix[a];
      }
      u[static_cast<std::size_t>(b)] = spec.constant_c() - u1;
    }
    return u;
  }
  throw std::domain_error("player must be 1 or 2");
}

double exploitability(const GameSpec& spec, const MixedStrategy& f, const MixedStrategy& g) {
  const std::vector<double> row_payoffs = payoff_vector(spec, 1, g);
  double best_row = row_payoffs.front();
  for (double u : row_payoffs) best_row = std::max(best_row, u);

  if (f.size() != spec.num_rows()) {
    throw std::domain_error("exploitability: f does not match row count");
  }
  double worst_col = std::numeric_limits<double>::infinity();
  for (int b = 0; b < spec.num_cols(); ++b) {
    double u1 = 0.0;
    for (int a = 0; a < spec.num_rows(); ++a) {
      u1 += spec.expected_entry(a, b) * f[a];
    }
    worst_col = std::min(worst_col, u1);
  }
  return best_row - worst_col;
}

}  // namespace codipas
