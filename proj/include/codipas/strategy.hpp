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

#ifndef CODIPAS_STRATEGY_HPP_
#define CODIPAS_STRATEGY_HPP_

#include <cstddef>
#include <vector>

namespace codipas {

// A mixed strategy: a probability vector over a finite action set.
// Construction validates the simplex invariants (entries in [0, 1], sum
// equal to one within kSumTolerance); instances are immutable afterwards.
class MixedStrategy {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy uniform(int num_actions);
  static MixedStrategy vertex(int num_actions, int action);

  // Builds a strategy from the raw output of an update rule. Entries within
  // kSumTolerance below zero are clamped to zero, and the vector is rescaled
  // when the sum has drifted from one by more than kSumTolerance. Drift
  // beyond 1e-6 is treated as a broken update and rejected.
  static MixedStrategy from_update(std::vector<double> probs);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int action) const { return probs_[static_cast<std::size_t>(action)]; }
  const std::vector<double>& probs() const { return probs_; }

  // True when every entry exceeds `floor`.
  bool is_interior(double floor = 0.0) const;

  double sup_distance(const MixedStrategy& other) const;

  bool operator==(const MixedStrategy& other) const { return probs_ == other.probs_; }

 private:
  struct Unchecked {};
  MixedStrategy(Unchecked, std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Throws std::domain_error when `probs` violates the simplex invariants.
void validate_simplex(const std::vector<double>& probs, double sum_tolerance = MixedStrategy::kSumTolerance);

double sup_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace codipas

#endif  // CODIPAS_STRATEGY_HPP_
