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

#include "codipas/strategy.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace codipas {

void validate_simplex(const std::vector<double>& probs, double sum_tolerance) {
  if (probs.empty()) {
    throw std::domain_error("mixed strategy must have at least one action");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      std::ostringstream msg;
      msg << "mixed strategy entry " << p << " outside [0, 1]";
      throw std::domain_error(msg.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > sum_tolerance) {
    std::ostringstream msg;
    msg << "mixed strategy entries sum to " << sum << ", expected 1 within " << sum_tolerance;
    throw std::domain_error(msg.str());
  }
}

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  validate_simplex(probs_);
}

MixedStrategy MixedStrategy::uniform(int num_actions) {
  if (num_actions < 1) throw std::domain_error("action count must be >= 1");
  return MixedStrategy(Unchecked{}, std::vector<double>(static_cast<std::size_t>(num_actions),
                                                        1.0 / num_actions));
}

MixedStrategy MixedStrategy::vertex(int num_actions, int action) {
  if (num_actions < 1) throw std::domain_error("action count must be >= 1");
  if (action < 0 || action >= num_actions) throw std::domain_error("vertex action out of range");
  std::vector<double> probs(static_cast<std::size_t>(num_actions), 0.0);
  probs[static_cast<std::size_t>(action)] = 1.0;
  return MixedStrategy(Unchecked{}, std::move(probs));
}

MixedStrategy MixedStrategy::from_update(std::vector<double> probs) {
  double sum = 0.0;
  for (double& p : probs) {
    if (!std::isfinite(p)) throw std::domain_error("update produced a non-finite probability");
    if (p < 0.0) {
      if (p < -kSumTolerance) {
        std::ostringstream msg;
        msg << "update produced negative probability " << p;
        throw std::domain_error(msg.str());
      }
      p = 0.0;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "update produced probabilities summing to " << sum;
    throw std::domain_error(msg.str());
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    for (double& p : probs) p /= sum;
  }
  return MixedStrategy(Unchecked{}, std::move(probs));
}

bool MixedStrategy::is_interior(double floor) const {
  for (double p : probs_) {
    if (p <= floor) return false;
  }
  return true;
}

double MixedStrategy::sup_distance(const MixedStrategy& other) const {
  return codipas::sup_distance(probs_, other.probs_);
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::domain_error("sup_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace codipas
