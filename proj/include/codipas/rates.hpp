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

#ifndef CODIPAS_RATES_HPP_
#define CODIPAS_RATES_HPP_

#include <cstdint>
#include <memory>
#include <string>

namespace codipas {

// Deterministic step-size sequences. All families have divergent sums and
// square-summable tails:
//   R1: 1/(t+1)
//   R2: 1/((t+2)·ln(t+2))      (the log family, started at its first finite index)
//   R3: 1/(sqrt(t+2)·ln²(t+2))
//   R4: 1/(t+c')^rho with 1/2 < rho <= 1, c' > 0
//   scaled: k times another schedule (k >= 0; k = 0 freezes a player and is
//           flagged by the validator since it breaks the divergent-sum condition)
class RateSchedule {
 public:
  enum class Family { kR1, kR2, kR3, kR4, kScaled };

  static RateSchedule r1();
  static RateSchedule r2();
  static RateSchedule r3();
  static RateSchedule r4(double rho, double cprime);
  static RateSchedule scaled(RateSchedule base, double k);

  // The scheduled rate at step t >= 0.
  double operator()(std::int64_t t) const;

  Family family() const { return family_; }
  double rho() const { return rho_; }
  double cprime() const { return cprime_; }
  double scale_k() const { return k_; }
  const RateSchedule& base() const;

  std::string name() const;

  // True when lhs(t)/rhs(t) -> 0, judged structurally from the family
  // decay orders (scale factors are ignored).
  static bool ratio_vanishes(const RateSchedule& lhs, const RateSchedule& rhs);

  bool operator==(const RateSchedule& other) const;

 private:
  RateSchedule(Family family, double rho, double cprime, double k,
               std::shared_ptr<const RateSchedule> base)
      : family_(family), rho_(rho), cprime_(cprime), k_(k), base_(std::move(base)) {}

  // (power, log_power) such that rate(t) ~ t^-power * ln(t)^-log_power.
  std::pair<double, double> decay_order() const;

  Family family_;
  double rho_ = 0.0;
  double cprime_ = 0.0;
  double k_ = 1.0;
  std::shared_ptr<const RateSchedule> base_;
};

}  // namespace codipas

#endif  // CODIPAS_RATES_HPP_
