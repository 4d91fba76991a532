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

#include "codipas/rates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace codipas {

RateSchedule RateSchedule::r1() { return RateSchedule(Family::kR1, 0, 0, 1, nullptr); }
RateSchedule RateSchedule::r2() { return RateSchedule(Family::kR2, 0, 0, 1, nullptr); }
RateSchedule RateSchedule::r3() { return RateSchedule(Family::kR3, 0, 0, 1, nullptr); }

RateSchedule RateSchedule::r4(double rho, double cprime) {
  if (!(rho > 0.5 && rho <= 1.0)) {
    throw std::domain_error("R4 requires 1/2 < rho <= 1");
  }
  if (!(cprime > 0.0)) {
    throw std::domain_error("R4 requires c' > 0");
  }
  return RateSchedule(Family::kR4, rho, cprime, 1, nullptr);
}

RateSchedule RateSchedule::scaled(RateSchedule base, double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw std::domain_error("scaled schedule requires finite k >= 0");
  }
  return RateSchedule(Family::kScaled, 0, 0, k,
                      std::make_shared<const RateSchedule>(std::move(base)));
}

const RateSchedule& RateSchedule::base() const {
  if (family_ != Family::kScaled) throw std::logic_error("base() only valid for scaled schedules");
  return *base_;
}

double RateSchedule::operator()(std::int64_t t) const {
  if (t < 0) throw std::domain_error("rate requested for negative step");
  const double td = static_cast<double>(t);
  switch (family_) {
    case Family::kR1:
      return 1.0 / (td + 1.0);
    case Family::kR2:
      return 1.0 / ((td + 2.0) * std::log(td + 2.0));
    case Family::kR3:
      return 1.0 / (std::sqrt(td + 2.0) * std::pow(std::log(td + 2.0), 2.0));
    case Family::kR4:
      return 1.0 / std::pow(td + cprime_, rho_);
    case Family::kScaled:
      return k_ * (*base_)(t);
  }
  throw std::logic_error("unknown rate family");
}

std::string RateSchedule::name() const {
  switch (family_) {
    case Family::kR1:
      return "R1";
    case Family::kR2:
      return "R2";
    case Family::kR3:
      return "R3";
    case Family::kR4: {
      std::ostringstream out;
      out << "R4(rho=" << rho_ << ", c'=" << cprime_ << ")";
      return out.str();
    }
    case Family::kScaled: {
      std::ostringstream out;
      out << "scaled(" << base_->name() << ", k=" << k_ << ")";
      return out.str();
    }
  }
  return "?";
}

std::pair<double, double> RateSchedule::decay_order() const {
  switch (family_) {
    case Family::kR1:
      return {1.0, 0.0};
    case Family::kR2:
      return {1.0, 1.0};
    case Family::kR3:
      return {0.5, 2.0};
    case Family::kR4:
      return {rho_, 0.0};
    case Family::kScaled:
      return base_->decay_order();
  }
  throw std::logic_error("unknown rate family");
}

bool RateSchedule::ratio_vanishes(const RateSchedule& lhs, const RateSchedule& rhs) {
  const auto [lp, lq] = lhs.decay_order();
  const auto [rp, rq] = rhs.decay_order();
  if (lp != rp) return lp > rp;
  return lq > rq;
}

bool RateSchedule::operator==(const RateSchedule& other) const {
  if (family_ != other.family_) return false;
  switch (family_) {
    case Family::kR4:
      return rho_ == other.rho_ && cprime_ == other.cprime_;
    case Family::kScaled:
      return k_ == other.k_ && *base_ == *other.base_;
    default:
      return true;
  }
}

}  // namespace codipas
