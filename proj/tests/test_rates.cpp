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

#include <cmath>

#include <doctest.h>

#include "codipas/rates.hpp"

using namespace codipas;

TEST_CASE("rate values") {
  const RateSchedule r1 = RateSchedule::r1();
  CHECK(r1(0) == 1.0);
  CHECK(r1(9) == doctest::Approx(0.1).epsilon(1e-15));

  const RateSchedule r4 = RateSchedule::r4(0.6, 1.0);
  CHECK(r4(0) == 1.0);
  CHECK(r4(99) == doctest::Approx(1.0 / std::pow(100.0, 0.6)).epsilon(1e-15));

  // R2 and R3 start at the first index where the log factor is finite.
  CHECK(RateSchedule::r2()(0) == doctest::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-15));
  CHECK(RateSchedule::r3()(0) ==
        doctest::Approx(1.0 / (std::sqrt(2.0) * std::pow(std::log(2.0), 2.0))).epsilon(1e-15));

  const RateSchedule scaled = RateSchedule::scaled(RateSchedule::r1(), 0.25);
  CHECK(scaled(0) == 0.25);
  CHECK(scaled(3) == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("rate construction guards") {
  CHECK_THROWS_AS(RateSchedule::r4(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(RateSchedule::r4(1.0001, 1.0), std::domain_error);
  CHECK_THROWS_AS(RateSchedule::r4(0.8, 0.0), std::domain_error);
  CHECK_THROWS_AS(RateSchedule::scaled(RateSchedule::r1(), -0.1), std::domain_error);
  CHECK_NOTHROW(RateSchedule::scaled(RateSchedule::r1(), 0.0));  // frozen player
  CHECK_THROWS_AS(RateSchedule::r1()(-1), std::domain_error);
}

TEST_CASE("rates are positive and eventually decreasing") {
  for (const RateSchedule& schedule :
       {RateSchedule::r1(), RateSchedule::r2(), RateSchedule::r3(), RateSchedule::r4(0.75, 3.0)}) {
    double previous = schedule(0);
    CHECK(previous > 0.0);
    for (std::int64_t t = 1; t < 2000; ++t) {
      const double value = schedule(t);
      CHECK(value > 0.0);
      CHECK(value <= previous + 1e-15);
      previous = value;
    }
  }
}

TEST_CASE("divergent sums with square-summable tails") {
  const RateSchedule r1 = RateSchedule::r1();
  double sum = 0.0;
  for (std::int64_t t = 0; t < 1000000; ++t) sum += r1(t);
  CHECK(sum > 10.0);

  double tail_sq = 0.0;
  for (std::int64_t t = 1000; t < 1000000; ++t) tail_sq += r1(t) * r1(t);
  CHECK(tail_sq < 0.002);
}

TEST_CASE("structural timescale comparison") {
  const RateSchedule r1 = RateSchedule::r1();
  const RateSchedule r2 = RateSchedule::r2();
  const RateSchedule slow = RateSchedule::r4(0.6, 1.0);
  const RateSchedule fast = RateSchedule::r4(1.0, 5.0);

  CHECK(RateSchedule::ratio_vanishes(r2, r1));       // 1/log -> 0
  CHECK(!RateSchedule::ratio_vanishes(r1, r2));
  CHECK(RateSchedule::ratio_vanishes(r1, slow));     // t^-1 / t^-0.6 -> 0
  CHECK(!RateSchedule::ratio_vanishes(slow, r1));
  CHECK(RateSchedule::ratio_vanishes(fast, RateSchedule::r4(0.9, 2.0)));
  CHECK(!RateSchedule::ratio_vanishes(r1, r1));
  // Scale factors are ignored in the structural comparison.
  CHECK(!RateSchedule::ratio_vanishes(RateSchedule::scaled(r1, 0.01), r1));
}

TEST_CASE("schedule naming and equality") {
  CHECK(RateSchedule::r4(0.6, 7.0).name() == "R4(rho=0.6, c'=7)");
  CHECK(RateSchedule::scaled(RateSchedule::r2(), 0.5).name() == "scaled(R2, k=0.5)");
  CHECK(RateSchedule::r4(0.6, 7.0) == RateSchedule::r4(0.6, 7.0));
  CHECK(!(RateSchedule::r4(0.6, 7.0) == RateSchedule::r4(0.6, 8.0)));
  CHECK(RateSchedule::scaled(RateSchedule::r1(), 2.0) == RateSchedule::scaled(RateSchedule::r1(), 2.0));
}
