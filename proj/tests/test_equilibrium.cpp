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
#include <optional>

#include <doctest.h>

#include "codipas/equilibrium.hpp"
#include "codipas/learners.hpp"
#include "test_util.hpp"

using namespace codipas;
using codipas::testing::random_game;

namespace {

GameSpec security_game() { return GameSpec({{5, 2}, {1, 3}}); }

// Independent 2x2 oracle: checks the four pure saddle candidates, then the
// interior indifference closed form.
struct Saddle2x2 {
  double f0, g0, value;
};
std::optional<Saddle2x2> closed_form_2x2(const GameSpec& spec) {
  const double a = spec.expected_entry(0, 0), b = spec.expected_entry(0, 1);
  const double c = spec.expected_entry(1, 0), d = spec.expected_entry(1, 1);
  // Pure saddle: entry both a row-min-of-max and column-max-of-min.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double v = spec.expected_entry(i, j);
      const bool row_best = v >= spec.expected_entry(1 - i, j);
      const bool col_best = v <= spec.expected_entry(i, 1 - j);
      if (row_best && col_best) {
        return Saddle2x2{i == 0 ? 1.0 : 0.0, j == 0 ? 1.0 : 0.0, v};
      }
    }
  }
  const double denom = a - b - c + d;
  if (denom == 0.0) return std::nullopt;
  const double f0 = (d - c) / denom;
  const double g0 = (d - b) / denom;
  if (f0 < 0 || f0 > 1 || g0 < 0 || g0 > 1) return std::nullopt;
  return Saddle2x2{f0, g0, (a * d - b * c) / denom};
}

void check_saddle_inequalities(const GameSpec& spec, const SaddleSolution& s) {
  const std::vector<double> row_payoffs = payoff_vector(spec, 1, s.g_star);
  for (double u : row_payoffs) CHECK(u <= s.value + kSaddleTolerance);
  for (int b = 0; b < spec.num_cols(); ++b) {
    double u = 0.0;
    for (int a = 0; a < spec.num_rows(); ++a) {
      u += spec.expected_entry(a, b) * s.f_star[a];
    }
    CHECK(u >= s.value - kSaddleTolerance);
  }
}

}  // namespace

TEST_CASE("saddle of the security game") {
  const SaddleSolution s = solve_saddle(security_game());
  CHECK(s.f_star[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(s.f_star[1] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(s.g_star[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s.g_star[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(s.value == doctest::Approx(2.6).epsilon(1e-12));
  check_saddle_inequalities(security_game(), s);
  CHECK(exploitability(security_game(), s.f_star, s.g_star) < 1e-9);
}

TEST_CASE("saddle of matching pennies") {
  const SaddleSolution s = solve_saddle(GameSpec({{1, -1}, {-1, 1}}));
  CHECK(s.f_star[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.g_star[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dominant-row game resolves by the lexicographic tie-break") {
  const GameSpec spec({{2, 2}, {1, 1}});
  const SaddleSolution s = solve_saddle(spec);
  CHECK(s.f_star[0] == 1.0);
  CHECK(s.g_star[0] == 1.0);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));

  const auto oracle = closed_form_2x2(spec);
  REQUIRE(oracle.has_value());
  CHECK(oracle->value == doctest::Approx(s.value).epsilon(1e-12));

  // Multiple equal-support saddles exist here; the reported one comes first.
  const auto all = solve_saddle_all(spec);
  CHECK(all.size() > 1);
  CHECK(all.front().f_star == s.f_star);
  CHECK(all.front().g_star == s.g_star);
  for (const SaddleSolution& candidate : all) check_saddle_inequalities(spec, candidate);
}

TEST_CASE("degenerate and edge-shaped games") {
  const SaddleSolution one = solve_saddle(GameSpec(std::vector<std::vector<double>>{{7}}));
  CHECK(one.value == 7.0);
  CHECK(one.f_star[0] == 1.0);

  const SaddleSolution flat = solve_saddle(GameSpec({{1, 1}, {1, 1}}));
  CHECK(flat.value == doctest::Approx(1.0).epsilon(1e-12));

  // 3x2 game whose natural optimum pairs a pure row with a mixed column.
  const GameSpec tall({{1, 0}, {0, 1}, {0.5, 0.5}});
  const SaddleSolution s = solve_saddle(tall);
  CHECK(s.value == doctest::Approx(0.5).epsilon(1e-9));
  check_saddle_inequalities(tall, s);

  const std::vector<std::vector<double>> big(13, std::vector<double>(13, 0.0));
  CHECK_THROWS_AS(solve_saddle(GameSpec(big)), std::domain_error);
}

TEST_CASE("random games satisfy the saddle inequalities") {
  RandomSource rng(71);
  for (int i = 0; i < 200; ++i) {
    const int rows = 1 + static_cast<int>(rng.next_u64() % 4);
    const int cols = 1 + static_cast<int>(rng.next_u64() % 4);
    const GameSpec spec = random_game(rng, rows, cols);
    const SaddleSolution s = solve_saddle(spec);
    check_saddle_inequalities(spec, s);
    CHECK(exploitability(spec, s.f_star, s.g_star) <= 2 * kSaddleTolerance);
  }
}

TEST_CASE("2x2 interior saddles match the indifference closed form") {
  RandomSource rng(73);
  int interior_checked = 0;
  while (interior_checked < 50) {
    const GameSpec spec = random_game(rng, 2, 2);
    const auto oracle = closed_form_2x2(spec);
    if (!oracle || oracle->f0 == 0.0 || oracle->f0 == 1.0) continue;
    const SaddleSolution s = solve_saddle(spec);
    CHECK(s.f_star[0] == doctest::Approx(oracle->f0).epsilon(1e-12));
    CHECK(s.g_star[0] == doctest::Approx(oracle->g0).epsilon(1e-12));
    CHECK(s.value == doctest::Approx(oracle->value).epsilon(1e-12));
    ++interior_checked;
  }
}

TEST_CASE("logit equilibrium basics") {
  const GameSpec spec = security_game();

  const LogitEquilibrium flat = solve_logit(spec, 100.0);
  CHECK(flat.converged);
  CHECK(flat.f_eps.sup_distance(MixedStrategy::uniform(2)) < 0.01);
  CHECK(flat.g_eps.sup_distance(MixedStrategy::uniform(2)) < 0.01);

  const LogitEquilibrium pennies = solve_logit(GameSpec({{1, -1}, {-1, 1}}), 0.3);
  CHECK(pennies.f_eps.sup_distance(MixedStrategy::uniform(2)) < 1e-10);
  CHECK(pennies.g_eps.sup_distance(MixedStrategy::uniform(2)) < 1e-10);

  const SaddleSolution saddle = solve_saddle(spec);
  const LogitEquilibrium sharp = solve_logit(spec, 0.05);
  CHECK(sharp.converged);
  CHECK(std::max(sharp.f_eps.sup_distance(saddle.f_star),
                 sharp.g_eps.sup_distance(saddle.g_star)) < 0.05);

  // The returned pair is a mutual softmax fixed point within the residual.
  const MixedStrategy bf = softmax(payoff_vector(spec, 1, sharp.g_eps), 0.05);
  const MixedStrategy bg = softmax(payoff_vector(spec, 2, sharp.f_eps), 0.05);
  CHECK(sharp.f_eps.sup_distance(bf) <= sharp.residual + 1e-15);
  CHECK(sharp.g_eps.sup_distance(bg) <= sharp.residual + 1e-15);
  CHECK(sharp.f_eps.is_interior());
  CHECK(sharp.g_eps.is_interior());
}

TEST_CASE("logit residual history is non-increasing over 50-iteration windows") {
  struct Case {
    GameSpec spec;
    double epsilon;
  };
  const Case cases[] = {{security_game(), 1.0},
                        {security_game(), 0.1},
                        {security_game(), 0.05},
                        {GameSpec({{1, -1}, {-1, 1}}), 0.2},
                        {GameSpec({{2, 2}, {1, 1}}), 0.1}};
  for (const Case& c : cases) {
    const LogitEquilibrium result = solve_logit(c.spec, c.epsilon, 0.5, 1e-10, 1000000, true);
    CHECK(result.converged);
    const std::vector<double>& r = result.residual_history;
    for (std::size_t k = 0; k + 50 < r.size(); k += 7) {
      CHECK(r[k + 50] <= r[k] + 1e-15);
    }
  }
}

TEST_CASE("logit distance to the saddle shrinks with epsilon") {
  const GameSpec spec = security_game();
  const SaddleSolution saddle = solve_saddle(spec);
  double previous = 1e9;
  for (double eps : {1.0, 0.3, 0.1, 0.05, 0.01}) {
    const LogitEquilibrium logit = solve_logit(spec, eps);
    CHECK(logit.converged);
    const double distance = std::max(logit.f_eps.sup_distance(saddle.f_star),
                                     logit.g_eps.sup_distance(saddle.g_star));
    CHECK(distance <= previous + 1e-12);
    previous = distance;
  }
}

TEST_CASE("logit solver guards and budget exhaustion") {
  const GameSpec spec = security_game();
  CHECK_THROWS_AS(solve_logit(spec, 0.0), std::domain_error);
  CHECK_THROWS_AS(solve_logit(spec, 0.1, 1.5), std::domain_error);
  CHECK_THROWS_AS(solve_logit(spec, 0.1, 0.5, 0.0), std::domain_error);

  const LogitEquilibrium truncated = solve_logit(spec, 0.05, 0.5, 1e-10, 10);
  CHECK(!truncated.converged);
  CHECK(truncated.iterations == 10);
  CHECK(truncated.residual > 1e-10);
}

TEST_CASE("is_epsilon_saddle") {
  const GameSpec spec = security_game();
  const SaddleSolution s = solve_saddle(spec);
  CHECK(is_epsilon_saddle(spec, s.f_star, s.g_star, 1e-9));
  CHECK(!is_epsilon_saddle(spec, MixedStrategy::uniform(2), MixedStrategy::uniform(2), 0.5));
  CHECK_THROWS_AS(is_epsilon_saddle(spec, s.f_star, s.g_star, -0.1), std::domain_error);

  // Zero slack at an exactly representable saddle point.
  const GameSpec pennies({{1, -1}, {-1, 1}});
  CHECK(is_epsilon_saddle(pennies, MixedStrategy::uniform(2), MixedStrategy::uniform(2), 0.0));
}
