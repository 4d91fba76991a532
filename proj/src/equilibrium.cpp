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

#include "codipas/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "codipas/learners.hpp"

namespace codipas {
namespace {

constexpr double kPivotTolerance = 1e-12;

// Gaussian elimination with partial pivoting. Returns nullopt when the
// system is numerically singular.
std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> a,
                                                std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < kPivotTolerance) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }
  return x;
}

// All subsets of {0..count-1} of the given size, in lexicographic order.
void enumerate_subsets(int count, int size, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> subset(static_cast<std::size_t>(size));
  std::function<void(int, int)> recurse = [&](int start, int depth) {
    if (depth == size) {
      visit(subset);
      return;
    }
    for (int i = start; i <= count - (size - depth); ++i) {
      subset[static_cast<std::size_t>(depth)] = i;
      recurse(i + 1, depth + 1);
    }
  };
  recurse(0, 0);
}

// Solves for the mixed strategy of the *column* player supported on s2 that
// equalizes the row player's payoff across s1, together with that common
// value. Unknowns: g over s2 and v. Equations: (Eg)_a = v for a in s1 plus
// sum(g) = 1; square because |s1| == |s2|.
std::optional<std::pair<std::vector<double>, double>> equalizing_mix(
    const std::vector<std::vector<double>>& expected, const std::vector<int>& s1,
    const std::vector<int>& s2) {
  const std::size_t k = s1.size();
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      a[i][j] = expected[static_cast<std::size_t>(s1[i])][static_cast<std::size_t>(s2[j])];
    }
    a[i][k] = -1.0;  // -v
  }
  for (std::size_t j = 0; j < k; ++j) a[k][j] = 1.0;
  b[k] = 1.0;
  auto solution = solve_linear(std::move(a), std::move(b));
  if (!solution) return std::nullopt;
  std::vector<double> mix(solution->begin(), solution->end() - 1);
  return std::make_pair(std::move(mix), solution->back());
}

struct Candidate {
  std::vector<double> f;
  std::vector<double> g;
  double value;
};

std::optional<Candidate> try_support_pair(const std::vector<std::vector<double>>& expected,
                                          int rows, int cols, const std::vector<int>& s1,
                                          const std::vector<int>& s2) {
  // g supported on s2 equalizing player 1 across s1.
  auto g_solution = equalizing_mix(expected, s1, s2);
  if (!g_solution) return std::nullopt;

  // f supported on s1 equalizing player 1's payoff across s2: use the
  // transposed matrix.
  std::vector<std::vector<double>> transposed(static_cast<std::size_t>(cols),
                                              std::vector<double>(static_cast<std::size_t>(rows)));
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      transposed[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
          expected[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
  }
  auto f_solution = equalizing_mix(transposed, s2, s1);
  if (!f_solution) return std::nullopt;

  const double tol = kSaddleTolerance;
  std::vector<double> g(static_cast<std::size_t>(cols), 0.0);
  for (std::size_t j = 0; j < s2.size(); ++j) {
    const double p = g_solution->first[j];
    if (p < -tol || p > 1.0 + tol) return std::nullopt;
    g[static_cast<std::size_t>(s2[j])] = std::clamp(p, 0.0, 1.0);
  }
  std::vector<double> f(static_cast<std::size_t>(rows), 0.0);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const double p = f_solution->first[i];
    if (p < -tol || p > 1.0 + tol) return std::nullopt;
    f[static_cast<std::size_t>(s1[i])] = std::clamp(p, 0.0, 1.0);
  }
  const double value = g_solution->second;
  if (std::abs(f_solution->second - value) > 1e-7) return std::nullopt;

  // Saddle verification against every pure deviation.
  for (int a = 0; a < rows; ++a) {
    double u = 0.0;
    for (int b = 0; b < cols; ++b) u += expected[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * g[static_cast<std::size_t>(b)];
    if (u > value + tol) return std::nullopt;
  }
  for (int b = 0; b < cols; ++b) {
    double u = 0.0;
    for (int a = 0; a < rows; ++a) u += expected[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * f[static_cast<std::size_t>(a)];
    if (u < value - tol) return std::nullopt;
  }
  return Candidate{std::move(f), std::move(g), value};
}

std::vector<SaddleSolution> enumerate_saddles(const GameSpec& spec, bool first_only) {
  const int rows = spec.num_rows();
  const int cols = spec.num_cols();
  if (rows > kMaxSupportEnumerationSize || cols > kMaxSupportEnumerationSize) {
    throw std::domain_error("solve_saddle supports games up to 12x12");
  }
  std::vector<std::vector<double>> expected(static_cast<std::size_t>(rows),
                                            std::vector<double>(static_cast<std::size_t>(cols)));
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      expected[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = spec.expected_entry(a, b);
    }
  }

  std::vector<SaddleSolution> found;
  // Equal-size supports suffice for finite zero-sum games; scanning sizes in
  // increasing order with lexicographic subsets makes the tie-break
  // deterministic (smallest support first).
  for (int size = 1; size <= std::min(rows, cols); ++size) {
    bool stop = false;
    enumerate_subsets(rows, size, [&](const std::vector<int>& s1) {
      if (stop) return;
      enumerate_subsets(cols, size, [&](const std::vector<int>& s2) {
        if (stop) return;
        auto candidate = try_support_pair(expected, rows, cols, s1, s2);
        if (!candidate) return;
        // Renormalize the clamped entries before the simplex check.
        double fs = 0.0, gs = 0.0;
        for (double p : candidate->f) fs += p;
        for (double p : candidate->g) gs += p;
        for (double& p : candidate->f) p /= fs;
        for (double& p : candidate->g) p /= gs;
        found.push_back(SaddleSolution{MixedStrategy::from_update(candidate->f),
                                       MixedStrategy::from_update(candidate->g), candidate->value,
                                       s1, s2});
        if (first_only) stop = true;
      });
    });
    if (stop) break;
  }
  if (found.empty()) {
    throw std::runtime_error(
        "internal error: support enumeration found no saddle point (violates the minimax theorem)");
  }
  return found;
}

}  // namespace

SaddleSolution solve_saddle(const GameSpec& spec) { return enumerate_saddles(spec, true).front(); }

std::vector<SaddleSolution> solve_saddle_all(const GameSpec& spec) {
  return enumerate_saddles(spec, false);
}

LogitEquilibrium solve_logit(const GameSpec& spec, double epsilon, double damping, double tol,
                             std::int64_t max_iters, bool record_history) {
  if (!(epsilon > 0.0)) throw std::domain_error("solve_logit requires epsilon > 0");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::domain_error("damping must be in (0, 1]");
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
  if (max_iters < 1) throw std::domain_error("max_iters must be >= 1");

  MixedStrategy f = MixedStrategy::uniform(spec.num_rows());
  MixedStrategy g = MixedStrategy::uniform(spec.num_cols());

  auto residual_at = [&](const MixedStrategy& fc, const MixedStrategy& gc,
                         MixedStrategy* f_target, MixedStrategy* g_target) {
    MixedStrategy bf = softmax(payoff_vector(spec, 1, gc), epsilon);
    MixedStrategy bg = softmax(payoff_vector(spec, 2, fc), epsilon);
    const double r = std::max(fc.sup_distance(bf), gc.sup_distance(bg));
    if (f_target) *f_target = std::move(bf);
    if (g_target) *g_target = std::move(bg);
    return r;
  };

  LogitEquilibrium result{f, g, epsilon, 0.0, 0, false, {}};
  double best_residual = residual_at(f, g, nullptr, nullptr);
  MixedStrategy best_f = f;
  MixedStrategy best_g = g;

  // Stall detection: halve the damping and restart from the best iterate
  // when no new best residual appears within the window. The window must
  // cover several rotation periods of the spiraling iterate, which stay in
  // the low hundreds of iterations for the damping range that matters.
  constexpr int kStallWindow = 2000;
  constexpr double kMinDamping = 1e-5;
  double d = damping;
  int since_best = 0;

  std::int64_t iter = 0;
  for (; iter < max_iters && best_residual > tol; ++iter) {
    MixedStrategy bf = f;
    MixedStrategy bg = g;
    residual_at(f, g, &bf, &bg);
    std::vector<double> fn(static_cast<std::size_t>(f.size()));
    std::vector<double> gn(static_cast<std::size_t>(g.size()));
    for (int a = 0; a < f.size(); ++a) fn[static_cast<std::size_t>(a)] = (1.0 - d) * f[a] + d * bf[a];
    for (int b = 0; b < g.size(); ++b) gn[static_cast<std::size_t>(b)] = (1.0 - d) * g[b] + d * bg[b];
    f = MixedStrategy::from_update(std::move(fn));
    g = MixedStrategy::from_update(std::move(gn));

    const double r = residual_at(f, g, nullptr, nullptr);
    if (r < best_residual) {
      best_residual = r;
      best_f = f;
      best_g = g;
      since_best = 0;
    } else if (++since_best >= kStallWindow && d > kMinDamping) {
      d = std::max(0.5 * d, kMinDamping);
      f = best_f;
      g = best_g;
      since_best = 0;
    }
    if (record_history) result.residual_history.push_back(best_residual);
  }

  result.f_eps = best_f;
  result.g_eps = best_g;
  result.residual = best_residual;
  result.iterations = iter;
  result.converged = best_residual <= tol;
  return result;
}

bool is_epsilon_saddle(const GameSpec& spec, const MixedStrategy& f, const MixedStrategy& g,
                       double slack) {
  if (slack < 0.0) throw std::domain_error("slack must be nonnegative");
  return exploitability(spec, f, g) <= slack;
}

}  // namespace codipas
