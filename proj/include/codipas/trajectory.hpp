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

#ifndef CODIPAS_TRAJECTORY_HPP_
#define CODIPAS_TRAJECTORY_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "codipas/strategy.hpp"

namespace codipas {

// Time-indexed record of a learning episode or an ODE run. For stochastic
// episodes `times` holds integer step counts and payoff1/payoff2 the realized
// payoffs of the recorded step; for ODE runs `times` holds the ODE clock and
// the payoff columns carry the expected payoffs at the current profile.
struct Trajectory {
  std::vector<double> times;
  std::vector<MixedStrategy> f;
  std::vector<MixedStrategy> g;
  std::vector<std::vector<double>> u_hat1;
  std::vector<std::vector<double>> u_hat2;
  std::vector<double> payoff1;
  std::vector<double> payoff2;
  std::vector<double> exploitability;
  std::vector<double> dist_saddle_sup;
  std::vector<double> estimate_error;

  std::size_t size() const { return times.size(); }

  // Throws std::logic_error unless all series share the same length.
  void check_consistent() const;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Formats a double with 17 significant digits (shortest round-trippable
// decimal for IEEE-754 binary64).
std::string format_value(double value);

// CSV schema shared by simulation and ODE output:
//   t, f_0..f_{m-1}, g_0..g_{n-1}, uhat1_0.., uhat2_0..,
//   payoff1, payoff2, exploitability, dist_saddle_sup
// Header row, one row per recorded step, LF line endings, 17 significant
// digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);

}  // namespace codipas

#endif  // CODIPAS_TRAJECTORY_HPP_
