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

#include "codipas/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace codipas {

void Trajectory::check_consistent() const {
  const std::size_t n = times.size();
  const bool ok = f.size() == n && g.size() == n && u_hat1.size() == n && u_hat2.size() == n &&
                  payoff1.size() == n && payoff2.size() == n && exploitability.size() == n &&
                  dist_saddle_sup.size() == n && estimate_error.size() == n;
  if (!ok) throw std::logic_error("trajectory series lengths disagree");
}

std::string format_value(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  trajectory.check_consistent();
  if (trajectory.size() == 0) throw std::logic_error("cannot write an empty trajectory");
  const int m = trajectory.f.front().size();
  const int n = trajectory.g.front().size();

  out << "t";
  for (int a = 0; a < m; ++a) out << ",f_" << a;
  for (int b = 0; b < n; ++b) out << ",g_" << b;
  for (int a = 0; a < m; ++a) out << ",uhat1_" << a;
  for (int b = 0; b < n; ++b) out << ",uhat2_" << b;
  out << ",payoff1,payoff2,exploitability,dist_saddle_sup\n";

  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    out << format_value(trajectory.times[i]);
    for (int a = 0; a < m; ++a) out << ',' << format_value(trajectory.f[i][a]);
    for (int b = 0; b < n; ++b) out << ',' << format_value(trajectory.g[i][b]);
    for (int a = 0; a < m; ++a) out << ',' << format_value(trajectory.u_hat1[i][static_cast<std::size_t>(a)]);
    for (int b = 0; b < n; ++b) out << ',' << format_value(trajectory.u_hat2[i][static_cast<std::size_t>(b)]);
    out << ',' << format_value(trajectory.payoff1[i]) << ',' << format_value(trajectory.payoff2[i])
        << ',' << format_value(trajectory.exploitability[i]) << ','
        << format_value(trajectory.dist_saddle_sup[i]) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_trajectory_csv(out, trajectory);
  out.flush();
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

}  // namespace codipas
