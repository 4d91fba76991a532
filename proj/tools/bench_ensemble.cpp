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

// Benchmark of the seed-ensemble runner: serial reference loop versus the
// OpenMP-parallel loop, verifying that both produce identical trajectories.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "codipas/harness.hpp"

using namespace codipas;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool identical(const std::vector<Trajectory>& a, const std::vector<Trajectory>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].times != b[s].times || a[s].payoff1 != b[s].payoff1 ||
        a[s].exploitability != b[s].exploitability)
      return false;
    for (std::size_t i = 0; i < a[s].size(); ++i) {
      if (!(a[s].f[i] == b[s].f[i]) || !(a[s].g[i] == b[s].g[i])) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int seeds = argc > 1 ? std::atoi(argv[1]) : 64;
  const std::int64_t horizon = argc > 2 ? std::atoll(argv[2]) : 20000;

  Experiment exp{GameSpec({{5, 2}, {1, 3}}, 0, NoiseModel::iid_uniform(-1, 1)),
                 LearnerConfig{LearnerScheme::kCrl1,
                               RateSchedule::scaled(RateSchedule::r4(1.0, 15.0), 0.4),
                               RateSchedule::r4(0.9, 2.0), 0.05, 0, 0, 0.0},
                 LearnerConfig{}, horizon, {}, 100, std::nullopt, std::nullopt, std::nullopt,
                 std::nullopt};
  exp.p2 = exp.p1;
  for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(seeds); ++s) exp.seeds.push_back(s);

  std::printf("ensemble benchmark: %d seeds x %lld steps (CRL1 self-play)\n", seeds,
              static_cast<long long>(horizon));

  auto t0 = Clock::now();
  const auto serial = run_all_seeds_serial(exp);
  const double serial_s = seconds_since(t0);
  std::printf("  serial reference: %8.3f s  (%.2f Msteps/s)\n", serial_s,
              seeds * static_cast<double>(horizon) / serial_s / 1e6);

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  for (int jobs = 1; jobs <= max_threads; jobs *= 2) {
    t0 = Clock::now();
    const auto parallel = run_all_seeds(exp, jobs);
    const double parallel_s = seconds_since(t0);
    const bool same = identical(serial, parallel);
    std::printf("  omp jobs=%-3d    : %8.3f s  (%.2f Msteps/s)  speedup %.2fx  results %s\n", jobs,
                parallel_s, seeds * static_cast<double>(horizon) / parallel_s / 1e6,
                serial_s / parallel_s, same ? "identical" : "DIFFER");
    if (!same) return 1;
  }
  return 0;
}
