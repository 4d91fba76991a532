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

#ifndef CODIPAS_RNG_HPP_
#define CODIPAS_RNG_HPP_

#include <array>
#include <cstdint>

namespace codipas {

// Deterministic pseudo-random source: xoshiro256++ seeded through splitmix64.
// A (seed, stream) pair fully determines the sequence, so runs are replayable
// and per-(run, player) substreams stay independent of thread scheduling.
// Uniform doubles are produced from the top 53 bits, which keeps the mapping
// identical on every platform with IEEE-754 doubles.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double next_unit();

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::array<std::uint64_t, 4> state_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace codipas

#endif  // CODIPAS_RNG_HPP_
