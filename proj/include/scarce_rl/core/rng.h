// Copyright 2026 The scarce-rl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCARCE_RL_CORE_RNG_H_
#define SCARCE_RL_CORE_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace scarce_rl {

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Repo-wide seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard. The distributions below are
// implemented here rather than taken from <random>, whose distribution
// algorithms are implementation-defined, so draws are identical on every
// platform and standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform in {0, ..., n - 1}; unbiased by rejection. n must be positive.
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via Box-Muller (one draw per call, no caching).
  double normal();

  // Child generator seeded from this generator's next draw.
  SeededRng fork() { return SeededRng(splitmix64(next_u64())); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace scarce_rl

#endif  // SCARCE_RL_CORE_RNG_H_
