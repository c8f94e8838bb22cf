// Copyright 2026 The dastable Authors
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

#ifndef DASTABLE_RANDOM_SOURCE_HPP_
#define DASTABLE_RANDOM_SOURCE_HPP_

#include <cstdint>
#include <random>

namespace dastable {

// Point counts. Heavy-tailed laws (Sibuya, discrete stable with alpha < 1)
// occasionally produce values beyond any representable integer; every sampler
// saturates at kCountCap instead of overflowing.
using Count = std::uint64_t;
inline constexpr Count kCountCap = Count{1} << 62;

// Mixes a 64-bit value (SplitMix64 finalizer). Used to derive independent
// stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

// Deterministic pseudo-random stream. Same seed gives the same draw sequence
// on a given standard library build.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

  // Stream number `index` of the family rooted at `master`. Streams with
  // distinct indices are used for independent workers or repetitions.
  static RandomSource stream(std::uint64_t master, std::uint64_t index) {
    return RandomSource(mix_seed(master ^ mix_seed(index + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  double exponential();
  double normal();

  // Poisson(mean). Means above 1e15 fall back to the rounded normal
  // approximation; the result saturates at kCountCap.
  Count poisson(double mean);

  // Poisson(mean) conditioned on being positive.
  Count zero_truncated_poisson(double mean);

  // Binomial(n, p); pathwise result <= n.
  Count binomial(Count n, double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dastable

#endif  // DASTABLE_RANDOM_SOURCE_HPP_
