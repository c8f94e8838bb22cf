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

#include "dastable/random_source.hpp"

#include <algorithm>
#include <cmath>

namespace dastable {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t RandomSource::below(std::uint64_t n) {
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(engine_);
}

double RandomSource::exponential() { return -std::log(uniform()); }

double RandomSource::normal() {
  // Box-Muller, one variate per call keeps the stream state trivial.
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  return r * std::cos(2.0 * M_PI * uniform());
}

Count RandomSource::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean > 1e15) {
    const double x = std::round(mean + std::sqrt(mean) * normal());
    if (x <= 0.0) return 0;
    if (x >= static_cast<double>(kCountCap)) return kCountCap;
    return static_cast<Count>(x);
  }
  std::poisson_distribution<long long> dist(mean);
  return std::min(static_cast<Count>(dist(engine_)), kCountCap);
}

Count RandomSource::zero_truncated_poisson(double mean) {
  if (mean > 1.0) {
    for (;;) {
      const Count k = poisson(mean);
      if (k > 0) return k;
    }
  }
  // Inversion on P{N = k | N > 0} = mean^k e^{-mean} / (k! (1 - e^{-mean})).
  const double target = uniform() * -std::expm1(-mean);
  double term = mean * std::exp(-mean);
  double cumulative = term;
  Count k = 1;
  while (cumulative < target && term > 0.0) {
    ++k;
    term *= mean / static_cast<double>(k);
    cumulative += term;
  }
  return k;
}

Count RandomSource::binomial(Count n, double p) {
  if (n == 0 || !(p > 0.0)) return 0;
  if (p >= 1.0) return n;
  if (n > (Count{1} << 53)) {
    const double nd = static_cast<double>(n);
    const double x = std::round(nd * p + std::sqrt(nd * p * (1.0 - p)) * normal());
    return static_cast<Count>(std::clamp(x, 0.0, nd));
  }
  std::binomial_distribution<long long> dist(static_cast<long long>(n), p);
  return static_cast<Count>(dist(engine_));
}

}  // namespace dastable
