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

#include "dastable/mult_naturals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "dastable/errors.hpp"

namespace dastable {

namespace {

// (-1)^k / k! d^k/dz^k exp{-sigma z^alpha} at z = 1, via the Taylor series of
// exp{-sigma (1 + h)^alpha}: a_j = binom(alpha, j), n b_n = sum_j j (-sigma a_j) b_{n-j}.
long double prime_factor(double sigma, double alpha, Count k) {
  std::vector<long double> a(k + 1), b(k + 1);
  a[0] = 1.0L;
  for (Count j = 1; j <= k; ++j) a[j] = a[j - 1] * (alpha - static_cast<long double>(j - 1)) / j;
  b[0] = std::exp(-static_cast<long double>(sigma));
  for (Count n = 1; n <= k; ++n) {
    long double s = 0.0L;
    for (Count j = 1; j <= n; ++j) s += static_cast<long double>(j) * -sigma * a[j] * b[n - j];
    b[n] = s / static_cast<long double>(n);
  }
  return (k % 2 ? -1.0L : 1.0L) * b[k];
}

__extension__ using Wide = unsigned __int128;

Natural mul_mod(Natural a, Natural b, Natural m) noexcept {
  return static_cast<Natural>(static_cast<Wide>(a) * b % m);
}

Natural pow_mod(Natural base, Natural e, Natural m) noexcept {
  Natural r = 1;
  for (base %= m; e > 0; e >>= 1) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
  }
  return r;
}

}  // namespace

// Miller-Rabin with the first twelve prime bases, exact below 3.3e24.
bool is_prime(Natural n) noexcept {
  constexpr Natural kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (Natural p : kBases) {
    if (n % p == 0) return n == p;
  }
  Natural d = n - 1;
  int s = 0;
  for (; d % 2 == 0; d /= 2) ++s;
  for (Natural a : kBases) {
    Natural x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s && witness; ++r) {
      x = mul_mod(x, x, n);
      witness = x != n - 1;
    }
    if (witness) return false;
  }
  return true;
}

void PrimeBasis::validate() const {
  if (primes.size() != weights.size()) {
    throw ParameterError("prime basis needs one weight per prime");
  }
  std::set<Natural> seen;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw ParameterError(std::to_string(primes[i]) + " is not prime");
    if (!seen.insert(primes[i]).second) {
      throw ParameterError("prime " + std::to_string(primes[i]) + " is repeated");
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw ParameterError("prime weights must be positive and finite");
    }
  }
}

double PrimeBasis::total() const noexcept {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

FactorizationMeasure factorize(Natural n, const PrimeBasis& basis) {
  basis.validate();
  if (n == 0) throw DomainError("0 has no factorization");
  FactorizationMeasure f;
  for (Natural p : basis.primes) {
    Count k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) f.exponents[p] = k;
  }
  if (n != 1) throw DomainError("argument has a prime factor outside the basis");
  return f;
}

std::optional<Natural> try_compose(const FactorizationMeasure& f) {
  Natural n = 1;
  for (const auto& [p, k] : f.exponents) {
    for (Count i = 0; i < k; ++i) {
      if (n > std::numeric_limits<Natural>::max() / p) return std::nullopt;
      n *= p;
    }
  }
  return n;
}

Natural compose(const FactorizationMeasure& f) {
  const auto n = try_compose(f);
  if (!n) throw DomainError("product exceeds the 64-bit range");
  return *n;
}

FactorizationMeasure thin_factorization(const FactorizationMeasure& f, double t,
                                        RandomSource& rng) {
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("thinning parameter must lie in [0, 1]");
  FactorizationMeasure out;
  for (const auto& [p, k] : f.exponents) {
    const Count kept = rng.binomial(k, t);
    if (kept > 0) out.exponents[p] = kept;
  }
  return out;
}

Natural thin_natural(Natural n, double t, const PrimeBasis& basis, RandomSource& rng) {
  return compose(thin_factorization(factorize(n, basis), t, rng));
}

FactorizationMeasure sample_mult_stable(const PrimeBasis& basis, Exponent alpha,
                                        RandomSource& rng) {
  basis.validate();
  FactorizationMeasure f;
  for (std::size_t i = 0; i < basis.primes.size(); ++i) {
    const double mean = alpha.is_one() ? basis.weights[i]
                                       : std::pow(basis.weights[i], alpha.inverse()) *
                                             sample_positive_stable(alpha, rng);
    const Count k = rng.poisson(mean);
    if (k > 0) f.exponents[basis.primes[i]] = k;
  }
  return f;
}

double mult_stable_prob(const FactorizationMeasure& f, const PrimeBasis& basis, Exponent alpha) {
  basis.validate();
  long double prob = 1.0L;
  for (std::size_t i = 0; i < basis.primes.size(); ++i) {
    const auto it = f.exponents.find(basis.primes[i]);
    const Count k = it == f.exponents.end() ? 0 : it->second;
    if (k > kMaxDerivativeOrder) {
      throw ResourceError("exponent " + std::to_string(k) + " exceeds the derivative order cap " +
                          std::to_string(kMaxDerivativeOrder));
    }
    prob *= prime_factor(basis.weights[i], alpha.value(), k);
  }
  for (const auto& [p, k] : f.exponents) {
    if (k > 0 && std::find(basis.primes.begin(), basis.primes.end(), p) == basis.primes.end()) {
      throw DomainError("factorization uses a prime outside the basis");
    }
  }
  return static_cast<double>(prob);
}

double mult_stable_prob(Natural n, const PrimeBasis& basis, Exponent alpha) {
  return mult_stable_prob(factorize(n, basis), basis, alpha);
}

std::vector<WeightedOutcome> likely_outcomes(const PrimeBasis& basis, Exponent alpha,
                                             double min_probability) {
  basis.validate();
  if (!(min_probability > 0.0)) throw ParameterError("min_probability must be positive");
  // factors[i][k] = P{exponent of prime i is k}. A partial product bounds
  // every completion because the remaining factors are at most one.
  std::vector<std::vector<double>> factors(basis.primes.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (Count k = 0; k <= kMaxDerivativeOrder; ++k) {
      factors[i].push_back(static_cast<double>(prime_factor(basis.weights[i], alpha.value(), k)));
    }
  }
  std::vector<WeightedOutcome> out;
  std::vector<Count> exps(factors.size(), 0);
  const auto visit = [&](const auto& self, std::size_t i, double prob) -> void {
    if (prob < min_probability) return;
    if (i == factors.size()) {
      WeightedOutcome o;
      for (std::size_t j = 0; j < exps.size(); ++j) {
        if (exps[j] > 0) o.factorization.exponents[basis.primes[j]] = exps[j];
      }
      o.probability = prob;
      out.push_back(std::move(o));
      return;
    }
    for (Count k = 0; k <= kMaxDerivativeOrder; ++k) {
      exps[i] = k;
      self(self, i + 1, prob * factors[i][k]);
    }
    exps[i] = 0;
  };
  visit(visit, 0, 1.0);
  return out;
}

}  // namespace dastable
