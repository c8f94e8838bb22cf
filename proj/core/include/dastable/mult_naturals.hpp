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

#ifndef DASTABLE_MULT_NATURALS_HPP_
#define DASTABLE_MULT_NATURALS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"

namespace dastable {

using Natural = std::uint64_t;

// Finite set of distinct primes with positive spectral weights sigma_p.
struct PrimeBasis {
  std::vector<Natural> primes;
  std::vector<double> weights;

  // Throws ParameterError on composite or repeated entries, length mismatch,
  // or non-positive weights.
  void validate() const;
  double total() const noexcept;
};

bool is_prime(Natural n) noexcept;

// Exponent map prime -> multiplicity. Absent primes have exponent 0.
struct FactorizationMeasure {
  std::map<Natural, Count> exponents;

  friend bool operator==(const FactorizationMeasure&, const FactorizationMeasure&) = default;
};

// Throws DomainError if n = 0 or n has a prime factor outside the basis.
FactorizationMeasure factorize(Natural n, const PrimeBasis& basis);

// prod p^{k_p}. Throws DomainError when the product overflows 64 bits.
Natural compose(const FactorizationMeasure& f);
std::optional<Natural> try_compose(const FactorizationMeasure& f);

// Each unit prime factor kept independently with probability t.
FactorizationMeasure thin_factorization(const FactorizationMeasure& f, double t,
                                        RandomSource& rng);
// Pathwise the result divides n.
Natural thin_natural(Natural n, double t, const PrimeBasis& basis, RandomSource& rng);

// Exponent of p is Poisson(sigma_p^{1/alpha} zeta_alpha), independently over
// the basis; alpha = 1 gives Poisson(sigma_p). Returned in factorized form
// because heavy-tailed exponents routinely overflow 64-bit integers.
FactorizationMeasure sample_mult_stable(const PrimeBasis& basis, Exponent alpha,
                                        RandomSource& rng);

inline constexpr Count kMaxDerivativeOrder = 20;

// P{xi = n} = prod_p E[zeta_p^{k_p} e^{-zeta_p}] / k_p!, each factor from the
// Taylor coefficients of exp{-sigma_p z^alpha} at z = 1. Exponents above
// kMaxDerivativeOrder are a ResourceError.
double mult_stable_prob(const FactorizationMeasure& f, const PrimeBasis& basis, Exponent alpha);
double mult_stable_prob(Natural n, const PrimeBasis& basis, Exponent alpha);

struct WeightedOutcome {
  FactorizationMeasure factorization;
  double probability = 0.0;
};

// Every outcome with exponents <= kMaxDerivativeOrder and probability at
// least `min_probability`, ordered by exponent vector over the basis.
std::vector<WeightedOutcome> likely_outcomes(const PrimeBasis& basis, Exponent alpha,
                                             double min_probability);

}  // namespace dastable

#endif  // DASTABLE_MULT_NATURALS_HPP_
