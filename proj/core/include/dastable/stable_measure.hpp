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

#ifndef DASTABLE_STABLE_MEASURE_HPP_
#define DASTABLE_STABLE_MEASURE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "dastable/measure.hpp"
#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"

namespace dastable {

// Truncation control for the LePage series b sum_k gamma_k^{-1/alpha} eps_k.
struct LePageConfig {
  // Target bound on the expected mass of the neglected tail.
  double tolerance = 1e-4;
  std::size_t max_terms = 4096;
  // Point-process routes only: after the truncated terms, simulate the
  // (almost surely finitely many) remaining terms that contribute points,
  // so the realization is exact and the tolerance is not used. Random-measure
  // samplers ignore this flag because a measure tail is never exactly zero.
  bool exact_tail = true;

  void validate() const;
};

struct LePageTruncation {
  std::size_t terms = 0;
  // Upper bound on sum_{k > terms} E[b gamma_k^{-1/alpha}].
  double tail_bound = 0.0;
  bool capped = false;  // max_terms reached before the tolerance
};

// b = (c / Gamma(1 - alpha))^{1/alpha}.
double lepage_scale(double total, Exponent alpha);

// b Gamma(K+1-1/alpha)/Gamma(K+1) (K+1)/(1/alpha - 1). Infinite when
// K + 1 <= 1/alpha, where the tail expectation diverges.
double lepage_tail_bound(double b, Exponent alpha, std::size_t terms);

// Smallest K >= ceil(1/alpha)+1 with lepage_tail_bound < tolerance, capped
// at cfg.max_terms.
LePageTruncation lepage_truncation(double total, Exponent alpha, const LePageConfig& cfg);

// Non-negative step function sum_j value_j 1_{B_j} over disjoint query sets.
struct StepTerm {
  QuerySet set;
  double value = 0.0;
};

struct StepFunction {
  std::vector<StepTerm> terms;

  // Throws ParameterError on negative/non-finite values or overlapping sets.
  void validate() const;
  // <h, mu>.
  double integrate(const ProbabilityMeasureSpec& mu) const;
};

struct QuadratureConfig {
  std::size_t grid = 200;  // midpoint cells per axis over window (+) margin
  std::optional<double> target_error;
};

// exp{-integral} together with the quadrature error estimate (zero for
// finite spectral measures, where the value is exact).
struct FunctionalValue {
  double value = 1.0;
  double integral = 0.0;
  double quadrature_error = 0.0;  // absolute, on `value`
  std::size_t grid = 0;           // 0 when no quadrature was needed
};

// integral of f(mu)^alpha sigma(dmu), with f(mu) = <h, mu>. Finite spectral
// measures are summed exactly; translation families use the midpoint rule
// with a halved-grid Richardson error estimate. A target_error that is not
// met raises PrecisionError.
FunctionalValue spectral_functional(const SpectralMeasure& sigma, Exponent alpha,
                                    const StepFunction& h, const QuadratureConfig& quad = {});

// L[h] = E exp{-<h, zeta>} = exp{-int <h,mu>^alpha sigma(dmu)}.
FunctionalValue stable_laplace_functional(const SpectralMeasure& sigma, Exponent alpha,
                                          const StepFunction& h,
                                          const QuadratureConfig& quad = {});

// Truncated LePage realization. Requires alpha < 1 and a non-empty sigma.
WeightedMeasureSample sample_stable_measure(const FiniteSpectral& sigma, Exponent alpha,
                                            const LePageConfig& cfg, RandomSource& rng);

// alpha = 1: the non-random measure sum_i c_i mu_i.
WeightedMeasureSample deterministic_measure(const FiniteSpectral& sigma);

// sigma = c delta_mu: zeta = c^{1/alpha} zeta_alpha mu. Requires alpha < 1.
WeightedMeasureSample sample_degenerate_stable_measure(double c, const ProbabilityMeasureSpec& mu,
                                                       Exponent alpha, RandomSource& rng);

// True iff every spectral component is a Dirac measure.
bool is_independently_scattered(const SpectralMeasure& sigma);

}  // namespace dastable

#endif  // DASTABLE_STABLE_MEASURE_HPP_
