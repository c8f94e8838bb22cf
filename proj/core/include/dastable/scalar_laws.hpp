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

#ifndef DASTABLE_SCALAR_LAWS_HPP_
#define DASTABLE_SCALAR_LAWS_HPP_

#include <string_view>
#include <vector>

#include "dastable/random_source.hpp"

namespace dastable {

// Stability index alpha in (0, 1].
class Exponent {
 public:
  explicit Exponent(double alpha);

  double value() const noexcept { return alpha_; }
  bool is_one() const noexcept { return alpha_ == 1.0; }
  // 1 / alpha, the tail exponent of the LePage weights.
  double inverse() const noexcept { return 1.0 / alpha_; }

  friend bool operator==(Exponent, Exponent) = default;

 private:
  double alpha_;
};

// Discrete stable law with p.g.f. exp{-c (1 - s)^alpha}. A zero scale gives
// the point mass at 0.
struct DiscreteStableParams {
  DiscreteStableParams(double scale, Exponent alpha);

  double scale;
  Exponent alpha;
};

enum class DiscreteStableRoute {
  // Poisson with random mean c^{1/alpha} zeta_alpha.
  kPoissonMixture,
  // Sum of a Poisson(c) number of iid Sibuya(alpha) variables.
  kCompoundSibuya,
};

DiscreteStableRoute parse_discrete_stable_route(std::string_view label);
std::string_view to_string(DiscreteStableRoute route);

// t o n: Binomial(n, t) thinning of an integer.
Count thin_integer(Count n, double t, RandomSource& rng);

// q_n(alpha) = (1-alpha)(1-alpha/2)...(1-alpha/(n-1)) alpha/n for n >= 1.
double sibuya_pmf(Exponent alpha, Count n);

// P{N > n} = prod_{k=1}^n (1 - alpha/k) = Gamma(n+1-alpha) / (Gamma(1-alpha) n!).
double sibuya_survival(Exponent alpha, Count n);

// Sibuya(alpha) variate by inversion of sibuya_survival. Saturates at
// kCountCap; for alpha = 0.3 that happens with probability ~1e-6.
Count sample_sibuya(Exponent alpha, RandomSource& rng);

// Positive strictly stable variable with Laplace transform exp{-z^alpha}
// (Kanter's representation). Returns 1 when alpha = 1.
double sample_positive_stable(Exponent alpha, RandomSource& rng);

Count sample_discrete_stable(const DiscreteStableParams& params, DiscreteStableRoute route,
                             RandomSource& rng);

struct SeriesPmf {
  std::vector<double> pmf;  // p_0 .. p_{n_max}
  double tail_mass;         // 1 - sum(pmf), never renormalized away
};

// Power-series coefficients of exp{-c (1-s)^alpha} up to order n_max.
SeriesPmf discrete_stable_pmf_oracle(const DiscreteStableParams& params, std::size_t n_max);

double discrete_stable_pgf(const DiscreteStableParams& params, double s);

}  // namespace dastable

#endif  // DASTABLE_SCALAR_LAWS_HPP_
