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

#include "dastable/scalar_laws.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "dastable/errors.hpp"

namespace dastable {

namespace {

// Below this value sample_sibuya searches sequentially with the running
// product; above it it brackets and bisects on the closed-form survival.
constexpr Count kSequentialSearchLimit = 64;

// Gamma functions evaluated in double; the default policy promotes to long
// double at about twenty times the cost.
using DoublePolicy =
    boost::math::policies::policy<boost::math::policies::promote_double<false>>;

}  // namespace

Exponent::Exponent(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("stability exponent must lie in (0, 1], got " + std::to_string(alpha));
  }
}

DiscreteStableParams::DiscreteStableParams(double c, Exponent a) : scale(c), alpha(a) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ParameterError("discrete stable scale must be finite and non-negative");
  }
}

DiscreteStableRoute parse_discrete_stable_route(std::string_view label) {
  if (label == "poisson-mixture") return DiscreteStableRoute::kPoissonMixture;
  if (label == "compound-sibuya") return DiscreteStableRoute::kCompoundSibuya;
  throw ParameterError("unknown discrete stable route '" + std::string(label) + "'");
}

std::string_view to_string(DiscreteStableRoute route) {
  switch (route) {
    case DiscreteStableRoute::kPoissonMixture:
      return "poisson-mixture";
    case DiscreteStableRoute::kCompoundSibuya:
      return "compound-sibuya";
  }
  return "?";
}

Count thin_integer(Count n, double t, RandomSource& rng) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ParameterError("thinning probability must lie in [0, 1]");
  }
  return rng.binomial(n, t);
}

double sibuya_survival(Exponent alpha, Count n) {
  if (n == 0) return 1.0;
  if (alpha.is_one()) return 0.0;
  const double a = alpha.value();
  // Gamma(n+1-a) / Gamma(n+1) without cancellation between two large lgammas.
  const double ratio =
      boost::math::tgamma_delta_ratio(static_cast<double>(n) + 1.0 - a, a, DoublePolicy());
  return ratio / boost::math::tgamma(1.0 - a, DoublePolicy());
}

double sibuya_pmf(Exponent alpha, Count n) {
  if (n == 0) throw DomainError("Sibuya distribution has support {1, 2, ...}");
  return alpha.value() / static_cast<double>(n) * sibuya_survival(alpha, n - 1);
}

Count sample_sibuya(Exponent alpha, RandomSource& rng) {
  if (alpha.is_one()) return 1;
  const double a = alpha.value();
  // N = min{n : P{N > n} <= U}.
  const double u = rng.uniform();
  double survival = 1.0;
  for (Count n = 1; n <= kSequentialSearchLimit; ++n) {
    survival *= 1.0 - a / static_cast<double>(n);
    if (survival <= u) return n;
  }
  // Bracket around the asymptotic inverse of
  // P{N > n} ~ (n + (1-a)/2)^{-a} / Gamma(1-a), then bisect on the exact survival.
  const double guess = std::pow(u * boost::math::tgamma(1.0 - a, DoublePolicy()), -1.0 / a) - 0.5 * (1.0 - a);
  if (!(guess < static_cast<double>(kCountCap))) return kCountCap;
  const Count start = std::max(kSequentialSearchLimit + 1, static_cast<Count>(std::ceil(guess)));
  Count lo = start - 1;  // survival(lo) > u once bracketed
  Count hi = start;      // survival(hi) <= u once bracketed
  Count step = 1;
  if (sibuya_survival(alpha, hi) > u) {
    do {
      lo = hi;
      if (hi >= kCountCap - step) return kCountCap;
      hi += step;
      step *= 2;
    } while (sibuya_survival(alpha, hi) > u);
  } else {
    while (lo > kSequentialSearchLimit && sibuya_survival(alpha, lo) <= u) {
      hi = lo;
      lo = hi - std::min(step, hi - kSequentialSearchLimit);
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    const Count mid = lo + (hi - lo) / 2;
    if (sibuya_survival(alpha, mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double sample_positive_stable(Exponent alpha, RandomSource& rng) {
  if (alpha.is_one()) return 1.0;
  const double a = alpha.value();
  const double u = M_PI * rng.uniform();
  const double e = rng.exponential();
  // Zolotarev's function A(u) = [sin(a u)^a sin((1-a) u)^(1-a) / sin u]^(1/(1-a)).
  const double log_a = (a * std::log(std::sin(a * u)) +
                        (1.0 - a) * std::log(std::sin((1.0 - a) * u)) - std::log(std::sin(u))) /
                       (1.0 - a);
  return std::exp((1.0 - a) / a * (log_a - std::log(e)));
}

Count sample_discrete_stable(const DiscreteStableParams& params, DiscreteStableRoute route,
                             RandomSource& rng) {
  if (params.scale == 0.0) return 0;
  switch (route) {
    case DiscreteStableRoute::kPoissonMixture: {
      const double mean = std::pow(params.scale, params.alpha.inverse()) *
                          sample_positive_stable(params.alpha, rng);
      return rng.poisson(mean);
    }
    case DiscreteStableRoute::kCompoundSibuya: {
      const Count summands = rng.poisson(params.scale);
      Count total = 0;
      for (Count i = 0; i < summands; ++i) {
        const Count x = sample_sibuya(params.alpha, rng);
        total = (x >= kCountCap - total) ? kCountCap : total + x;
      }
      return total;
    }
  }
  throw ParameterError("unknown discrete stable route");
}

SeriesPmf discrete_stable_pmf_oracle(const DiscreteStableParams& params, std::size_t n_max) {
  const long double a = params.alpha.value();
  const long double c = params.scale;
  // -c (1-s)^a = -c + sum_{k>=1} c q_k(a) s^k with q_k > 0.
  std::vector<long double> coeff(n_max + 1, 0.0L);
  long double q = a;
  for (std::size_t k = 1; k <= n_max; ++k) {
    if (k > 1) q *= (static_cast<long double>(k) - 1.0L - a) / static_cast<long double>(k);
    coeff[k] = c * q;
  }
  // p = exp(f): p_0 = e^{f_0}, n p_n = sum_{k=1}^n k f_k p_{n-k}.
  std::vector<long double> p(n_max + 1, 0.0L);
  p[0] = std::exp(-c);
  for (std::size_t n = 1; n <= n_max; ++n) {
    long double acc = 0.0L;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += static_cast<long double>(k) * coeff[k] * p[n - k];
    }
    p[n] = acc / static_cast<long double>(n);
  }
  SeriesPmf out;
  out.pmf.reserve(n_max + 1);
  long double total = 0.0L;
  for (long double v : p) {
    out.pmf.push_back(static_cast<double>(v));
    total += v;
  }
  out.tail_mass = static_cast<double>(1.0L - total);
  return out;
}

double discrete_stable_pgf(const DiscreteStableParams& params, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("p.g.f. argument must lie in [0, 1]");
  return std::exp(-params.scale * std::pow(1.0 - s, params.alpha.value()));
}

}  // namespace dastable
