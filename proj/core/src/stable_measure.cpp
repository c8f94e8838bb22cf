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

#include "dastable/stable_measure.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dastable/errors.hpp"
#include "overloaded.hpp"

namespace dastable {

namespace {

bool rects_overlap(const Rect& a, const Rect& b) {
  return std::min(a.x1, b.x1) > std::max(a.x0, b.x0) &&
         std::min(a.y1, b.y1) > std::max(a.y0, b.y0);
}

double midpoint_integral(const TranslationFamily& tf, double alpha, const StepFunction& h,
                         std::size_t grid) {
  const Rect region = tf.center_region();
  const double dx = region.width() / static_cast<double>(grid);
  const double dy = region.height() / static_cast<double>(grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double cx = region.x0 + (static_cast<double>(i) + 0.5) * dx;
    for (std::size_t j = 0; j < grid; ++j) {
      const double cy = region.y0 + (static_cast<double>(j) + 0.5) * dy;
      const double f = h.integrate(tf.at({cx, cy}));
      if (f > 0.0) sum += std::pow(f, alpha);
    }
  }
  return tf.intensity * sum * dx * dy;
}

}  // namespace

void LePageConfig::validate() const {
  if (!(tolerance > 0.0)) throw ParameterError("LePage tolerance must be positive");
  if (max_terms < 1) throw ParameterError("LePage max_terms must be >= 1");
}

double lepage_scale(double total, Exponent alpha) {
  return std::pow(total / boost::math::tgamma(1.0 - alpha.value()), alpha.inverse());
}

double lepage_tail_bound(double b, Exponent alpha, std::size_t terms) {
  const double beta = alpha.inverse();
  const double k = static_cast<double>(terms);
  if (k + 1.0 <= beta) return std::numeric_limits<double>::infinity();
  // Gamma(K+1-beta) / Gamma(K+1).
  const double ratio = boost::math::tgamma_delta_ratio(k + 1.0 - beta, beta);
  return b * ratio * (k + 1.0) / (beta - 1.0);
}

LePageTruncation lepage_truncation(double total, Exponent alpha, const LePageConfig& cfg) {
  cfg.validate();
  if (alpha.is_one()) throw ParameterError("LePage series requires alpha < 1");
  const double b = lepage_scale(total, alpha);
  const auto bound = [&](std::size_t k) { return lepage_tail_bound(b, alpha, k); };
  const auto min_terms = static_cast<std::size_t>(std::ceil(alpha.inverse())) + 1;

  std::size_t lo = min_terms;
  if (lo >= cfg.max_terms) {
    return {cfg.max_terms, bound(cfg.max_terms), bound(cfg.max_terms) >= cfg.tolerance};
  }
  if (bound(lo) < cfg.tolerance) return {lo, bound(lo), false};
  // bound(lo) >= tolerance; grow until the tolerance is met or the cap hit.
  std::size_t hi = lo;
  while (bound(hi) >= cfg.tolerance) {
    lo = hi;
    if (hi >= cfg.max_terms) return {cfg.max_terms, bound(cfg.max_terms), true};
    hi = std::min(cfg.max_terms, 2 * hi);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (bound(mid) < cfg.tolerance) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, bound(hi), false};
}

void StepFunction::validate() const {
  std::set<Label> labels;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!(terms[i].value >= 0.0) || !std::isfinite(terms[i].value)) {
      throw ParameterError("step function values must be finite and non-negative");
    }
    if (const auto* ls = std::get_if<LabelSet>(&terms[i].set)) {
      for (const Label& l : ls->labels) {
        if (!labels.insert(l).second) throw ParameterError("step function sets overlap");
      }
    } else {
      const Rect& r = std::get<Rect>(terms[i].set);
      for (std::size_t j = 0; j < i; ++j) {
        if (const auto* other = std::get_if<Rect>(&terms[j].set); other && rects_overlap(r, *other)) {
          throw ParameterError("step function sets overlap");
        }
      }
    }
  }
}

double StepFunction::integrate(const ProbabilityMeasureSpec& mu) const {
  double total = 0.0;
  for (const StepTerm& t : terms) {
    if (t.value != 0.0) total += t.value * measure_mass(mu, t.set);
  }
  return total;
}

FunctionalValue spectral_functional(const SpectralMeasure& sigma, Exponent alpha,
                                    const StepFunction& h, const QuadratureConfig& quad) {
  h.validate();
  const double a = alpha.value();
  return std::visit(
      detail::Overloaded{
          [&](const FiniteSpectral& f) {
            double integral = 0.0;
            for (const SpectralComponent& c : f.components) {
              const double v = h.integrate(c.measure);
              if (v > 0.0) integral += c.weight * std::pow(v, a);
            }
            return FunctionalValue{std::exp(-integral), integral, 0.0, 0};
          },
          [&](const TranslationFamily& tf) {
            if (quad.grid < 2) throw ParameterError("quadrature grid must be >= 2");
            const double fine = midpoint_integral(tf, a, h, quad.grid);
            const double coarse = midpoint_integral(tf, a, h, quad.grid / 2);
            const double value = std::exp(-fine);
            const double error = value * std::abs(fine - coarse) / 3.0;
            if (quad.target_error && error > *quad.target_error) {
              throw PrecisionError("quadrature grid " + std::to_string(quad.grid) +
                                   " misses the requested precision (estimated error " +
                                   std::to_string(error) + ")");
            }
            return FunctionalValue{value, fine, error, quad.grid};
          },
      },
      sigma);
}

FunctionalValue stable_laplace_functional(const SpectralMeasure& sigma, Exponent alpha,
                                          const StepFunction& h, const QuadratureConfig& quad) {
  return spectral_functional(sigma, alpha, h, quad);
}

WeightedMeasureSample sample_stable_measure(const FiniteSpectral& sigma, Exponent alpha,
                                            const LePageConfig& cfg, RandomSource& rng) {
  if (alpha.is_one()) {
    throw ParameterError("alpha = 1 gives a deterministic measure; use deterministic_measure");
  }
  if (sigma.components.empty()) throw ParameterError("spectral measure is empty");
  validate_spectral(sigma);
  const double total = spectral_total(sigma);
  const double b = lepage_scale(total, alpha);
  const LePageTruncation trunc = lepage_truncation(total, alpha, cfg);

  std::vector<double> cumulative;
  cumulative.reserve(sigma.components.size());
  double acc = 0.0;
  WeightedMeasureSample out;
  for (const SpectralComponent& c : sigma.components) {
    acc += c.weight / total;
    cumulative.push_back(acc);
    out.measures.push_back(c.measure);
  }
  out.terms.reserve(trunc.terms);
  double gamma = 0.0;
  for (std::size_t k = 0; k < trunc.terms; ++k) {
    gamma += rng.exponential();
    std::size_t idx = 0;
    if (cumulative.size() > 1) {
      const double u = rng.uniform();
      idx = static_cast<std::size_t>(std::lower_bound(cumulative.begin(), cumulative.end(), u) -
                                     cumulative.begin());
      idx = std::min(idx, cumulative.size() - 1);
    }
    out.terms.push_back({b * std::pow(gamma, -alpha.inverse()), idx});
  }
  out.truncation_budget = trunc.tail_bound;
  return out;
}

WeightedMeasureSample deterministic_measure(const FiniteSpectral& sigma) {
  validate_spectral(sigma);
  WeightedMeasureSample out;
  for (std::size_t i = 0; i < sigma.components.size(); ++i) {
    out.measures.push_back(sigma.components[i].measure);
    out.terms.push_back({sigma.components[i].weight, i});
  }
  return out;
}

WeightedMeasureSample sample_degenerate_stable_measure(double c, const ProbabilityMeasureSpec& mu,
                                                       Exponent alpha, RandomSource& rng) {
  if (alpha.is_one()) throw ParameterError("degenerate stable measure requires alpha < 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("spectral weight must be positive");
  validate_measure(mu);
  WeightedMeasureSample out;
  out.measures.push_back(mu);
  out.terms.push_back({std::pow(c, alpha.inverse()) * sample_positive_stable(alpha, rng), 0});
  return out;
}

bool is_independently_scattered(const SpectralMeasure& sigma) {
  return std::visit(detail::Overloaded{
                        [](const FiniteSpectral& f) {
                          return std::all_of(f.components.begin(), f.components.end(),
                                             [](const SpectralComponent& c) {
                                               return is_dirac(c.measure);
                                             });
                        },
                        [](const TranslationFamily& tf) { return is_dirac(tf.kernel); },
                    },
                    sigma);
}

}  // namespace dastable
