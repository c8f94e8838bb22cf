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

#include "dastable/das_vector.hpp"

#include <cmath>
#include <string>

#include "dastable/das_process.hpp"
#include "dastable/errors.hpp"

namespace dastable {

namespace {

void validate_probability_vector(std::span<const double> p) {
  if (p.empty()) throw ParameterError("probability vector must be non-empty");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ParameterError("probability vector entries must be finite and non-negative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError("probability vector must sum to 1");
}

void validate_unit_vector(std::span<const double> z, std::size_t d) {
  if (z.size() != d) throw ParameterError("argument length does not match the dimension");
  for (double x : z) {
    if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("p.g.f. argument must lie in [0, 1]^d");
  }
}

std::vector<QuerySet> coordinate_bins(std::size_t d) {
  std::vector<QuerySet> bins;
  bins.reserve(d);
  for (std::size_t n = 0; n < d; ++n) {
    bins.emplace_back(LabelSet{{Label{static_cast<std::int64_t>(n)}}});
  }
  return bins;
}

}  // namespace

void SimplexMeasure::validate() const {
  if (components.empty()) throw ParameterError("simplex measure has no components");
  const std::size_t d = components.front().p.size();
  for (const SimplexComponent& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw ParameterError("simplex component weights must be positive and finite");
    }
    if (c.p.size() != d) throw ParameterError("simplex components differ in dimension");
    validate_probability_vector(c.p);
  }
}

std::size_t SimplexMeasure::dimension() const {
  return components.empty() ? 0 : components.front().p.size();
}

double SimplexMeasure::total() const noexcept {
  double c = 0.0;
  for (const SimplexComponent& s : components) c += s.weight;
  return c;
}

VectorRoute parse_vector_route(std::string_view label) {
  if (label == "cluster") return VectorRoute::kCluster;
  if (label == "cox") return VectorRoute::kCox;
  throw ParameterError("unknown vector route '" + std::string(label) + "'");
}

std::string_view to_string(VectorRoute route) {
  return route == VectorRoute::kCluster ? "cluster" : "cox";
}

FiniteSpectral to_spectral(const SimplexMeasure& sigma) {
  sigma.validate();
  FiniteSpectral out;
  for (const SimplexComponent& c : sigma.components) {
    Atomic atoms;
    for (std::size_t n = 0; n < c.p.size(); ++n) {
      if (c.p[n] > 0.0) atoms.atoms.push_back({Label{static_cast<std::int64_t>(n)}, c.p[n]});
    }
    out.components.push_back({c.weight, std::move(atoms)});
  }
  return out;
}

CountVector sample_multivariate_sibuya(Exponent alpha, std::span<const double> p,
                                       RandomSource& rng) {
  validate_probability_vector(p);
  CountVector out(p.size(), 0);
  Count remaining = sample_sibuya(alpha, rng);
  double remaining_p = 1.0;
  for (std::size_t n = 0; n < p.size() && remaining > 0; ++n) {
    const Count k = (n + 1 == p.size()) ? remaining
                                        : rng.binomial(remaining, std::min(1.0, p[n] / remaining_p));
    out[n] = k;
    remaining -= k;
    remaining_p -= p[n];
  }
  return out;
}

double multivariate_sibuya_pgf(Exponent alpha, std::span<const double> p,
                               std::span<const double> z) {
  validate_probability_vector(p);
  validate_unit_vector(z, p.size());
  double inner = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) inner += z[n] * p[n];
  return 1.0 - std::pow(std::max(0.0, 1.0 - inner), alpha.value());
}

double multivariate_sibuya_marginal_pgf(Exponent alpha, double p_n, double z) {
  if (!(p_n >= 0.0 && p_n <= 1.0)) throw ParameterError("p_n must lie in [0, 1]");
  if (!(z >= 0.0 && z <= 1.0)) throw ParameterError("z must lie in [0, 1]");
  return 1.0 - std::pow(p_n * (1.0 - z), alpha.value());
}

CountVector sample_das_vector(const SimplexMeasure& sigma, Exponent alpha, VectorRoute route,
                              RandomSource& rng, const LePageConfig& cfg) {
  const DasProcessSpec spec{to_spectral(sigma), alpha, std::nullopt};
  const std::vector<QuerySet> bins = coordinate_bins(sigma.dimension());
  return sample_das_counts(spec,
                           route == VectorRoute::kCluster ? ProcessRoute::kCluster
                                                          : ProcessRoute::kCox,
                           bins, cfg, rng);
}

double vector_pgf(const SimplexMeasure& sigma, Exponent alpha, std::span<const double> z) {
  sigma.validate();
  validate_unit_vector(z, sigma.dimension());
  double exponent = 0.0;
  for (const SimplexComponent& c : sigma.components) {
    double inner = 0.0;
    for (std::size_t n = 0; n < c.p.size(); ++n) inner += (1.0 - z[n]) * c.p[n];
    if (inner > 0.0) exponent += c.weight * std::pow(inner, alpha.value());
  }
  return std::exp(-exponent);
}

std::size_t PmfTable::flat_index(std::span<const Count> v) const {
  if (v.size() != box.size()) throw ParameterError("index length does not match the table");
  std::size_t flat = 0;
  for (std::size_t n = 0; n < box.size(); ++n) {
    if (v[n] > box[n]) throw ParameterError("index outside the table box");
    flat = flat * (box[n] + 1) + v[n];
  }
  return flat;
}

CountVector PmfTable::cell(std::size_t flat) const {
  CountVector v(box.size());
  for (std::size_t n = box.size(); n-- > 0;) {
    v[n] = flat % (box[n] + 1);
    flat /= box[n] + 1;
  }
  return v;
}

PmfTable vector_pmf_oracle(const SimplexMeasure& sigma, Exponent alpha,
                           std::span<const Count> box) {
  sigma.validate();
  const std::size_t d = sigma.dimension();
  if (box.size() != d) throw ParameterError("box length does not match the dimension");
  std::size_t cells = 1;
  for (Count m : box) {
    if (m >= kMaxPmfCells || cells * (m + 1) > kMaxPmfCells) {
      throw ResourceError("pmf box exceeds " + std::to_string(kMaxPmfCells) + " cells");
    }
    cells *= m + 1;
  }
  PmfTable table{std::vector<Count>(box.begin(), box.end()), std::vector<double>(cells, 0.0), 0.0};
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t n = d - 1; n-- > 0;) stride[n] = stride[n + 1] * (box[n + 1] + 1);

  // Cluster law f(u) = sum_i (c_i / C) q_{|u|} multinomial(u; p_i).
  const double total = sigma.total();
  std::vector<long double> cluster(cells, 0.0L);
  for (std::size_t flat = 1; flat < cells; ++flat) {
    const CountVector u = table.cell(flat);
    Count size = 0;
    for (Count x : u) size += x;
    const long double q = sibuya_pmf(alpha, size);
    if (q == 0.0L) continue;
    long double f = 0.0L;
    for (const SimplexComponent& c : sigma.components) {
      long double log_term = std::lgamma(static_cast<long double>(size) + 1.0L);
      bool possible = true;
      for (std::size_t n = 0; n < d; ++n) {
        if (u[n] == 0) continue;
        if (c.p[n] == 0.0) {
          possible = false;
          break;
        }
        log_term += u[n] * std::log(static_cast<long double>(c.p[n])) -
                    std::lgamma(static_cast<long double>(u[n]) + 1.0L);
      }
      if (possible) f += (c.weight / total) * std::exp(log_term);
    }
    cluster[flat] = q * f;
  }

  // Panjer-type recursion: v_n P(v) = C sum_{0 < u <= v} u_n f(u) P(v - u),
  // with n the first non-zero coordinate of v.
  std::vector<long double> p(cells, 0.0L);
  p[0] = std::exp(-static_cast<long double>(total));
  std::vector<Count> u(d);
  for (std::size_t flat = 1; flat < cells; ++flat) {
    const CountVector v = table.cell(flat);
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    std::fill(u.begin(), u.end(), 0);
    u[lead] = 1;
    long double sum = 0.0L;
    for (;;) {
      std::size_t uf = 0, rest = 0;
      for (std::size_t n = 0; n < d; ++n) {
        uf += u[n] * stride[n];
        rest += (v[n] - u[n]) * stride[n];
      }
      sum += static_cast<long double>(u[lead]) * cluster[uf] * p[rest];
      // Odometer over lead <= u <= v with u_lead >= 1.
      std::size_t n = d;
      while (n-- > 0) {
        if (u[n] < v[n]) {
          ++u[n];
          break;
        }
        u[n] = (n == lead) ? 1 : 0;
      }
      if (n == static_cast<std::size_t>(-1)) break;
    }
    p[flat] = static_cast<long double>(total) * sum / static_cast<long double>(v[lead]);
  }
  long double mass = 0.0L;
  for (std::size_t i = 0; i < cells; ++i) {
    table.probabilities[i] = static_cast<double>(p[i]);
    mass += p[i];
  }
  table.truncated_mass = static_cast<double>(1.0L - mass);
  return table;
}

}  // namespace dastable
