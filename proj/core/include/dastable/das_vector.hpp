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

#ifndef DASTABLE_DAS_VECTOR_HPP_
#define DASTABLE_DAS_VECTOR_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dastable/measure.hpp"
#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"
#include "dastable/stable_measure.hpp"

namespace dastable {

// One atom c * delta_p of a spectral measure on the unit simplex.
struct SimplexComponent {
  double weight = 0.0;    // c > 0
  std::vector<double> p;  // probability vector of length d
};

// Finite spectral measure on the unit simplex of dimension d.
struct SimplexMeasure {
  std::vector<SimplexComponent> components;

  // Throws ParameterError on an empty list, mismatched lengths, non-positive
  // weights, or vectors off the simplex (tolerance 1e-9).
  void validate() const;
  std::size_t dimension() const;
  double total() const noexcept;
};

using CountVector = std::vector<Count>;

enum class VectorRoute {
  kCluster,  // Poisson many multivariate Sibuya summands
  kCox,      // Poisson coordinates given a LePage stable vector
};

VectorRoute parse_vector_route(std::string_view label);
std::string_view to_string(VectorRoute route);

// The same measure as a spectral measure over labels 0..d-1.
FiniteSpectral to_spectral(const SimplexMeasure& sigma);

// Sibuya(alpha) total split multinomially over p.
CountVector sample_multivariate_sibuya(Exponent alpha, std::span<const double> p,
                                       RandomSource& rng);

// E prod z_n^{Y_n} = 1 - (1 - <z, p>)^alpha.
double multivariate_sibuya_pgf(Exponent alpha, std::span<const double> p,
                               std::span<const double> z);

// Marginal p.g.f. of coordinate n: 1 - p_n^alpha (1 - z)^alpha.
double multivariate_sibuya_marginal_pgf(Exponent alpha, double p_n, double z);

CountVector sample_das_vector(const SimplexMeasure& sigma, Exponent alpha, VectorRoute route,
                              RandomSource& rng, const LePageConfig& cfg = {});

// exp{-sum_i c_i <1 - z, p_i>^alpha} for z in [0, 1]^d.
double vector_pgf(const SimplexMeasure& sigma, Exponent alpha, std::span<const double> z);

// Joint pmf on the box {0..box_0} x ... x {0..box_{d-1}}, row-major with the
// last coordinate fastest.
struct PmfTable {
  std::vector<Count> box;
  std::vector<double> probabilities;
  double truncated_mass = 0.0;  // 1 - sum(probabilities)

  std::size_t flat_index(std::span<const Count> v) const;
  double at(std::span<const Count> v) const { return probabilities[flat_index(v)]; }
  // Inverse of flat_index.
  CountVector cell(std::size_t flat) const;
};

inline constexpr std::size_t kMaxPmfCells = 1'000'000;

// Compound-Poisson recursion over the box. Cost is quadratic in the number of
// cells; more than kMaxPmfCells cells is a ResourceError.
PmfTable vector_pmf_oracle(const SimplexMeasure& sigma, Exponent alpha,
                           std::span<const Count> box);

}  // namespace dastable

#endif  // DASTABLE_DAS_VECTOR_HPP_
