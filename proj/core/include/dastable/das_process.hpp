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

#ifndef DASTABLE_DAS_PROCESS_HPP_
#define DASTABLE_DAS_PROCESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dastable/measure.hpp"
#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"
#include "dastable/stable_measure.hpp"
#include "dastable/verify_stats.hpp"

namespace dastable {

// Discrete alpha-stable point process given by its spectral measure.
struct DasProcessSpec {
  SpectralMeasure sigma;
  Exponent alpha{1.0};
  // Planar observation window; points outside are dropped from realizations.
  // Unset means the whole phase space is observed.
  std::optional<Rect> window;

  void validate() const;
};

enum class ProcessRoute {
  kCluster,  // Poisson centres, Sibuya daughter clusters (exact)
  kCox,      // Poisson process driven by a LePage stable measure
  kLePage,   // superposition of per-term Poisson processes
};

ProcessRoute parse_process_route(std::string_view label);
std::string_view to_string(ProcessRoute route);

struct MarkedRealization {
  PointPattern pattern;
  ProcessRoute route = ProcessRoute::kCluster;
  std::uint64_t seed = 0;
};

// Guard against materializing astronomically large heavy-tailed clusters as
// individual planar points.
struct SamplingLimits {
  Count max_points = 50'000'000;
};

// Sib(alpha, mu): Sibuya(alpha) many iid points from mu. Never empty.
PointPattern sample_sibuya_process(Exponent alpha, const ProbabilityMeasureSpec& mu,
                                   RandomSource& rng, const SamplingLimits& limits = {});

MarkedRealization sample_das_cluster(const DasProcessSpec& spec, RandomSource& rng,
                                     const SamplingLimits& limits = {});
MarkedRealization sample_das_cox(const DasProcessSpec& spec, const LePageConfig& cfg,
                                 RandomSource& rng, const SamplingLimits& limits = {});
// Finite spectral measures only; alpha = 1 reduces to the Poisson process.
MarkedRealization sample_das_lepage(const DasProcessSpec& spec, const LePageConfig& cfg,
                                    RandomSource& rng, const SamplingLimits& limits = {});

MarkedRealization sample_das(const DasProcessSpec& spec, ProcessRoute route,
                             const LePageConfig& cfg, RandomSource& rng,
                             const SamplingLimits& limits = {});

// Counts on disjoint bins for one realization of the given route. Same law
// as counting a materialized realization, but clusters are split over the
// bins multinomially instead of being located point by point.
std::vector<Count> sample_das_counts(const DasProcessSpec& spec, ProcessRoute route,
                                     std::span<const QuerySet> bins, const LePageConfig& cfg,
                                     RandomSource& rng);

// Function u with u = value_j on B_j and u = 1 elsewhere; values in [0, 1].
struct UnitStepFunction {
  std::vector<StepTerm> terms;
};

// G[u] = exp{-int <1-u, mu>^alpha sigma(dmu)}.
FunctionalValue das_pgfl(const DasProcessSpec& spec, const UnitStepFunction& u,
                         const QuadratureConfig& quad = {});

// P{Phi(B) = 0} = exp{-int mu(B)^alpha sigma(dmu)}.
FunctionalValue das_avoidance(const DasProcessSpec& spec, const QuerySet& set,
                              const QuadratureConfig& quad = {});

// lambda * int over centres outside window (+) margin of mu_x(window)^alpha dx:
// the intensity of clusters that would hit the window but are not simulated.
double neglected_hitting_intensity(const TranslationFamily& tf, Exponent alpha);

// Smallest margin (on a grid of kernel-scale/4 steps) whose neglected hitting
// intensity is below `budget`. Compact kernels get their support radius.
double suggest_margin(const TranslationFamily& tf, Exponent alpha, double budget = 1e-3);

struct StabilityOptions {
  ProcessRoute route = ProcessRoute::kCluster;
  LePageConfig lepage;
  // Exponent used for the thinning probabilities t^{1/a}, (1-t)^{1/a}.
  // Defaults to the process exponent; set it differently for power checks.
  std::optional<double> thinning_alpha;
  // Draws are split over this many threads, each on its own stream.
  unsigned workers = 1;
};

// The checks below take their partition seed from `rng`; results depend
// only on (rng state, draws, workers).

// Chi-square two-sample test between direct samples of the bin counts and
// thin(Phi', t^{1/alpha}) + thin(Phi'', (1-t)^{1/alpha}).
TestReport stability_check(const DasProcessSpec& spec, double t, std::span<const QuerySet> bins,
                           std::uint64_t draws, RandomSource& rng,
                           const StabilityOptions& options = {});

// n^{-1/alpha} o (Phi_1 + ... + Phi_n) against Phi.
TestReport superposition_fixed_point_check(const DasProcessSpec& spec, unsigned n,
                                           std::span<const QuerySet> bins, std::uint64_t draws,
                                           RandomSource& rng,
                                           const StabilityOptions& options = {});

// Two-sample test between count histograms of two routes.
TestReport route_equivalence_check(const DasProcessSpec& spec, ProcessRoute a, ProcessRoute b,
                                   std::span<const QuerySet> bins, std::uint64_t draws,
                                   RandomSource& rng, const LePageConfig& cfg = {},
                                   unsigned workers = 1);

}  // namespace dastable

#endif  // DASTABLE_DAS_PROCESS_HPP_
