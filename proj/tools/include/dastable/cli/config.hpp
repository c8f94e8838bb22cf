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

#ifndef DASTABLE_CLI_CONFIG_HPP_
#define DASTABLE_CLI_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dastable/das_process.hpp"
#include "dastable/das_vector.hpp"
#include "dastable/measure.hpp"
#include "dastable/mult_naturals.hpp"
#include "dastable/scalar_laws.hpp"
#include "dastable/stable_measure.hpp"

namespace dastable::cli {

// File names, relative to the --out directory.
struct OutputNames {
  std::string pattern = "pattern.csv";
  std::string counts = "counts.csv";
  std::string provenance = "provenance.json";
  std::string report = "report.json";
  std::optional<std::string> svg;
};

struct SvgStyle {
  int size = 800;             // square canvas side in pixels
  double point_radius = 1.5;  // pixels, for multiplicity one
  Count max_points = 2'000'000;
};

struct TestConfig {
  // stability | superposition | route-equivalence | gof | avoidance | mult-naturals
  std::string name;
  double t = 0.5;
  unsigned n = 2;  // superposition size
  std::optional<double> thinning_alpha;
  std::vector<std::string> routes;
  std::optional<QuerySet> set;
  // gof: sibuya | discrete-stable
  std::string law = "sibuya";
  double scale = 1.0;
  std::string stable_route = "compound-sibuya";
  Count max_cell = 50;
  double level = 0.01;
  std::size_t quadrature_grid = 200;
  double min_probability = 1e-4;
};

struct TableConfig {
  // discrete-stable-pmf | sibuya-pmf | pgf-grid | mult-naturals | avoidance | vector-pmf
  std::string kind;
  std::string file;
  std::vector<double> alphas;
  double scale = 1.0;
  Count n_max = 30;
  std::vector<double> s_grid;
  Natural max_n = 1000;
  std::vector<Count> box;
  std::size_t quadrature_grid = 200;
};

// Parsed experiment document. Exactly the keys listed in the schema are
// accepted; anything else is a ParameterError.
struct ExperimentConfig {
  std::optional<Exponent> alpha;
  std::optional<SpectralMeasure> spectral;
  std::optional<SimplexMeasure> simplex;
  std::optional<PrimeBasis> basis;
  std::uint64_t seed = 0;
  std::uint64_t draws = 1;
  unsigned workers = 1;
  std::string route = "cluster";
  std::optional<Rect> window;
  std::vector<QuerySet> bins;
  LePageConfig lepage;
  SamplingLimits limits;
  std::optional<TestConfig> test;
  std::vector<TableConfig> tables;
  OutputNames outputs;
  SvgStyle svg;

  Exponent require_alpha() const;
  DasProcessSpec process_spec() const;
};

ExperimentConfig parse_config(std::string_view text);

// The accepted document with defaults filled in, as stable JSON text.
std::string canonical_config(const ExperimentConfig& config);

}  // namespace dastable::cli

#endif  // DASTABLE_CLI_CONFIG_HPP_
