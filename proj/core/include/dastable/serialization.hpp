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

#ifndef DASTABLE_SERIALIZATION_HPP_
#define DASTABLE_SERIALIZATION_HPP_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "dastable/das_vector.hpp"
#include "dastable/measure.hpp"
#include "dastable/scalar_laws.hpp"
#include "dastable/verify_stats.hpp"

namespace dastable {

enum class PatternLayout {
  kPlanar,    // x,y,mult,cluster
  kDiscrete,  // label,mult,cluster
};

// Writes the CSV header and one row per stored point. An absent cluster tag
// is an empty field. Throws ParameterError when a point does not match the
// layout.
void write_pattern_csv(std::ostream& out, const PointPattern& pattern, PatternLayout layout);

// Shortest decimal form that round-trips the double.
std::string format_double(double x);

// JSON documents. Measure specs:
//   {"type": "atomic", "atoms": [{"label": 0, "weight": 0.5}, ...]}
//   {"type": "ball", "center": [x, y], "radius": r}
//   {"type": "gaussian", "center": [x, y], "scale": s}
//   {"type": "uniform_window", "window": [x0, y0, x1, y1]}
// Spectral measures:
//   {"type": "finite", "components": [{"weight": c, "measure": {...}}, ...]}
//   {"type": "translation", "kernel": {...}, "lambda": l,
//    "window": [x0, y0, x1, y1], "margin": m | "auto"}
// Unknown keys are rejected with ParameterError.
std::string measure_to_json(const ProbabilityMeasureSpec& mu);
ProbabilityMeasureSpec measure_from_json(std::string_view text);
std::string spectral_to_json(const SpectralMeasure& sigma);
// `auto_margin_alpha` resolves "margin": "auto" through suggest_margin.
SpectralMeasure spectral_from_json(std::string_view text,
                                   std::optional<Exponent> auto_margin_alpha = std::nullopt);

// {"measures": [...], "terms": [{"weight": w, "measure": i}], "truncation_budget": b}
std::string weighted_sample_to_json(const WeightedMeasureSample& sample);

// {"method", "routes", "statistic", "dof", "p_value", "draws", "seed", "passed"}
std::string report_to_json(const TestReport& report, double level = 0.01);

// draws,frequency,std_error
void write_void_trace_csv(std::ostream& out, std::span<const VoidTracePoint> trace);

// n0,...,n{d-1},probability
void write_pmf_table_csv(std::ostream& out, const PmfTable& table);

}  // namespace dastable

#endif  // DASTABLE_SERIALIZATION_HPP_
