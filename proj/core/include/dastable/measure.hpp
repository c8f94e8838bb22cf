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

#ifndef DASTABLE_MEASURE_HPP_
#define DASTABLE_MEASURE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dastable/random_source.hpp"

namespace dastable {

// ---------------------------------------------------------------------------
// Phase space

// Element of a finite or countable phase space, identified by index.
struct Label {
  std::int64_t id = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Axis-aligned closed rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double area() const noexcept { return width() * height(); }
  bool contains(Point2 p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  Rect dilated(double margin) const noexcept {
    return {x0 - margin, y0 - margin, x1 + margin, y1 + margin};
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Throws ParameterError unless both side lengths are positive and finite.
void validate_window(const Rect& window);

using Location = std::variant<Label, Point2>;

struct FiniteSet {
  std::vector<std::string> labels;  // d >= 1 distinct names; Label{i} is labels[i]
};

// Labels 0, 1, 2, ... named by a rendering prefix ("n0", "n1", ...).
struct CountableSet {
  std::string prefix = "n";
};

struct PlanarWindow {
  Rect window;
};

using PhaseSpace = std::variant<FiniteSet, CountableSet, PlanarWindow>;

void validate_phase_space(const PhaseSpace& space);

// ---------------------------------------------------------------------------
// Query sets

struct LabelSet {
  std::vector<Label> labels;
};

using QuerySet = std::variant<Rect, LabelSet>;

bool contains(const QuerySet& set, const Location& location);

// ---------------------------------------------------------------------------
// Probability measures

struct Atom {
  Label label;
  double weight = 0.0;
};

struct Atomic {
  std::vector<Atom> atoms;  // positive weights summing to 1
};

struct UniformOnBall {
  Point2 center;
  double radius = 1.0;
};

// Isotropic Gaussian with iid N(0, scale^2) coordinates.
struct GaussianKernel {
  Point2 center;
  double scale = 1.0;
};

struct UniformOnWindow {
  Rect window;
};

using ProbabilityMeasureSpec = std::variant<Atomic, UniformOnBall, GaussianKernel, UniformOnWindow>;

// Builds a single-atom (Dirac) measure.
ProbabilityMeasureSpec dirac(Label label);

// Throws ParameterError on non-positive atom weights, weights not summing to
// 1 (to 1e-9), duplicate atoms, or non-positive radius/scale.
void validate_measure(const ProbabilityMeasureSpec& mu);

bool is_planar(const ProbabilityMeasureSpec& mu);
bool is_dirac(const ProbabilityMeasureSpec& mu);

// Shift of a planar measure by (dx, dy). Atomic measures are returned as is.
ProbabilityMeasureSpec translated(const ProbabilityMeasureSpec& mu, Point2 offset);

// mu(B). Exact for atomic and uniform measures, error-function products for
// the Gaussian kernel on rectangles. Mixing a planar measure with a label
// set (or vice versa) is a ParameterError.
double measure_mass(const ProbabilityMeasureSpec& mu, const QuerySet& set);

Location sample_point(const ProbabilityMeasureSpec& mu, RandomSource& rng);

// ---------------------------------------------------------------------------
// Spectral measures

struct SpectralComponent {
  double weight = 0.0;  // c_i > 0
  ProbabilityMeasureSpec measure;
};

// sigma = sum_i c_i delta_{mu_i}.
struct FiniteSpectral {
  std::vector<SpectralComponent> components;
};

// sigma = image of (intensity * Lebesgue on window (+) margin) under
// x -> kernel shifted by x. The kernel is specified centred at the origin.
struct TranslationFamily {
  ProbabilityMeasureSpec kernel;
  double intensity = 1.0;
  Rect window;
  double margin = 0.0;

  Rect center_region() const noexcept { return window.dilated(margin); }
  ProbabilityMeasureSpec at(Point2 center) const { return translated(kernel, center); }
};

using SpectralMeasure = std::variant<FiniteSpectral, TranslationFamily>;

void validate_spectral(const SpectralMeasure& sigma);

// sigma(S). Always finite here: the translation family lives on a bounded
// centre region.
double spectral_total(const SpectralMeasure& sigma);

enum class Regularity { kRegular };

// Every representable spectral measure charges only probability measures and
// is therefore regular; singular processes (infinite cluster measures) cannot
// be expressed with these types.
Regularity classify_regularity(const SpectralMeasure& sigma);

// ---------------------------------------------------------------------------
// Point patterns

struct PatternPoint {
  Location location;
  Count multiplicity = 1;
  std::optional<std::int64_t> cluster;
};

// Finite counting measure stored as (location, multiplicity) pairs.
class PointPattern {
 public:
  PointPattern() = default;
  explicit PointPattern(std::vector<PatternPoint> points);

  void add(Location location, Count multiplicity = 1,
           std::optional<std::int64_t> cluster = std::nullopt);

  const std::vector<PatternPoint>& points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }

  // Total number of unit masses.
  Count total() const noexcept;
  // Phi(B).
  Count count(const QuerySet& set) const;

 private:
  std::vector<PatternPoint> points_;
};

// Independent t-thinning. Each unit mass is retained with probability t; the
// output never exceeds the input on any set, pathwise.
PointPattern thin_pattern(const PointPattern& phi, double t, RandomSource& rng);

// ---------------------------------------------------------------------------
// Random measure realizations

struct WeightedTerm {
  double weight = 0.0;
  std::size_t measure = 0;  // index into WeightedMeasureSample::measures
};

// Finite realization sum_k w_k eps_k of a random measure.
struct WeightedMeasureSample {
  std::vector<ProbabilityMeasureSpec> measures;
  std::vector<WeightedTerm> terms;
  // Expected mass of the neglected series tail (0 for exact samples).
  double truncation_budget = 0.0;

  double total_mass() const noexcept;
  double mass(const QuerySet& set) const;
};

}  // namespace dastable

#endif  // DASTABLE_MEASURE_HPP_
