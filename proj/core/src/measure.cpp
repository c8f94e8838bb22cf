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

#include "dastable/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "dastable/errors.hpp"
#include "overloaded.hpp"

namespace dastable {

namespace {

using detail::Overloaded;

// Area of {(u, v) : 0 <= u <= x, 0 <= v <= y, u^2 + v^2 <= r^2} extended as
// an odd function in each argument.
double quadrant_disk_area(double x, double y, double r) {
  const double sx = x < 0.0 ? -1.0 : 1.0;
  const double sy = y < 0.0 ? -1.0 : 1.0;
  x = std::min(std::abs(x), r);
  y = std::min(std::abs(y), r);
  double area;
  if (x * x + y * y <= r * r) {
    area = x * y;
  } else {
    // Below u* the disk boundary lies above height y.
    const double u_star = std::sqrt(r * r - y * y);
    const auto primitive = [r](double u) {
      return 0.5 * (u * std::sqrt(std::max(0.0, r * r - u * u)) + r * r * std::asin(u / r));
    };
    area = y * u_star + primitive(x) - primitive(u_star);
  }
  return sx * sy * area;
}

double normal_interval_mass(double lo, double hi, double center, double scale) {
  const double k = 1.0 / (scale * std::sqrt(2.0));
  const double a = (lo - center) * k;
  const double b = (hi - center) * k;
  // erfc differences keep precision in the upper tail.
  if (a > 0.0) return 0.5 * (std::erfc(a) - std::erfc(b));
  if (b < 0.0) return 0.5 * (std::erfc(-b) - std::erfc(-a));
  return 0.5 * (std::erf(b) - std::erf(a));
}

const Rect& require_rect(const QuerySet& set) {
  if (const auto* r = std::get_if<Rect>(&set)) return *r;
  throw ParameterError("planar measure queried with a label set");
}

const LabelSet& require_labels(const QuerySet& set) {
  if (const auto* l = std::get_if<LabelSet>(&set)) return *l;
  throw ParameterError("atomic measure queried with a rectangle");
}

}  // namespace

void validate_window(const Rect& w) {
  if (!(std::isfinite(w.x0) && std::isfinite(w.x1) && std::isfinite(w.y0) &&
        std::isfinite(w.y1)) ||
      !(w.width() > 0.0) || !(w.height() > 0.0)) {
    throw ParameterError("window must have positive finite side lengths");
  }
}

void validate_phase_space(const PhaseSpace& space) {
  std::visit(Overloaded{
                 [](const FiniteSet& s) {
                   if (s.labels.empty()) throw ParameterError("finite phase space needs d >= 1");
                   std::set<std::string> seen(s.labels.begin(), s.labels.end());
                   if (seen.size() != s.labels.size()) {
                     throw ParameterError("finite phase space labels must be distinct");
                   }
                 },
                 [](const CountableSet&) {},
                 [](const PlanarWindow& w) { validate_window(w.window); },
             },
             space);
}

bool contains(const QuerySet& set, const Location& location) {
  return std::visit(
      Overloaded{
          [](const Rect& r, const Point2& p) { return r.contains(p); },
          [](const LabelSet& s, const Label& l) {
            return std::find(s.labels.begin(), s.labels.end(), l) != s.labels.end();
          },
          [](const auto&, const auto&) { return false; },
      },
      set, location);
}

ProbabilityMeasureSpec dirac(Label label) { return Atomic{{Atom{label, 1.0}}}; }

void validate_measure(const ProbabilityMeasureSpec& mu) {
  std::visit(Overloaded{
                 [](const Atomic& a) {
                   if (a.atoms.empty()) throw ParameterError("atomic measure has no atoms");
                   double total = 0.0;
                   std::set<Label> seen;
                   for (const Atom& atom : a.atoms) {
                     if (!(atom.weight > 0.0)) {
                       throw ParameterError("atom weights must be positive");
                     }
                     if (!seen.insert(atom.label).second) {
                       throw ParameterError("duplicate atom label");
                     }
                     total += atom.weight;
                   }
                   if (std::abs(total - 1.0) > 1e-9) {
                     throw ParameterError("atom weights must sum to 1");
                   }
                 },
                 [](const UniformOnBall& b) {
                   if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
                     throw ParameterError("ball radius must be positive");
                   }
                 },
                 [](const GaussianKernel& g) {
                   if (!(g.scale > 0.0) || !std::isfinite(g.scale)) {
                     throw ParameterError("Gaussian kernel scale must be positive");
                   }
                 },
                 [](const UniformOnWindow& w) { validate_window(w.window); },
             },
             mu);
}

bool is_planar(const ProbabilityMeasureSpec& mu) { return !std::holds_alternative<Atomic>(mu); }

bool is_dirac(const ProbabilityMeasureSpec& mu) {
  const auto* a = std::get_if<Atomic>(&mu);
  return a != nullptr && a->atoms.size() == 1;
}

ProbabilityMeasureSpec translated(const ProbabilityMeasureSpec& mu, Point2 d) {
  return std::visit(
      Overloaded{
          [](const Atomic& a) -> ProbabilityMeasureSpec { return a; },
          [d](const UniformOnBall& b) -> ProbabilityMeasureSpec {
            return UniformOnBall{{b.center.x + d.x, b.center.y + d.y}, b.radius};
          },
          [d](const GaussianKernel& g) -> ProbabilityMeasureSpec {
            return GaussianKernel{{g.center.x + d.x, g.center.y + d.y}, g.scale};
          },
          [d](const UniformOnWindow& w) -> ProbabilityMeasureSpec {
            const Rect& r = w.window;
            return UniformOnWindow{{r.x0 + d.x, r.y0 + d.y, r.x1 + d.x, r.y1 + d.y}};
          },
      },
      mu);
}

double measure_mass(const ProbabilityMeasureSpec& mu, const QuerySet& set) {
  return std::visit(
      Overloaded{
          [&](const Atomic& a) {
            const LabelSet& labels = require_labels(set);
            double total = 0.0;
            for (const Atom& atom : a.atoms) {
              if (std::find(labels.labels.begin(), labels.labels.end(), atom.label) !=
                  labels.labels.end()) {
                total += atom.weight;
              }
            }
            return total;
          },
          [&](const UniformOnBall& b) {
            const Rect& r = require_rect(set);
            const double x0 = r.x0 - b.center.x, x1 = r.x1 - b.center.x;
            const double y0 = r.y0 - b.center.y, y1 = r.y1 - b.center.y;
            const double area = quadrant_disk_area(x1, y1, b.radius) -
                                quadrant_disk_area(x0, y1, b.radius) -
                                quadrant_disk_area(x1, y0, b.radius) +
                                quadrant_disk_area(x0, y0, b.radius);
            return std::clamp(area / (M_PI * b.radius * b.radius), 0.0, 1.0);
          },
          [&](const GaussianKernel& g) {
            const Rect& r = require_rect(set);
            return normal_interval_mass(r.x0, r.x1, g.center.x, g.scale) *
                   normal_interval_mass(r.y0, r.y1, g.center.y, g.scale);
          },
          [&](const UniformOnWindow& w) {
            const Rect& r = require_rect(set);
            const double dx = std::min(r.x1, w.window.x1) - std::max(r.x0, w.window.x0);
            const double dy = std::min(r.y1, w.window.y1) - std::max(r.y0, w.window.y0);
            if (dx <= 0.0 || dy <= 0.0) return 0.0;
            return dx * dy / w.window.area();
          },
      },
      mu);
}

Location sample_point(const ProbabilityMeasureSpec& mu, RandomSource& rng) {
  return std::visit(
      Overloaded{
          [&](const Atomic& a) -> Location {
            if (a.atoms.size() == 1) return a.atoms.front().label;
            double u = rng.uniform();
            for (const Atom& atom : a.atoms) {
              if (u < atom.weight) return atom.label;
              u -= atom.weight;
            }
            return a.atoms.back().label;
          },
          [&](const UniformOnBall& b) -> Location {
            const double r = b.radius * std::sqrt(rng.uniform());
            const double phi = 2.0 * M_PI * rng.uniform();
            return Point2{b.center.x + r * std::cos(phi), b.center.y + r * std::sin(phi)};
          },
          [&](const GaussianKernel& g) -> Location {
            const double x = rng.normal();
            const double y = rng.normal();
            return Point2{g.center.x + g.scale * x, g.center.y + g.scale * y};
          },
          [&](const UniformOnWindow& w) -> Location {
            return Point2{rng.uniform(w.window.x0, w.window.x1),
                          rng.uniform(w.window.y0, w.window.y1)};
          },
      },
      mu);
}

void validate_spectral(const SpectralMeasure& sigma) {
  std::visit(Overloaded{
                 [](const FiniteSpectral& f) {
                   for (const SpectralComponent& c : f.components) {
                     if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
                       throw ParameterError("spectral weights must be positive and finite");
                     }
                     validate_measure(c.measure);
                   }
                 },
                 [](const TranslationFamily& t) {
                   validate_measure(t.kernel);
                   if (!is_planar(t.kernel)) {
                     throw ParameterError("translation family needs a planar kernel");
                   }
                   if (!(t.intensity >= 0.0) || !std::isfinite(t.intensity)) {
                     throw ParameterError("centre intensity must be finite and non-negative");
                   }
                   if (!(t.margin >= 0.0)) throw ParameterError("margin must be non-negative");
                   validate_window(t.window);
                 },
             },
             sigma);
}

double spectral_total(const SpectralMeasure& sigma) {
  return std::visit(Overloaded{
                        [](const FiniteSpectral& f) {
                          double total = 0.0;
                          for (const SpectralComponent& c : f.components) total += c.weight;
                          return total;
                        },
                        [](const TranslationFamily& t) {
                          return t.intensity * t.center_region().area();
                        },
                    },
                    sigma);
}

Regularity classify_regularity(const SpectralMeasure&) { return Regularity::kRegular; }

PointPattern::PointPattern(std::vector<PatternPoint> points) : points_(std::move(points)) {
  for (const PatternPoint& p : points_) {
    if (p.multiplicity == 0) throw ParameterError("pattern multiplicities must be >= 1");
  }
}

void PointPattern::add(Location location, Count multiplicity, std::optional<std::int64_t> cluster) {
  if (multiplicity == 0) return;
  points_.push_back(PatternPoint{location, multiplicity, cluster});
}

Count PointPattern::total() const noexcept {
  Count n = 0;
  for (const PatternPoint& p : points_) n = std::min(kCountCap, n + p.multiplicity);
  return n;
}

Count PointPattern::count(const QuerySet& set) const {
  Count n = 0;
  for (const PatternPoint& p : points_) {
    if (contains(set, p.location)) n = std::min(kCountCap, n + p.multiplicity);
  }
  return n;
}

PointPattern thin_pattern(const PointPattern& phi, double t, RandomSource& rng) {
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("thinning probability must lie in [0, 1]");
  if (t == 1.0) return phi;
  PointPattern out;
  if (t == 0.0) return out;
  for (const PatternPoint& p : phi.points()) {
    out.add(p.location, rng.binomial(p.multiplicity, t), p.cluster);
  }
  return out;
}

double WeightedMeasureSample::total_mass() const noexcept {
  double total = 0.0;
  for (const WeightedTerm& t : terms) total += t.weight;
  return total;
}

double WeightedMeasureSample::mass(const QuerySet& set) const {
  std::vector<double> per_measure(measures.size(), 0.0);
  for (const WeightedTerm& t : terms) per_measure.at(t.measure) += t.weight;
  double total = 0.0;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (per_measure[i] > 0.0) total += per_measure[i] * measure_mass(measures[i], set);
  }
  return total;
}

}  // namespace dastable
