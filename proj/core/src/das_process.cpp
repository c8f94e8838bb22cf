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

#include "dastable/das_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dastable/errors.hpp"
#include "overloaded.hpp"

namespace dastable {

namespace {

constexpr std::size_t kNoKey = std::numeric_limits<std::size_t>::max();

Count saturating_add(Count a, Count b) { return b >= kCountCap - std::min(a, kCountCap) ? kCountCap : a + b; }

// Receives batches of n iid points from mu. `key` identifies a reusable
// measure (spectral component index) or kNoKey for one-off measures.
class PointSink {
 public:
  virtual ~PointSink() = default;
  virtual void emit(std::size_t key, const ProbabilityMeasureSpec& mu, Count n,
                    std::int64_t tag) = 0;
};

class PatternSink final : public PointSink {
 public:
  PatternSink(std::optional<Rect> window, const SamplingLimits& limits, RandomSource& rng)
      : window_(window), limits_(limits), rng_(rng) {}

  void emit(std::size_t, const ProbabilityMeasureSpec& mu, Count n, std::int64_t tag) override {
    if (n == 0) return;
    if (const auto* atomic = std::get_if<Atomic>(&mu)) {
      // Multinomial split keeps huge clusters representable as multiplicities.
      Count remaining = n;
      double remaining_p = 1.0;
      for (std::size_t i = 0; i < atomic->atoms.size() && remaining > 0; ++i) {
        const Atom& atom = atomic->atoms[i];
        const Count k = (i + 1 == atomic->atoms.size())
                            ? remaining
                            : rng_.binomial(remaining, std::min(1.0, atom.weight / remaining_p));
        pattern_.add(atom.label, k, tag);
        remaining -= k;
        remaining_p -= atom.weight;
      }
      return;
    }
    generated_ = saturating_add(generated_, n);
    if (generated_ > limits_.max_points) {
      throw ResourceError("realization exceeds the planar point cap of " +
                          std::to_string(limits_.max_points) + " points");
    }
    for (Count i = 0; i < n; ++i) {
      const Location loc = sample_point(mu, rng_);
      if (window_ && !window_->contains(std::get<Point2>(loc))) continue;
      pattern_.add(loc, 1, tag);
    }
  }

  PointPattern take() { return std::move(pattern_); }

 private:
  std::optional<Rect> window_;
  SamplingLimits limits_;
  RandomSource& rng_;
  PointPattern pattern_;
  Count generated_ = 0;
};

class CountSink final : public PointSink {
 public:
  CountSink(std::span<const QuerySet> bins, std::optional<Rect> window, RandomSource& rng)
      : rng_(rng), counts_(bins.size(), 0) {
    bins_.reserve(bins.size());
    for (const QuerySet& b : bins) {
      const auto* r = std::get_if<Rect>(&b);
      if (window && r) {
        // Bins are observed through the window.
        Rect c{std::max(r->x0, window->x0), std::max(r->y0, window->y0),
               std::min(r->x1, window->x1), std::min(r->y1, window->y1)};
        if (c.x1 <= c.x0 || c.y1 <= c.y0) c = Rect{0.0, 0.0, 0.0, 0.0};
        bins_.push_back(c);
      } else {
        bins_.push_back(b);
      }
    }
  }

  void emit(std::size_t key, const ProbabilityMeasureSpec& mu, Count n, std::int64_t) override {
    if (n == 0) return;
    const std::vector<double>& masses = masses_for(key, mu);
    Count remaining = n;
    double remaining_p = 1.0;
    for (std::size_t j = 0; j < masses.size() && remaining > 0; ++j) {
      if (masses[j] <= 0.0) continue;
      const Count k = rng_.binomial(remaining, std::min(1.0, masses[j] / remaining_p));
      counts_[j] = saturating_add(counts_[j], k);
      remaining -= k;
      remaining_p -= masses[j];
    }
  }

  std::vector<Count> take() { return std::move(counts_); }

 private:
  const std::vector<double>& masses_for(std::size_t key, const ProbabilityMeasureSpec& mu) {
    if (key != kNoKey) {
      if (key >= cache_.size()) cache_.resize(key + 1);
      if (cache_[key].size() != bins_.size() || bins_.empty()) cache_[key] = compute(mu);
      return cache_[key];
    }
    scratch_ = compute(mu);
    return scratch_;
  }

  std::vector<double> compute(const ProbabilityMeasureSpec& mu) const {
    std::vector<double> m;
    m.reserve(bins_.size());
    for (const QuerySet& b : bins_) {
      const auto* r = std::get_if<Rect>(&b);
      m.push_back(r && r->area() == 0.0 ? 0.0 : measure_mass(mu, b));
    }
    return m;
  }

  RandomSource& rng_;
  std::vector<QuerySet> bins_;
  std::vector<Count> counts_;
  std::vector<std::vector<double>> cache_;
  std::vector<double> scratch_;
};

// Picks spectral components with probabilities c_i / c.
class ComponentPicker {
 public:
  explicit ComponentPicker(const FiniteSpectral& sigma) {
    const double total = spectral_total(sigma);
    double acc = 0.0;
    for (const SpectralComponent& c : sigma.components) {
      acc += c.weight / total;
      cumulative_.push_back(acc);
    }
  }
  std::size_t operator()(RandomSource& rng) const {
    if (cumulative_.size() == 1) return 0;
    const double u = rng.uniform();
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

Point2 uniform_in(const Rect& r, RandomSource& rng) {
  return {rng.uniform(r.x0, r.x1), rng.uniform(r.y0, r.y1)};
}

// Terms k > K of the LePage series that carry at least one Poisson point.
// Beyond gamma_K the arrivals form a unit-rate Poisson process; a term at
// arrival g is non-empty with probability 1 - exp(-b g^{-1/alpha}). That
// thinned process has finite total intensity and is simulated exactly by
// thinning the dominating intensity b g^{-1/alpha}. on_term receives the
// weight and a zero-truncated Poisson point count.
template <class OnTerm>
void sample_lepage_tail(double b, Exponent alpha, double gamma, RandomSource& rng, OnTerm&& on_term) {
  const double beta = alpha.inverse();
  if (b <= 0.0) return;
  double remaining = b * std::pow(gamma, 1.0 - beta) / (beta - 1.0);
  for (;;) {
    const double e = rng.exponential();
    if (e >= remaining) return;
    remaining -= e;
    const double g = std::pow(remaining * (beta - 1.0) / b, 1.0 / (1.0 - beta));
    const double w = b * std::pow(g, -beta);
    const double keep = -std::expm1(-w) / w;
    if (rng.uniform() < keep) on_term(w, rng.zero_truncated_poisson(w));
  }
}

// Stopping rule for the explicit series terms. With the exact tail any
// stopping time of the arrivals gives the same law; the tail costs about
// b g^{1-1/alpha} / (1/alpha - 1) candidates from arrival g, so stopping once
// a term weight drops below one bounds that by g / (1/alpha - 1). Without the
// exact tail the fixed truncation applies.
class TermSchedule {
 public:
  TermSchedule(double total, Exponent alpha, const LePageConfig& cfg)
      : exact_(cfg.exact_tail),
        terms_(exact_ ? cfg.max_terms : lepage_truncation(total, alpha, cfg).terms) {}

  bool more(std::size_t k, double last_weight) const noexcept {
    if (k >= terms_) return false;
    return !exact_ || k == 0 || last_weight >= 1.0;
  }

 private:
  bool exact_;
  std::size_t terms_;
};

void run_cluster(const DasProcessSpec& spec, RandomSource& rng, PointSink& sink) {
  std::int64_t tag = 0;
  std::visit(detail::Overloaded{
                 [&](const FiniteSpectral& f) {
                   for (std::size_t i = 0; i < f.components.size(); ++i) {
                     const SpectralComponent& c = f.components[i];
                     const Count clusters = rng.poisson(c.weight);
                     for (Count m = 0; m < clusters; ++m) {
                       sink.emit(i, c.measure, sample_sibuya(spec.alpha, rng), tag++);
                     }
                   }
                 },
                 [&](const TranslationFamily& tf) {
                   const Rect region = tf.center_region();
                   const Count clusters = rng.poisson(tf.intensity * region.area());
                   for (Count m = 0; m < clusters; ++m) {
                     const ProbabilityMeasureSpec mu = tf.at(uniform_in(region, rng));
                     sink.emit(kNoKey, mu, sample_sibuya(spec.alpha, rng), tag++);
                   }
                 },
             },
             spec.sigma);
}

// alpha = 1: Poisson process with intensity sum_i c_i mu_i.
void run_poisson(const FiniteSpectral& f, RandomSource& rng, PointSink& sink) {
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    sink.emit(i, f.components[i].measure, rng.poisson(f.components[i].weight),
              static_cast<std::int64_t>(i));
  }
}

void run_cox(const DasProcessSpec& spec, const LePageConfig& cfg, RandomSource& rng,
             PointSink& sink) {
  const double total = spectral_total(spec.sigma);
  if (total == 0.0) return;
  if (spec.alpha.is_one()) {
    if (const auto* f = std::get_if<FiniteSpectral>(&spec.sigma)) {
      run_poisson(*f, rng, sink);
    } else {
      run_cluster(spec, rng, sink);  // Sibuya(1) clusters are single points
    }
    return;
  }
  const double b = lepage_scale(total, spec.alpha);
  const TermSchedule schedule(total, spec.alpha, cfg);
  const double beta = spec.alpha.inverse();

  if (const auto* f = std::get_if<FiniteSpectral>(&spec.sigma)) {
    // zeta = sum_i W_i mu_i; given zeta the process is Poisson per component.
    const ComponentPicker pick(*f);
    std::vector<double> mass(f->components.size(), 0.0);
    double gamma = 0.0, w = 0.0;
    for (std::size_t k = 0; schedule.more(k, w); ++k) {
      gamma += rng.exponential();
      w = b * std::pow(gamma, -beta);
      mass[pick(rng)] += w;
    }
    if (cfg.exact_tail) {
      sample_lepage_tail(b, spec.alpha, gamma, rng, [&](double, Count n) {
        const std::size_t i = pick(rng);
        sink.emit(i, f->components[i].measure, n, static_cast<std::int64_t>(i));
      });
    }
    for (std::size_t i = 0; i < mass.size(); ++i) {
      sink.emit(i, f->components[i].measure, rng.poisson(mass[i]), static_cast<std::int64_t>(i));
    }
    return;
  }
  const auto& tf = std::get<TranslationFamily>(spec.sigma);
  const Rect region = tf.center_region();
  double gamma = 0.0, w = 0.0;
  std::int64_t k = 0;
  for (; schedule.more(static_cast<std::size_t>(k), w); ++k) {
    gamma += rng.exponential();
    w = b * std::pow(gamma, -beta);
    const ProbabilityMeasureSpec mu = tf.at(uniform_in(region, rng));
    sink.emit(kNoKey, mu, rng.poisson(w), k);
  }
  if (cfg.exact_tail) {
    sample_lepage_tail(b, spec.alpha, gamma, rng, [&](double, Count n) {
      sink.emit(kNoKey, tf.at(uniform_in(region, rng)), n, k++);
    });
  }
}

void run_lepage(const DasProcessSpec& spec, const LePageConfig& cfg, RandomSource& rng,
                PointSink& sink) {
  const auto* f = std::get_if<FiniteSpectral>(&spec.sigma);
  if (f == nullptr) {
    throw UnsupportedRouteError("the LePage route supports finite spectral measures only");
  }
  const double total = spectral_total(spec.sigma);
  if (total == 0.0) return;
  if (spec.alpha.is_one()) {
    run_poisson(*f, rng, sink);
    return;
  }
  const double b = lepage_scale(total, spec.alpha);
  const TermSchedule schedule(total, spec.alpha, cfg);
  const double beta = spec.alpha.inverse();
  const ComponentPicker pick(*f);
  double gamma = 0.0, w = 0.0;
  std::int64_t k = 0;
  for (; schedule.more(static_cast<std::size_t>(k), w); ++k) {
    gamma += rng.exponential();
    w = b * std::pow(gamma, -beta);
    const std::size_t i = pick(rng);
    const Count n = rng.poisson(w);
    if (n > 0) sink.emit(i, f->components[i].measure, n, k);
  }
  if (cfg.exact_tail) {
    sample_lepage_tail(b, spec.alpha, gamma, rng, [&](double, Count n) {
      const std::size_t i = pick(rng);
      sink.emit(i, f->components[i].measure, n, k++);
    });
  }
}

void run_route(const DasProcessSpec& spec, ProcessRoute route, const LePageConfig& cfg,
               RandomSource& rng, PointSink& sink) {
  switch (route) {
    case ProcessRoute::kCluster:
      run_cluster(spec, rng, sink);
      return;
    case ProcessRoute::kCox:
      run_cox(spec, cfg, rng, sink);
      return;
    case ProcessRoute::kLePage:
      run_lepage(spec, cfg, rng, sink);
      return;
  }
}

MarkedRealization realize(const DasProcessSpec& spec, ProcessRoute route, const LePageConfig& cfg,
                          RandomSource& rng, const SamplingLimits& limits) {
  spec.validate();
  cfg.validate();
  const std::uint64_t seed = rng.seed();
  PatternSink sink(spec.window, limits, rng);
  run_route(spec, route, cfg, rng, sink);
  return {sink.take(), route, seed};
}

double thinning_exponent(const DasProcessSpec& spec, const StabilityOptions& options) {
  const double a = options.thinning_alpha.value_or(spec.alpha.value());
  if (!(a > 0.0)) throw ParameterError("thinning exponent must be positive");
  return 1.0 / a;
}

// Simpson rule on [lo, hi] with an even number of panels.
template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
  if (hi <= lo) return 0.0;
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Distance beyond which a compact kernel centred at x cannot reach the window.
double support_reach(const ProbabilityMeasureSpec& kernel) {
  return std::visit(detail::Overloaded{
                        [](const UniformOnBall& b) {
                          return b.radius + std::max(std::abs(b.center.x), std::abs(b.center.y));
                        },
                        [](const UniformOnWindow& w) {
                          return std::max({std::abs(w.window.x0), std::abs(w.window.x1),
                                           std::abs(w.window.y0), std::abs(w.window.y1)});
                        },
                        [](const auto&) { return std::numeric_limits<double>::infinity(); },
                    },
                    kernel);
}

}  // namespace

void DasProcessSpec::validate() const {
  validate_spectral(sigma);
  if (window) validate_window(*window);
}

ProcessRoute parse_process_route(std::string_view label) {
  if (label == "cluster") return ProcessRoute::kCluster;
  if (label == "cox") return ProcessRoute::kCox;
  if (label == "lepage") return ProcessRoute::kLePage;
  throw ParameterError("unknown route '" + std::string(label) + "'");
}

std::string_view to_string(ProcessRoute route) {
  switch (route) {
    case ProcessRoute::kCluster:
      return "cluster";
    case ProcessRoute::kCox:
      return "cox";
    case ProcessRoute::kLePage:
      return "lepage";
  }
  return "?";
}

PointPattern sample_sibuya_process(Exponent alpha, const ProbabilityMeasureSpec& mu,
                                   RandomSource& rng, const SamplingLimits& limits) {
  validate_measure(mu);
  PatternSink sink(std::nullopt, limits, rng);
  sink.emit(kNoKey, mu, sample_sibuya(alpha, rng), 0);
  return sink.take();
}

MarkedRealization sample_das_cluster(const DasProcessSpec& spec, RandomSource& rng,
                                     const SamplingLimits& limits) {
  return realize(spec, ProcessRoute::kCluster, LePageConfig{}, rng, limits);
}

MarkedRealization sample_das_cox(const DasProcessSpec& spec, const LePageConfig& cfg,
                                 RandomSource& rng, const SamplingLimits& limits) {
  return realize(spec, ProcessRoute::kCox, cfg, rng, limits);
}

MarkedRealization sample_das_lepage(const DasProcessSpec& spec, const LePageConfig& cfg,
                                    RandomSource& rng, const SamplingLimits& limits) {
  return realize(spec, ProcessRoute::kLePage, cfg, rng, limits);
}

MarkedRealization sample_das(const DasProcessSpec& spec, ProcessRoute route,
                             const LePageConfig& cfg, RandomSource& rng,
                             const SamplingLimits& limits) {
  return realize(spec, route, cfg, rng, limits);
}

std::vector<Count> sample_das_counts(const DasProcessSpec& spec, ProcessRoute route,
                                     std::span<const QuerySet> bins, const LePageConfig& cfg,
                                     RandomSource& rng) {
  CountSink sink(bins, spec.window, rng);
  run_route(spec, route, cfg, rng, sink);
  return sink.take();
}

FunctionalValue das_pgfl(const DasProcessSpec& spec, const UnitStepFunction& u,
                         const QuadratureConfig& quad) {
  StepFunction h;
  for (const StepTerm& t : u.terms) {
    if (!(t.value >= 0.0 && t.value <= 1.0)) {
      throw ParameterError("p.g.fl. argument must take values in [0, 1]");
    }
    h.terms.push_back({t.set, 1.0 - t.value});
  }
  return spectral_functional(spec.sigma, spec.alpha, h, quad);
}

FunctionalValue das_avoidance(const DasProcessSpec& spec, const QuerySet& set,
                              const QuadratureConfig& quad) {
  return das_pgfl(spec, UnitStepFunction{{StepTerm{set, 0.0}}}, quad);
}

double neglected_hitting_intensity(const TranslationFamily& tf, Exponent alpha) {
  const double a = alpha.value();
  const Rect& w = tf.window;
  const double m = tf.margin;
  if (const auto* g = std::get_if<GaussianKernel>(&tf.kernel)) {
    // mu_x(W)^a factorizes over the axes; integrate each axis' tail.
    const double s = g->scale;
    const auto axis = [&](double lo, double hi, double offset) {
      const auto mass = [&](double x) {
        const double k = 1.0 / (s * std::sqrt(2.0));
        const double u = (hi - x - offset) * k;
        const double l = (lo - x - offset) * k;
        const double p = l > 0.0   ? 0.5 * (std::erfc(l) - std::erfc(u))
                         : u < 0.0 ? 0.5 * (std::erfc(-u) - std::erfc(-l))
                                   : 0.5 * (std::erf(u) - std::erf(l));
        return p > 0.0 ? std::pow(p, a) : 0.0;
      };
      const double reach = std::abs(offset) + 60.0 * s / std::sqrt(a);
      const double inner = simpson(mass, lo - m, hi + m, 4000);
      const double tail = simpson(mass, lo - m - reach, lo - m, 4000) +
                          simpson(mass, hi + m, hi + m + reach, 4000);
      return std::pair{inner, tail};
    };
    const auto [ix, tx] = axis(w.x0, w.x1, g->center.x);
    const auto [iy, ty] = axis(w.y0, w.y1, g->center.y);
    // full - inner = (Ix+Tx)(Iy+Ty) - Ix Iy.
    return tf.intensity * (tx * (iy + ty) + ix * ty);
  }
  const double reach = support_reach(tf.kernel);
  if (m >= reach) return 0.0;
  // Midpoint rule over the band between window (+) margin and window (+) reach.
  const Rect outer = w.dilated(reach);
  const Rect inner = w.dilated(m);
  constexpr int kGrid = 400;
  const double dx = outer.width() / kGrid;
  const double dy = outer.height() / kGrid;
  double sum = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Point2 c{outer.x0 + (i + 0.5) * dx, outer.y0 + (j + 0.5) * dy};
      if (inner.contains(c)) continue;
      const double p = measure_mass(tf.at(c), w);
      if (p > 0.0) sum += std::pow(p, a);
    }
  }
  return tf.intensity * sum * dx * dy;
}

double suggest_margin(const TranslationFamily& tf, Exponent alpha, double budget) {
  if (const auto* g = std::get_if<GaussianKernel>(&tf.kernel)) {
    TranslationFamily probe = tf;
    const double step = g->scale / 4.0;
    for (int i = 0; i <= 400; ++i) {
      probe.margin = i * step;
      if (neglected_hitting_intensity(probe, alpha) < budget) return probe.margin;
    }
    return probe.margin;
  }
  return support_reach(tf.kernel);
}

namespace {

// Two count histograms filled side by side, mergeable across workers.
struct HistogramPair {
  Histogram first, second;

  void merge(const HistogramPair& other) {
    first.merge(other.first);
    second.merge(other.second);
  }
};

// Runs `draws` iterations of `body` over `workers` streams rooted at a seed
// taken from `rng`, then compares the two histograms.
template <class Body>
TestReport two_sample_check(std::uint64_t draws, unsigned workers, RandomSource& rng, Body body) {
  const std::uint64_t master = rng.next_u64();
  const HistogramPair h = run_partitioned<HistogramPair>(draws, workers, master, body);
  TestReport r = chi_square_two_sample(h.first, h.second);
  r.seed = rng.seed();
  return r;
}

}  // namespace

TestReport stability_check(const DasProcessSpec& spec, double t, std::span<const QuerySet> bins,
                           std::uint64_t draws, RandomSource& rng,
                           const StabilityOptions& options) {
  if (!(t > 0.0 && t < 1.0)) throw ParameterError("stability check needs t in (0, 1)");
  spec.validate();
  const double inv = thinning_exponent(spec, options);
  const double p1 = std::pow(t, inv);
  const double p2 = std::pow(1.0 - t, inv);
  TestReport r = two_sample_check(draws, options.workers, rng, [&](HistogramPair& h, RandomSource& g) {
    h.first.add(count_key(sample_das_counts(spec, options.route, bins, options.lepage, g)));
    const auto c1 = sample_das_counts(spec, options.route, bins, options.lepage, g);
    const auto c2 = sample_das_counts(spec, options.route, bins, options.lepage, g);
    std::vector<Count> sum(bins.size());
    for (std::size_t j = 0; j < bins.size(); ++j) {
      sum[j] = saturating_add(g.binomial(c1[j], p1), g.binomial(c2[j], p2));
    }
    h.second.add(count_key(sum));
  });
  r.method = "thinning-stability";
  r.routes = {std::string(to_string(options.route))};
  return r;
}

TestReport superposition_fixed_point_check(const DasProcessSpec& spec, unsigned n,
                                           std::span<const QuerySet> bins, std::uint64_t draws,
                                           RandomSource& rng, const StabilityOptions& options) {
  if (n < 2) throw ParameterError("superposition check needs n >= 2");
  spec.validate();
  const double p = std::pow(static_cast<double>(n), -thinning_exponent(spec, options));
  TestReport r = two_sample_check(draws, options.workers, rng, [&](HistogramPair& h, RandomSource& g) {
    h.first.add(count_key(sample_das_counts(spec, options.route, bins, options.lepage, g)));
    std::vector<Count> sum(bins.size(), 0);
    for (unsigned m = 0; m < n; ++m) {
      const auto c = sample_das_counts(spec, options.route, bins, options.lepage, g);
      for (std::size_t j = 0; j < bins.size(); ++j) sum[j] = saturating_add(sum[j], g.binomial(c[j], p));
    }
    h.second.add(count_key(sum));
  });
  r.method = "superposition-fixed-point";
  r.routes = {std::string(to_string(options.route))};
  return r;
}

TestReport route_equivalence_check(const DasProcessSpec& spec, ProcessRoute a, ProcessRoute b,
                                   std::span<const QuerySet> bins, std::uint64_t draws,
                                   RandomSource& rng, const LePageConfig& cfg, unsigned workers) {
  spec.validate();
  TestReport r = two_sample_check(draws, workers, rng, [&](HistogramPair& h, RandomSource& g) {
    h.first.add(count_key(sample_das_counts(spec, a, bins, cfg, g)));
    h.second.add(count_key(sample_das_counts(spec, b, bins, cfg, g)));
  });
  r.method = "route-equivalence";
  r.routes = {std::string(to_string(a)), std::string(to_string(b))};
  return r;
}

}  // namespace dastable
