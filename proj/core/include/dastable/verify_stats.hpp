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

#ifndef DASTABLE_VERIFY_STATS_HPP_
#define DASTABLE_VERIFY_STATS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "dastable/measure.hpp"
#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"

namespace dastable {

// Monte Carlo estimate of a mean with its standard error.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t draws = 0;

  // |value - target| <= k * std_error + slack.
  bool within(double target, double k = 3.0, double slack = 0.0) const;
};

// Streaming mean/variance (Welford). merge() is associative and commutative
// up to floating-point rounding, so fixed partitions give fixed results.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  // Unbiased sample variance (0 for fewer than two values).
  double variance() const noexcept;
  McEstimate estimate() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

using CellKey = std::vector<std::int64_t>;

// Count histogram over integer-vector cells.
class Histogram {
 public:
  void add(const CellKey& key, std::uint64_t n = 1);
  void add(std::int64_t value, std::uint64_t n = 1) { add(CellKey{value}, n); }
  void merge(const Histogram& other);

  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t at(const CellKey& key) const;
  const std::map<CellKey, std::uint64_t>& cells() const noexcept { return cells_; }

 private:
  std::map<CellKey, std::uint64_t> cells_;
  std::uint64_t total_ = 0;
};

// Histogram of counts with values clamped into a tail cell at `cap`.
CellKey count_key(std::span<const Count> counts, Count cap = Count{1} << 40);

struct TestReport {
  std::string method;
  std::vector<std::string> routes;
  double statistic = 0.0;
  long dof = 0;
  double p_value = 1.0;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;

  bool passes(double level = 0.01) const noexcept { return p_value > level; }
};

// Upper tail probability of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

// Two-sample chi-square on histograms over shared cells. Cells whose expected
// count (under the pooled law) is below 5 in either sample are merged into a
// single tail bucket. Throws InsufficientDataError if fewer than two cells
// remain.
TestReport chi_square_two_sample(const Histogram& a, const Histogram& b);

// Goodness of fit of observed counts to cell probabilities. The last cell is
// typically a tail bucket; probabilities must sum to 1. Low-expectation cells
// are merged as above.
TestReport chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> probabilities);

// Pearson test of independence on a two-way table histogram (keys of length 2).
TestReport chi_square_independence(const Histogram& joint);

// Two-sample Kolmogorov-Smirnov with the asymptotic Kolmogorov p-value.
TestReport ks_two_sample(std::vector<double> a, std::vector<double> b);

// Mean and SE of s^{x_i}. Throws InsufficientDataError on an empty sample.
McEstimate empirical_pgf(std::span<const Count> samples, double s);

// Mean and SE of exp(-z x_i).
McEstimate empirical_laplace(std::span<const double> samples, double z);

// Chi-square GOF of positive integer samples against Sibuya(alpha) on cells
// {1, ..., max_cell} plus a tail bucket weighted by the survival function.
TestReport gof_sibuya(std::span<const Count> samples, Exponent alpha, Count max_cell = 50);

struct VoidTracePoint {
  std::uint64_t draws = 0;
  double frequency = 0.0;
  double std_error = 0.0;
};

// Running mean of the void indicator 1{Phi(B) = 0} along a realization
// stream, recorded every `stride` realizations (and at the end).
std::vector<VoidTracePoint> running_void_frequency(std::span<const PointPattern> stream,
                                                   const QuerySet& set,
                                                   std::uint64_t stride = 1);

// Void-indicator variant for count streams (count on B per realization).
std::vector<VoidTracePoint> running_void_frequency(std::span<const Count> counts,
                                                   std::uint64_t stride = 1);

// Runs `draws` iterations split into `workers` contiguous blocks, each with
// its own stream RandomSource::stream(master_seed, worker). Accumulators are
// merged in worker order, so the result depends only on (seed, draws,
// workers).
template <class Acc, class Body>
Acc run_partitioned(std::uint64_t draws, unsigned workers, std::uint64_t master_seed, Body body) {
  if (workers == 0) workers = 1;
  std::vector<Acc> partial(workers);
  const auto block = [&](unsigned w) {
    const std::uint64_t begin = draws * w / workers;
    const std::uint64_t end = draws * (w + 1) / workers;
    RandomSource rng = RandomSource::stream(master_seed, w);
    for (std::uint64_t i = begin; i < end; ++i) body(partial[w], rng);
  };
  if (workers == 1) {
    block(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(block, w);
    for (std::thread& t : threads) t.join();
  }
  Acc result = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) result.merge(partial[w]);
  return result;
}

}  // namespace dastable

#endif  // DASTABLE_VERIFY_STATS_HPP_
