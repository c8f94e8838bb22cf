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

#include "dastable/verify_stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dastable/errors.hpp"

namespace dastable {

namespace {

constexpr double kMinExpected = 5.0;

// Kolmogorov distribution upper tail Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_sf(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

bool McEstimate::within(double target, double k, double slack) const {
  return std::abs(value - target) <= k * std_error + slack;
}

void MomentAccumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double MomentAccumulator::variance() const noexcept {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

McEstimate MomentAccumulator::estimate() const {
  if (n_ == 0) throw InsufficientDataError("no samples");
  return {mean_, std::sqrt(variance() / static_cast<double>(n_)), n_};
}

void Histogram::add(const CellKey& key, std::uint64_t n) {
  if (n == 0) return;
  cells_[key] += n;
  total_ += n;
}

void Histogram::merge(const Histogram& other) {
  for (const auto& [key, n] : other.cells_) add(key, n);
}

std::uint64_t Histogram::at(const CellKey& key) const {
  const auto it = cells_.find(key);
  return it == cells_.end() ? 0 : it->second;
}

CellKey count_key(std::span<const Count> counts, Count cap) {
  CellKey key;
  key.reserve(counts.size());
  for (Count c : counts) key.push_back(static_cast<std::int64_t>(std::min(c, cap)));
  return key;
}

double chi_square_sf(double statistic, double dof) {
  if (!(dof > 0.0)) return 1.0;
  if (!(statistic > 0.0)) return 1.0;
  if (!std::isfinite(statistic)) return 0.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

TestReport chi_square_two_sample(const Histogram& a, const Histogram& b) {
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  if (na == 0.0 || nb == 0.0) throw InsufficientDataError("two-sample test needs two non-empty samples");
  const double n = na + nb;

  struct Cell {
    double x = 0.0;
    double y = 0.0;
    double total() const { return x + y; }
  };
  std::map<CellKey, Cell> cells;
  for (const auto& [k, v] : a.cells()) cells[k].x = static_cast<double>(v);
  for (const auto& [k, v] : b.cells()) cells[k].y = static_cast<double>(v);

  const double min_share = std::min(na, nb) / n;
  std::vector<Cell> kept;
  Cell pooled;
  for (const auto& [key, cell] : cells) {
    if (cell.total() * min_share >= kMinExpected) {
      kept.push_back(cell);
    } else {
      pooled.x += cell.x;
      pooled.y += cell.y;
    }
  }
  if (pooled.total() > 0.0) {
    if (pooled.total() * min_share < kMinExpected && !kept.empty()) {
      auto smallest = std::min_element(kept.begin(), kept.end(), [](const Cell& l, const Cell& r) {
        return l.total() < r.total();
      });
      smallest->x += pooled.x;
      smallest->y += pooled.y;
    } else {
      kept.push_back(pooled);
    }
  }
  if (kept.size() < 2) {
    throw InsufficientDataError("fewer than two cells with expected count >= 5 after pooling");
  }
  const double ra = std::sqrt(nb / na);
  const double rb = std::sqrt(na / nb);
  double stat = 0.0;
  for (const Cell& c : kept) {
    const double d = c.x * ra - c.y * rb;
    stat += d * d / c.total();
  }
  TestReport r;
  r.method = "chi-square-two-sample";
  r.statistic = stat;
  r.dof = static_cast<long>(kept.size()) - 1;
  r.p_value = chi_square_sf(stat, static_cast<double>(r.dof));
  r.draws = a.total() + b.total();
  return r;
}

TestReport chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw ParameterError("observed and probability vectors differ in length");
  }
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (n == 0.0) throw InsufficientDataError("goodness of fit needs a non-empty sample");
  const double psum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(psum - 1.0) > 1e-9) throw ParameterError("cell probabilities must sum to 1");

  struct Cell {
    double observed = 0.0;
    double expected = 0.0;
  };
  std::vector<Cell> kept;
  Cell pooled;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const Cell c{static_cast<double>(observed[i]), n * probabilities[i]};
    if (c.expected >= kMinExpected) {
      kept.push_back(c);
    } else {
      pooled.observed += c.observed;
      pooled.expected += c.expected;
    }
  }
  if (pooled.expected > 0.0 || pooled.observed > 0.0) {
    if (pooled.expected < kMinExpected && !kept.empty()) {
      auto smallest = std::min_element(kept.begin(), kept.end(), [](const Cell& l, const Cell& r) {
        return l.expected < r.expected;
      });
      smallest->observed += pooled.observed;
      smallest->expected += pooled.expected;
    } else {
      kept.push_back(pooled);
    }
  }
  if (kept.size() < 2) {
    throw InsufficientDataError("fewer than two cells with expected count >= 5 after pooling");
  }
  double stat = 0.0;
  for (const Cell& c : kept) {
    if (c.expected == 0.0) {
      stat = c.observed > 0.0 ? std::numeric_limits<double>::infinity() : stat;
      continue;
    }
    const double d = c.observed - c.expected;
    stat += d * d / c.expected;
  }
  TestReport r;
  r.method = "chi-square-gof";
  r.statistic = stat;
  r.dof = static_cast<long>(kept.size()) - 1;
  r.p_value = chi_square_sf(stat, static_cast<double>(r.dof));
  r.draws = static_cast<std::uint64_t>(n);
  return r;
}

TestReport chi_square_independence(const Histogram& joint) {
  if (joint.total() == 0) throw InsufficientDataError("independence test needs data");
  // Raw values index row/column classes; merged classes share an index.
  std::map<std::int64_t, std::size_t> row_pos, col_pos;
  for (const auto& [key, n] : joint.cells()) {
    if (key.size() != 2) throw ParameterError("independence test needs two-dimensional cells");
    row_pos.emplace(key[0], 0);
    col_pos.emplace(key[1], 0);
  }
  std::size_t next = 0;
  for (auto& [v, pos] : row_pos) pos = next++;
  next = 0;
  for (auto& [v, pos] : col_pos) pos = next++;
  const double total = static_cast<double>(joint.total());
  std::vector<double> rows(row_pos.size(), 0.0), cols(col_pos.size(), 0.0);
  for (const auto& [key, n] : joint.cells()) {
    rows[row_pos[key[0]]] += static_cast<double>(n);
    cols[col_pos[key[1]]] += static_cast<double>(n);
  }
  // Merges depend only on the marginals, so classes are merged on the sums
  // and the table is tallied once at the end.
  std::vector<std::size_t> row_of(rows.size()), col_of(cols.size());
  std::iota(row_of.begin(), row_of.end(), 0);
  std::iota(col_of.begin(), col_of.end(), 0);
  std::vector<std::size_t> live_rows(rows.size()), live_cols(cols.size());
  std::iota(live_rows.begin(), live_rows.end(), 0);
  std::iota(live_cols.begin(), live_cols.end(), 0);
  const auto resolve = [](std::vector<std::size_t>& of, std::size_t k) {
    while (of[k] != k) k = of[k] = of[of[k]];
    return k;
  };
  for (;;) {
    if (live_rows.size() < 2 || live_cols.size() < 2) {
      throw InsufficientDataError("independence table collapses to a single row or column");
    }
    const auto rmin = std::min_element(live_rows.begin(), live_rows.end(),
                                       [&](auto l, auto r) { return rows[l] < rows[r]; });
    const auto cmin = std::min_element(live_cols.begin(), live_cols.end(),
                                       [&](auto l, auto r) { return cols[l] < cols[r]; });
    if (rows[*rmin] * cols[*cmin] / total >= kMinExpected) break;
    // Merge the sparser of the two smallest classes into its next smallest peer.
    const bool merge_rows = rows[*rmin] / total <= cols[*cmin] / total;
    auto& of = merge_rows ? row_of : col_of;
    auto& sums = merge_rows ? rows : cols;
    auto& live = merge_rows ? live_rows : live_cols;
    const auto victim_it = merge_rows ? rmin : cmin;
    const std::size_t victim = *victim_it;
    std::size_t target = live.front() == victim ? live[1] : live.front();
    for (std::size_t k : live) {
      if (k != victim && sums[k] < sums[target]) target = k;
    }
    of[victim] = target;
    sums[target] += sums[victim];
    sums[victim] = 0.0;
    live.erase(victim_it);
  }

  std::map<std::pair<std::size_t, std::size_t>, double> table;
  for (const auto& [key, n] : joint.cells()) {
    table[{resolve(row_of, row_pos[key[0]]), resolve(col_of, col_pos[key[1]])}] += static_cast<double>(n);
  }
  double stat = 0.0;
  for (std::size_t i : live_rows) {
    for (std::size_t j : live_cols) {
      const double e = rows[i] * cols[j] / total;
      const auto it = table.find({i, j});
      const double o = it == table.end() ? 0.0 : it->second;
      stat += (o - e) * (o - e) / e;
    }
  }
  TestReport r;
  r.method = "chi-square-independence";
  r.statistic = stat;
  r.dof = static_cast<long>((live_rows.size() - 1) * (live_cols.size() - 1));
  r.p_value = chi_square_sf(stat, static_cast<double>(r.dof));
  r.draws = joint.total();
  return r;
}

TestReport ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InsufficientDataError("KS test needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  TestReport r;
  r.method = "ks-two-sample";
  r.statistic = d;
  r.dof = 0;
  r.p_value = kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d);
  r.draws = a.size() + b.size();
  return r;
}

McEstimate empirical_pgf(std::span<const Count> samples, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("p.g.f. argument must lie in [0, 1]");
  if (samples.empty()) throw InsufficientDataError("empirical p.g.f. of an empty sample");
  MomentAccumulator acc;
  for (Count x : samples) acc.add(std::pow(s, static_cast<double>(x)));
  return acc.estimate();
}

McEstimate empirical_laplace(std::span<const double> samples, double z) {
  if (!(z > 0.0)) throw ParameterError("Laplace argument must be positive");
  if (samples.empty()) throw InsufficientDataError("empirical Laplace transform of an empty sample");
  MomentAccumulator acc;
  for (double x : samples) acc.add(std::exp(-z * x));
  return acc.estimate();
}

TestReport gof_sibuya(std::span<const Count> samples, Exponent alpha, Count max_cell) {
  if (max_cell < 1) throw ParameterError("max_cell must be >= 1");
  std::vector<std::uint64_t> observed(max_cell + 1, 0);
  for (Count x : samples) {
    if (x == 0) throw ParameterError("Sibuya samples must be positive");
    ++observed[std::min(x, max_cell + 1) - 1];
  }
  std::vector<double> probs(max_cell + 1);
  for (Count n = 1; n <= max_cell; ++n) probs[n - 1] = sibuya_pmf(alpha, n);
  probs[max_cell] = sibuya_survival(alpha, max_cell);
  TestReport r = chi_square_gof(observed, probs);
  r.method = "chi-square-gof-sibuya";
  return r;
}

namespace {

std::vector<VoidTracePoint> void_trace(std::size_t n, std::uint64_t stride,
                                       const std::function<bool(std::size_t)>& is_void) {
  if (stride == 0) stride = 1;
  std::vector<VoidTracePoint> trace;
  MomentAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    acc.add(is_void(i) ? 1.0 : 0.0);
    if ((i + 1) % stride == 0 || i + 1 == n) {
      trace.push_back({acc.count(), acc.mean(),
                       std::sqrt(acc.variance() / static_cast<double>(acc.count()))});
    }
  }
  return trace;
}

}  // namespace

std::vector<VoidTracePoint> running_void_frequency(std::span<const PointPattern> stream,
                                                   const QuerySet& set, std::uint64_t stride) {
  return void_trace(stream.size(), stride,
                    [&](std::size_t i) { return stream[i].count(set) == 0; });
}

std::vector<VoidTracePoint> running_void_frequency(std::span<const Count> counts,
                                                   std::uint64_t stride) {
  return void_trace(counts.size(), stride, [&](std::size_t i) { return counts[i] == 0; });
}

}  // namespace dastable
