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

#include "dastable/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dastable/cli/svg.hpp"
#include "dastable/errors.hpp"
#include "dastable/serialization.hpp"
#include "dastable/verify_stats.hpp"
#include "json.hpp"

#ifndef DASTABLE_VERSION
#define DASTABLE_VERSION "0.0.0"
#endif

namespace dastable::cli {

namespace {

using Json = nlohmann::ordered_json;

// Failure to create or write an output file.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& content, std::ostream& log) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw OutputError("failed writing " + path.string());
  log << "wrote " << path.string() << "\n";
}

// Rows of per-draw results, appended in worker order.
template <class Row>
struct RowAccumulator {
  std::vector<Row> rows;
  void merge(const RowAccumulator& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }
};

struct CellCounts {
  std::vector<std::uint64_t> counts;
  void merge(const CellCounts& other) {
    if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
  }
};

struct NaturalHistogram {
  std::map<Natural, std::uint64_t> counts;
  std::uint64_t overflow = 0;
  void merge(const NaturalHistogram& other) {
    for (const auto& [n, k] : other.counts) counts[n] += k;
    overflow += other.overflow;
  }
};

std::string header_line(std::string_view command) {
  return std::string("# dastable ") + DASTABLE_VERSION + " " + std::string(command) + "\n";
}

bool spectral_is_planar(const SpectralMeasure& sigma, const std::optional<Rect>& window) {
  if (std::holds_alternative<TranslationFamily>(sigma)) return true;
  const auto& f = std::get<FiniteSpectral>(sigma);
  if (f.components.empty()) return window.has_value();
  return is_planar(f.components.front().measure);
}

Rect bounding_window(const PointPattern& pattern) {
  if (pattern.empty()) return Rect{0, 0, 1, 1};
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const PatternPoint& p : pattern.points()) {
    const Point2 xy = std::get<Point2>(p.location);
    x0 = std::min(x0, xy.x);
    y0 = std::min(y0, xy.y);
    x1 = std::max(x1, xy.x);
    y1 = std::max(y1, xy.y);
  }
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-9});
  const double side = std::max(x1 - x0, y1 - y0) + 2 * pad;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  return Rect{cx - side / 2, cy - side / 2, cx + side / 2, cy + side / 2};
}

std::string counts_csv(const std::vector<std::string>& columns, const std::vector<std::vector<Count>>& rows) {
  std::string out = "draw";
  for (const std::string& c : columns) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += std::to_string(i);
    for (Count k : rows[i]) out += "," + std::to_string(k);
    out += "\n";
  }
  return out;
}

std::vector<std::vector<Count>> draw_rows(const ExperimentConfig& c,
                                          const std::function<std::vector<Count>(RandomSource&)>& draw) {
  using Acc = RowAccumulator<std::vector<Count>>;
  return run_partitioned<Acc>(c.draws, c.workers, c.seed, [&](Acc& acc, RandomSource& rng) {
           acc.rows.push_back(draw(rng));
         }).rows;
}

void write_provenance(const ExperimentConfig& c, std::string_view command, Json summary,
                      const std::vector<std::string>& files, const std::filesystem::path& out_dir,
                      std::ostream& log) {
  Json j;
  j["tool"] = "dastable";
  j["version"] = DASTABLE_VERSION;
  j["command"] = command;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["outputs"] = files;
  j["summary"] = std::move(summary);
  j["config"] = Json::parse(canonical_config(c));
  write_file(out_dir / c.outputs.provenance, j.dump(2) + "\n", log);
}

// ---------------------------------------------------------------------------
// sample

int sample_process(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log) {
  const DasProcessSpec spec = c.process_spec();
  const ProcessRoute route = parse_process_route(c.route);
  const bool planar = spectral_is_planar(*c.spectral, spec.window);
  RandomSource rng(c.seed);
  const MarkedRealization r = sample_das(spec, route, c.lepage, rng, c.limits);

  std::vector<std::string> files;
  std::ostringstream csv;
  write_pattern_csv(csv, r.pattern, planar ? PatternLayout::kPlanar : PatternLayout::kDiscrete);
  write_file(out_dir / c.outputs.pattern, csv.str(), log);
  files.push_back(c.outputs.pattern);

  if (c.outputs.svg) {
    if (!planar) throw ParameterError("SVG output needs a planar spectral measure");
    const Rect window = spec.window ? *spec.window : bounding_window(r.pattern);
    const std::string title = "alpha=" + format_double(spec.alpha.value()) + " route=" + c.route +
                              " seed=" + std::to_string(c.seed);
    write_file(out_dir / *c.outputs.svg, render_svg(r.pattern, window, c.svg, title), log);
    files.push_back(*c.outputs.svg);
  }

  Count total = 0;
  std::map<std::int64_t, Count> clusters;
  for (const PatternPoint& p : r.pattern.points()) {
    total += p.multiplicity;
    if (p.cluster) clusters[*p.cluster] += p.multiplicity;
  }
  Json summary{{"route", c.route}, {"points", r.pattern.points().size()}, {"total_multiplicity", total},
               {"clusters", clusters.size()}};

  if (!c.bins.empty()) {
    const auto rows = draw_rows(c, [&](RandomSource& g) {
      return sample_das_counts(spec, route, c.bins, c.lepage, g);
    });
    std::vector<std::string> columns;
    for (std::size_t i = 0; i < c.bins.size(); ++i) columns.push_back("bin" + std::to_string(i));
    write_file(out_dir / c.outputs.counts, counts_csv(columns, rows), log);
    files.push_back(c.outputs.counts);
    summary["count_draws"] = rows.size();
  }
  write_provenance(c, "sample", summary, files, out_dir, log);
  return kExitOk;
}

int sample_vector(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log) {
  const Exponent alpha = c.require_alpha();
  if (c.route == "lepage") throw UnsupportedRouteError("vector sampling supports the cluster and cox routes");
  const VectorRoute route = parse_vector_route(c.route);
  const auto rows = draw_rows(c, [&](RandomSource& g) {
    return sample_das_vector(*c.simplex, alpha, route, g, c.lepage);
  });
  std::vector<std::string> columns;
  for (std::size_t i = 0; i < c.simplex->dimension(); ++i) columns.push_back("n" + std::to_string(i));
  write_file(out_dir / c.outputs.counts, counts_csv(columns, rows), log);
  write_provenance(c, "sample", Json{{"route", c.route}, {"draws", rows.size()}}, {c.outputs.counts}, out_dir, log);
  return kExitOk;
}

int sample_naturals(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log) {
  const Exponent alpha = c.require_alpha();
  const NaturalHistogram h =
      run_partitioned<NaturalHistogram>(c.draws, c.workers, c.seed, [&](NaturalHistogram& acc, RandomSource& g) {
        const std::optional<Natural> n = try_compose(sample_mult_stable(*c.basis, alpha, g));
        if (n) {
          ++acc.counts[*n];
        } else {
          ++acc.overflow;
        }
      });
  std::string csv = "n,count\n";
  for (const auto& [n, k] : h.counts) csv += std::to_string(n) + "," + std::to_string(k) + "\n";
  if (h.overflow > 0) csv += "overflow," + std::to_string(h.overflow) + "\n";
  write_file(out_dir / c.outputs.counts, csv, log);
  write_provenance(c, "sample", Json{{"draws", c.draws}, {"distinct", h.counts.size()}, {"overflow", h.overflow}},
                   {c.outputs.counts}, out_dir, log);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// test

const std::vector<QuerySet>& require_bins(const ExperimentConfig& c) {
  if (c.bins.empty()) throw ParameterError("this test needs 'bins'");
  return c.bins;
}

StabilityOptions stability_options(const ExperimentConfig& c) {
  StabilityOptions o;
  o.route = parse_process_route(c.route);
  o.lepage = c.lepage;
  o.thinning_alpha = c.test->thinning_alpha;
  o.workers = c.workers;
  return o;
}

std::vector<Count> collect_samples(const ExperimentConfig& c, const std::function<Count(RandomSource&)>& draw) {
  using Acc = RowAccumulator<Count>;
  return run_partitioned<Acc>(c.draws, c.workers, c.seed, [&](Acc& acc, RandomSource& g) {
           acc.rows.push_back(draw(g));
         }).rows;
}

TestReport run_gof(const ExperimentConfig& c) {
  const TestConfig& t = *c.test;
  const Exponent alpha = c.require_alpha();
  if (t.law == "sibuya") {
    const auto samples = collect_samples(c, [&](RandomSource& g) { return sample_sibuya(alpha, g); });
    TestReport r = gof_sibuya(samples, alpha, t.max_cell);
    r.routes = {"inversion"};
    return r;
  }
  const DiscreteStableParams params(t.scale, alpha);
  const DiscreteStableRoute route = parse_discrete_stable_route(t.stable_route);
  const SeriesPmf oracle = discrete_stable_pmf_oracle(params, t.max_cell);
  std::vector<double> probs = oracle.pmf;
  probs.push_back(std::max(oracle.tail_mass, 0.0));
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  probs.back() += 1.0 - total;
  std::vector<std::uint64_t> observed(probs.size(), 0);
  for (Count n : collect_samples(c, [&](RandomSource& g) { return sample_discrete_stable(params, route, g); })) {
    ++observed[std::min<Count>(n, t.max_cell + 1)];
  }
  TestReport r = chi_square_gof(observed, probs);
  r.method = "gof-discrete-stable";
  r.routes = {t.stable_route};
  return r;
}

TestReport run_avoidance(const ExperimentConfig& c) {
  const TestConfig& t = *c.test;
  const DasProcessSpec spec = c.process_spec();
  const ProcessRoute route = parse_process_route(c.route);
  QuadratureConfig quad;
  quad.grid = t.quadrature_grid;
  const FunctionalValue exact = das_avoidance(spec, *t.set, quad);
  const std::vector<QuerySet> bins{*t.set};
  const McEstimate freq = run_partitioned<MomentAccumulator>(c.draws, c.workers, c.seed,
                                                             [&](MomentAccumulator& acc, RandomSource& g) {
                                                               acc.add(sample_das_counts(spec, route, bins, c.lepage,
                                                                                         g)[0] == 0
                                                                           ? 1.0
                                                                           : 0.0);
                                                             })
                              .estimate();
  const double excess = std::max(0.0, std::abs(freq.value - exact.value) - exact.quadrature_error);
  TestReport r;
  r.method = "avoidance";
  r.routes = {c.route};
  if (freq.std_error > 0.0) {
    r.statistic = excess / freq.std_error;
  } else {
    r.statistic = excess > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.p_value = std::erfc(r.statistic / std::sqrt(2.0));
  r.draws = c.draws;
  return r;
}

TestReport run_mult_naturals(const ExperimentConfig& c) {
  if (!c.basis) throw ParameterError("mult-naturals test needs 'basis'");
  const Exponent alpha = c.require_alpha();
  const std::vector<WeightedOutcome> outcomes = likely_outcomes(*c.basis, alpha, c.test->min_probability);
  std::map<std::map<Natural, Count>, std::size_t> index;
  std::vector<double> probs;
  for (const WeightedOutcome& o : outcomes) {
    index.emplace(o.factorization.exponents, probs.size());
    probs.push_back(o.probability);
  }
  const double head = std::accumulate(probs.begin(), probs.end(), 0.0);
  probs.push_back(std::max(0.0, 1.0 - head));
  const std::size_t rest = probs.size() - 1;
  const CellCounts counts =
      run_partitioned<CellCounts>(c.draws, c.workers, c.seed, [&](CellCounts& acc, RandomSource& g) {
        if (acc.counts.empty()) acc.counts.assign(probs.size(), 0);
        const auto it = index.find(sample_mult_stable(*c.basis, alpha, g).exponents);
        ++acc.counts[it == index.end() ? rest : it->second];
      });
  std::vector<std::uint64_t> observed = counts.counts;
  observed.resize(probs.size(), 0);
  TestReport r = chi_square_gof(observed, probs);
  r.method = "gof-mult-naturals";
  r.routes = {"poisson-exponents"};
  return r;
}

// ---------------------------------------------------------------------------
// tables

std::vector<double> table_alphas(const ExperimentConfig& c, const TableConfig& t) {
  if (!t.alphas.empty()) return t.alphas;
  return {c.require_alpha().value()};
}

std::vector<Natural> smooth_numbers(const PrimeBasis& basis, Natural max_n) {
  std::vector<Natural> out;
  const auto visit = [&](const auto& self, std::size_t i, Natural n) -> void {
    if (i == basis.primes.size()) {
      out.push_back(n);
      return;
    }
    for (Natural m = n;; m *= basis.primes[i]) {
      self(self, i + 1, m);
      if (m > max_n / basis.primes[i]) break;
    }
  };
  visit(visit, 0, 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::string table_body(const ExperimentConfig& c, const TableConfig& t) {
  std::string out;
  if (t.kind == "discrete-stable-pmf") {
    std::string rows = "alpha,n,probability\n";
    for (double a : table_alphas(c, t)) {
      const SeriesPmf pmf = discrete_stable_pmf_oracle(DiscreteStableParams(t.scale, Exponent(a)), t.n_max);
      out += "# tail_mass alpha=" + format_double(a) + ": " + format_double(pmf.tail_mass) + "\n";
      for (std::size_t n = 0; n < pmf.pmf.size(); ++n) {
        rows += format_double(a) + "," + std::to_string(n) + "," + format_double(pmf.pmf[n]) + "\n";
      }
    }
    return out + rows;
  }
  if (t.kind == "sibuya-pmf") {
    out = "alpha,n,probability,survival\n";
    for (double a : table_alphas(c, t)) {
      for (Count n = 1; n <= t.n_max; ++n) {
        out += format_double(a) + "," + std::to_string(n) + "," + format_double(sibuya_pmf(Exponent(a), n)) + "," +
               format_double(sibuya_survival(Exponent(a), n)) + "\n";
      }
    }
    return out;
  }
  if (t.kind == "pgf-grid") {
    const std::vector<double> grid = t.s_grid.empty() ? std::vector<double>{0, 0.25, 0.5, 0.75, 1} : t.s_grid;
    out = "alpha,s,pgf\n";
    for (double a : table_alphas(c, t)) {
      for (double s : grid) {
        out += format_double(a) + "," + format_double(s) + "," +
               format_double(discrete_stable_pgf(DiscreteStableParams(t.scale, Exponent(a)), s)) + "\n";
      }
    }
    return out;
  }
  if (t.kind == "mult-naturals") {
    if (!c.basis) throw ParameterError("mult-naturals table needs 'basis'");
    out = "alpha,n,probability\n";
    for (double a : table_alphas(c, t)) {
      for (Natural n : smooth_numbers(*c.basis, t.max_n)) {
        out += format_double(a) + "," + std::to_string(n) + "," +
               format_double(mult_stable_prob(n, *c.basis, Exponent(a))) + "\n";
      }
    }
    return out;
  }
  if (t.kind == "avoidance") {
    const DasProcessSpec spec = c.process_spec();
    QuadratureConfig quad;
    quad.grid = t.quadrature_grid;
    out = "bin,probability,quadrature_error\n";
    for (std::size_t i = 0; i < require_bins(c).size(); ++i) {
      const FunctionalValue v = das_avoidance(spec, c.bins[i], quad);
      out += std::to_string(i) + "," + format_double(v.value) + "," + format_double(v.quadrature_error) + "\n";
    }
    return out;
  }
  // vector-pmf
  if (!c.simplex) throw ParameterError("vector-pmf table needs 'simplex'");
  if (t.box.size() != c.simplex->dimension()) throw ParameterError("vector-pmf 'box' must have one side per coordinate");
  const PmfTable table = vector_pmf_oracle(*c.simplex, c.require_alpha(), t.box);
  std::ostringstream csv;
  write_pmf_table_csv(csv, table);
  return "# truncated_mass: " + format_double(table.truncated_mass) + "\n" + csv.str();
}

}  // namespace

int cmd_sample(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  if (config.spectral) return sample_process(config, out_dir, log);
  if (config.simplex) return sample_vector(config, out_dir, log);
  if (config.basis) return sample_naturals(config, out_dir, log);
  throw ParameterError("sample needs one of 'spectral', 'simplex', 'basis'");
}

int cmd_test(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log) {
  if (!c.test) throw ParameterError("test needs a 'test' section");
  const TestConfig& t = *c.test;
  TestReport r;
  RandomSource rng(c.seed);
  if (t.name == "stability") {
    r = stability_check(c.process_spec(), t.t, require_bins(c), c.draws, rng, stability_options(c));
  } else if (t.name == "superposition") {
    r = superposition_fixed_point_check(c.process_spec(), t.n, require_bins(c), c.draws, rng, stability_options(c));
  } else if (t.name == "route-equivalence") {
    r = route_equivalence_check(c.process_spec(), parse_process_route(t.routes[0]), parse_process_route(t.routes[1]),
                                require_bins(c), c.draws, rng, c.lepage, c.workers);
  } else if (t.name == "gof") {
    r = run_gof(c);
  } else if (t.name == "avoidance") {
    r = run_avoidance(c);
  } else {
    r = run_mult_naturals(c);
  }
  r.seed = c.seed;
  const std::string report = report_to_json(r, t.level);
  write_file(out_dir / c.outputs.report, report + "\n", log);
  log << report << "\n";
  return r.passes(t.level) ? kExitOk : kExitTestFailed;
}

int cmd_tables(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log) {
  if (c.tables.empty()) throw ParameterError("tables needs a non-empty 'tables' list");
  std::vector<std::string> files;
  for (const TableConfig& t : c.tables) {
    const std::string body = table_body(c, t);
    write_file(out_dir / t.file, header_line("tables") + "# kind: " + t.kind + "\n" + body, log);
    files.push_back(t.file);
  }
  write_provenance(c, "tables", Json{{"tables", files.size()}}, files, out_dir, log);
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling, verification and tables for discrete stable point processes", "dastable"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  for (const char* name : {"sample", "test", "tables"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "Master seed, overrides the config");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--workers", workers, "Worker threads, overrides the config")->check(CLI::Range(1u, 256u));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  CLI::App* sub = app.get_subcommands().front();
  try {
    std::ifstream f(config_path, std::ios::binary);
    if (!f) throw ParameterError("cannot read config " + config_path);
    std::ostringstream text;
    text << f.rdbuf();
    ExperimentConfig config = parse_config(text.str());
    if (sub->count("--seed") > 0) config.seed = seed;
    if (sub->count("--workers") > 0) config.workers = workers;
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create output directory " + out_dir + ": " + ec.message());
    const std::string name = sub->get_name();
    if (name == "sample") return cmd_sample(config, dir, out);
    if (name == "test") return cmd_test(config, dir, out);
    return cmd_tables(config, dir, out);
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InsufficientDataError& e) {
    err << "config error: " << e.what() << " (increase 'draws')\n";
    return kExitConfigError;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UnsupportedRouteError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const PrecisionError& e) {
    err << "precision: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitUnsupported;
  }
}

}  // namespace dastable::cli
