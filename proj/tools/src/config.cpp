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

#include "dastable/cli/config.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "dastable/errors.hpp"
#include "dastable/serialization.hpp"
#include "json.hpp"

namespace dastable::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string_view> kTestNames = {"stability",  "superposition", "route-equivalence",
                                               "gof",        "avoidance",     "mult-naturals"};
const std::set<std::string_view> kTableKinds = {"discrete-stable-pmf", "sibuya-pmf", "pgf-grid",
                                                "mult-naturals",       "avoidance",  "vector-pmf"};

void check_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) throw ParameterError(std::string(where) + " must be a JSON object");
  std::set<std::string_view> allowed(required);
  allowed.insert(optional.begin(), optional.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParameterError("unknown key '" + key + "' in " + std::string(where));
  }
  for (std::string_view key : required) {
    if (!j.contains(std::string(key))) {
      throw ParameterError("missing key '" + std::string(key) + "' in " + std::string(where));
    }
  }
}

double number(const Json& j, std::string_view what) {
  if (!j.is_number()) throw ParameterError(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParameterError(std::string(what) + " must be finite");
  return x;
}

double number_in(const Json& j, std::string_view what, double lo, double hi) {
  const double x = number(j, what);
  if (!(x >= lo && x <= hi)) {
    throw ParameterError(std::string(what) + " must lie in [" + format_double(lo) + ", " + format_double(hi) + "]");
  }
  return x;
}

std::uint64_t unsigned_int(const Json& j, std::string_view what, std::uint64_t lo = 0,
                           std::uint64_t hi = std::numeric_limits<std::uint64_t>::max()) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw ParameterError(std::string(what) + " must be a non-negative integer");
  }
  const std::uint64_t x = j.get<std::uint64_t>();
  if (x < lo || x > hi) {
    throw ParameterError(std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

std::string text(const Json& j, std::string_view what) {
  if (!j.is_string()) throw ParameterError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

bool boolean(const Json& j, std::string_view what) {
  if (!j.is_boolean()) throw ParameterError(std::string(what) + " must be true or false");
  return j.get<bool>();
}

const Json& array(const Json& j, std::string_view what) {
  if (!j.is_array()) throw ParameterError(std::string(what) + " must be an array");
  return j;
}

Rect rect(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 4) throw ParameterError(std::string(what) + " must be [x0, y0, x1, y1]");
  Rect r{number(j[0], what), number(j[1], what), number(j[2], what), number(j[3], what)};
  validate_window(r);
  return r;
}

// Output names are plain file names inside the output directory.
std::string file_name(const Json& j, std::string_view what) {
  const std::string name = text(j, what);
  const std::filesystem::path p(name);
  if (name.empty() || p.has_parent_path() || p.is_absolute() || name == "." || name == "..") {
    throw ParameterError(std::string(what) + " must be a plain file name");
  }
  return name;
}

QuerySet query_set(const Json& j, std::string_view what) {
  if (!j.is_object() || j.size() != 1) {
    throw ParameterError(std::string(what) + " must be {\"rect\": [...]} or {\"labels\": [...]}");
  }
  if (j.contains("rect")) return rect(j["rect"], what);
  if (j.contains("labels")) {
    LabelSet s;
    for (const Json& l : array(j["labels"], what)) {
      if (!l.is_number_integer()) throw ParameterError(std::string(what) + " labels must be integers");
      s.labels.push_back(Label{l.get<std::int64_t>()});
    }
    if (s.labels.empty()) throw ParameterError(std::string(what) + " needs at least one label");
    return s;
  }
  throw ParameterError(std::string(what) + " must be {\"rect\": [...]} or {\"labels\": [...]}");
}

Json query_set_json(const QuerySet& q) {
  if (const auto* r = std::get_if<Rect>(&q)) return Json{{"rect", {r->x0, r->y0, r->x1, r->y1}}};
  Json labels = Json::array();
  for (Label l : std::get<LabelSet>(q).labels) labels.push_back(l.id);
  return Json{{"labels", labels}};
}

void check_route(const std::string& route) { parse_process_route(route); }

SimplexMeasure simplex(const Json& j) {
  check_keys(j, "simplex", {"components"});
  SimplexMeasure s;
  for (const Json& c : array(j["components"], "simplex components")) {
    check_keys(c, "simplex component", {"weight", "p"});
    SimplexComponent sc;
    sc.weight = number(c["weight"], "simplex weight");
    for (const Json& x : array(c["p"], "simplex p")) sc.p.push_back(number(x, "simplex p entry"));
    s.components.push_back(std::move(sc));
  }
  s.validate();
  return s;
}

PrimeBasis basis(const Json& j) {
  check_keys(j, "basis", {"primes", "weights"});
  PrimeBasis b;
  for (const Json& p : array(j["primes"], "basis primes")) b.primes.push_back(unsigned_int(p, "prime"));
  for (const Json& w : array(j["weights"], "basis weights")) b.weights.push_back(number(w, "prime weight"));
  if (b.primes.empty()) throw ParameterError("basis needs at least one prime");
  b.validate();
  return b;
}

TestConfig test_config(const Json& j) {
  check_keys(j, "test", {"name"},
             {"t", "n", "thinning_alpha", "routes", "set", "law", "scale", "stable_route", "max_cell", "level",
              "quadrature_grid", "min_probability"});
  TestConfig t;
  t.name = text(j["name"], "test name");
  if (!kTestNames.count(t.name)) throw ParameterError("unknown test '" + t.name + "'");
  if (j.contains("t")) {
    t.t = number(j["t"], "test t");
    if (!(t.t > 0.0 && t.t < 1.0)) throw ParameterError("test t must lie in (0, 1)");
  }
  if (j.contains("n")) t.n = static_cast<unsigned>(unsigned_int(j["n"], "test n", 2, 1000));
  if (j.contains("thinning_alpha")) t.thinning_alpha = Exponent(number(j["thinning_alpha"], "thinning_alpha")).value();
  if (j.contains("routes")) {
    for (const Json& r : array(j["routes"], "test routes")) {
      t.routes.push_back(text(r, "route"));
      check_route(t.routes.back());
    }
  }
  if (t.name == "route-equivalence") {
    if (t.routes.empty()) t.routes = {"cluster", "cox"};
    if (t.routes.size() != 2) throw ParameterError("route-equivalence needs exactly two routes");
  } else if (!t.routes.empty()) {
    throw ParameterError("'routes' applies to route-equivalence only");
  }
  if (j.contains("set")) t.set = query_set(j["set"], "test set");
  if (t.name == "avoidance" && !t.set) throw ParameterError("avoidance test needs a 'set'");
  if (j.contains("law")) {
    t.law = text(j["law"], "law");
    if (t.law != "sibuya" && t.law != "discrete-stable") throw ParameterError("unknown law '" + t.law + "'");
  }
  if (j.contains("scale")) t.scale = number_in(j["scale"], "scale", 0.0, 1e6);
  if (j.contains("stable_route")) {
    t.stable_route = text(j["stable_route"], "stable_route");
    parse_discrete_stable_route(t.stable_route);
  }
  if (j.contains("max_cell")) t.max_cell = unsigned_int(j["max_cell"], "max_cell", 1, 100000);
  if (j.contains("level")) {
    t.level = number(j["level"], "level");
    if (!(t.level > 0.0 && t.level < 1.0)) throw ParameterError("level must lie in (0, 1)");
  }
  if (j.contains("quadrature_grid")) t.quadrature_grid = unsigned_int(j["quadrature_grid"], "quadrature_grid", 2, 5000);
  if (j.contains("min_probability")) {
    t.min_probability = number(j["min_probability"], "min_probability");
    if (!(t.min_probability > 0.0 && t.min_probability < 1.0)) {
      throw ParameterError("min_probability must lie in (0, 1)");
    }
  }
  return t;
}

TableConfig table_config(const Json& j) {
  check_keys(j, "table", {"kind", "file"},
             {"alphas", "scale", "n_max", "s_grid", "max_n", "box", "quadrature_grid"});
  TableConfig t;
  t.kind = text(j["kind"], "table kind");
  if (!kTableKinds.count(t.kind)) throw ParameterError("unknown table kind '" + t.kind + "'");
  t.file = file_name(j["file"], "table file");
  if (j.contains("alphas")) {
    for (const Json& a : array(j["alphas"], "alphas")) t.alphas.push_back(Exponent(number(a, "alpha")).value());
  }
  if (j.contains("scale")) t.scale = number_in(j["scale"], "scale", 0.0, 1e6);
  if (j.contains("n_max")) t.n_max = unsigned_int(j["n_max"], "n_max", 0, 100000);
  if (j.contains("s_grid")) {
    for (const Json& s : array(j["s_grid"], "s_grid")) t.s_grid.push_back(number_in(s, "s_grid entry", 0.0, 1.0));
  }
  if (j.contains("max_n")) t.max_n = unsigned_int(j["max_n"], "max_n", 1, 1'000'000'000);
  if (j.contains("box")) {
    for (const Json& b : array(j["box"], "box")) t.box.push_back(unsigned_int(b, "box side", 0, 1'000'000));
  }
  if (j.contains("quadrature_grid")) t.quadrature_grid = unsigned_int(j["quadrature_grid"], "quadrature_grid", 2, 5000);
  return t;
}

}  // namespace

Exponent ExperimentConfig::require_alpha() const {
  if (!alpha) throw ParameterError("config needs 'alpha'");
  return *alpha;
}

DasProcessSpec ExperimentConfig::process_spec() const {
  if (!spectral) throw ParameterError("config needs 'spectral'");
  DasProcessSpec spec{*spectral, require_alpha(), window};
  if (!spec.window) {
    if (const auto* tf = std::get_if<TranslationFamily>(&*spectral)) spec.window = tf->window;
  }
  spec.validate();
  return spec;
}

ExperimentConfig parse_config(std::string_view document) {
  Json j;
  try {
    j = Json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "config", {},
             {"alpha", "spectral", "simplex", "basis", "seed", "draws", "workers", "route", "window", "bins",
              "lepage", "max_points", "test", "tables", "outputs", "svg"});
  ExperimentConfig c;
  if (j.contains("alpha")) c.alpha = Exponent(number(j["alpha"], "alpha"));
  if (j.contains("spectral")) c.spectral = spectral_from_json(j["spectral"].dump(), c.alpha);
  if (j.contains("simplex")) c.simplex = simplex(j["simplex"]);
  if (j.contains("basis")) c.basis = basis(j["basis"]);
  const int models = c.spectral.has_value() + c.simplex.has_value() + c.basis.has_value();
  if (models > 1) throw ParameterError("config takes at most one of 'spectral', 'simplex', 'basis'");
  if (j.contains("seed")) c.seed = unsigned_int(j["seed"], "seed");
  if (j.contains("draws")) c.draws = unsigned_int(j["draws"], "draws", 1, 10'000'000'000ULL);
  if (j.contains("workers")) c.workers = static_cast<unsigned>(unsigned_int(j["workers"], "workers", 1, 256));
  if (j.contains("route")) c.route = text(j["route"], "route");
  check_route(c.route);
  if (j.contains("window")) c.window = rect(j["window"], "window");
  if (j.contains("bins")) {
    for (const Json& b : array(j["bins"], "bins")) c.bins.push_back(query_set(b, "bin"));
  }
  if (j.contains("lepage")) {
    const Json& l = j["lepage"];
    check_keys(l, "lepage", {}, {"tolerance", "max_terms", "exact_tail"});
    if (l.contains("tolerance")) c.lepage.tolerance = number(l["tolerance"], "lepage tolerance");
    if (l.contains("max_terms")) c.lepage.max_terms = unsigned_int(l["max_terms"], "lepage max_terms", 1, 1u << 30);
    if (l.contains("exact_tail")) c.lepage.exact_tail = boolean(l["exact_tail"], "lepage exact_tail");
    c.lepage.validate();
  }
  if (j.contains("max_points")) c.limits.max_points = unsigned_int(j["max_points"], "max_points", 1);
  if (j.contains("test")) c.test = test_config(j["test"]);
  if (j.contains("tables")) {
    for (const Json& t : array(j["tables"], "tables")) c.tables.push_back(table_config(t));
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    check_keys(o, "outputs", {}, {"pattern", "counts", "provenance", "report", "svg"});
    if (o.contains("pattern")) c.outputs.pattern = file_name(o["pattern"], "outputs.pattern");
    if (o.contains("counts")) c.outputs.counts = file_name(o["counts"], "outputs.counts");
    if (o.contains("provenance")) c.outputs.provenance = file_name(o["provenance"], "outputs.provenance");
    if (o.contains("report")) c.outputs.report = file_name(o["report"], "outputs.report");
    if (o.contains("svg")) c.outputs.svg = file_name(o["svg"], "outputs.svg");
  }
  if (j.contains("svg")) {
    const Json& s = j["svg"];
    check_keys(s, "svg", {}, {"size", "point_radius", "max_points"});
    if (s.contains("size")) c.svg.size = static_cast<int>(unsigned_int(s["size"], "svg size", 16, 8192));
    if (s.contains("point_radius")) c.svg.point_radius = number_in(s["point_radius"], "svg point_radius", 0.1, 50.0);
    if (s.contains("max_points")) c.svg.max_points = unsigned_int(s["max_points"], "svg max_points", 1);
  }
  return c;
}

std::string canonical_config(const ExperimentConfig& c) {
  Json j;
  if (c.alpha) j["alpha"] = c.alpha->value();
  if (c.spectral) j["spectral"] = Json::parse(spectral_to_json(*c.spectral));
  if (c.simplex) {
    Json comps = Json::array();
    for (const SimplexComponent& sc : c.simplex->components) comps.push_back({{"weight", sc.weight}, {"p", sc.p}});
    j["simplex"] = {{"components", comps}};
  }
  if (c.basis) j["basis"] = {{"primes", c.basis->primes}, {"weights", c.basis->weights}};
  j["seed"] = c.seed;
  j["draws"] = c.draws;
  j["workers"] = c.workers;
  j["route"] = c.route;
  if (c.window) j["window"] = {c.window->x0, c.window->y0, c.window->x1, c.window->y1};
  if (!c.bins.empty()) {
    j["bins"] = Json::array();
    for (const QuerySet& b : c.bins) j["bins"].push_back(query_set_json(b));
  }
  j["lepage"] = {{"tolerance", c.lepage.tolerance},
                 {"max_terms", c.lepage.max_terms},
                 {"exact_tail", c.lepage.exact_tail}};
  j["max_points"] = c.limits.max_points;
  if (c.test) {
    const TestConfig& t = *c.test;
    Json tj{{"name", t.name}, {"level", t.level}};
    if (t.name == "stability") tj["t"] = t.t;
    if (t.name == "superposition") tj["n"] = t.n;
    if (t.thinning_alpha) tj["thinning_alpha"] = *t.thinning_alpha;
    if (!t.routes.empty()) tj["routes"] = t.routes;
    if (t.set) tj["set"] = query_set_json(*t.set);
    if (t.name == "gof") {
      tj["law"] = t.law;
      if (t.law == "discrete-stable") {
        tj["scale"] = t.scale;
        tj["stable_route"] = t.stable_route;
      }
      tj["max_cell"] = t.max_cell;
    }
    if (t.name == "avoidance") tj["quadrature_grid"] = t.quadrature_grid;
    if (t.name == "mult-naturals") tj["min_probability"] = t.min_probability;
    j["test"] = tj;
  }
  if (!c.tables.empty()) {
    j["tables"] = Json::array();
    for (const TableConfig& t : c.tables) {
      Json tj{{"kind", t.kind}, {"file", t.file}};
      if (!t.alphas.empty()) tj["alphas"] = t.alphas;
      tj["scale"] = t.scale;
      tj["n_max"] = t.n_max;
      if (!t.s_grid.empty()) tj["s_grid"] = t.s_grid;
      tj["max_n"] = t.max_n;
      if (!t.box.empty()) tj["box"] = t.box;
      j["tables"].push_back(tj);
    }
  }
  Json o{{"pattern", c.outputs.pattern},
         {"counts", c.outputs.counts},
         {"provenance", c.outputs.provenance},
         {"report", c.outputs.report}};
  if (c.outputs.svg) o["svg"] = *c.outputs.svg;
  j["outputs"] = o;
  j["svg"] = {{"size", c.svg.size}, {"point_radius", c.svg.point_radius}, {"max_points", c.svg.max_points}};
  return j.dump(2);
}

}  // namespace dastable::cli
