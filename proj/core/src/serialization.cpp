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

#include "dastable/serialization.hpp"

#include <array>
#include <charconv>
#include <initializer_list>
#include <set>

#include "dastable/das_process.hpp"
#include "dastable/errors.hpp"
#include "json.hpp"
#include "overloaded.hpp"

namespace dastable {

namespace {

using Json = nlohmann::ordered_json;

void check_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) throw ParameterError(std::string(where) + " must be a JSON object");
  std::set<std::string_view> allowed(required);
  allowed.insert(optional.begin(), optional.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ParameterError("unknown key '" + key + "' in " + std::string(where));
    }
  }
  for (std::string_view key : required) {
    if (!j.contains(std::string(key))) {
      throw ParameterError("missing key '" + std::string(key) + "' in " + std::string(where));
    }
  }
}

double number(const Json& j, std::string_view what) {
  if (!j.is_number()) throw ParameterError(std::string(what) + " must be a number");
  return j.get<double>();
}

Point2 point(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) throw ParameterError(std::string(what) + " must be [x, y]");
  return {number(j[0], what), number(j[1], what)};
}

Rect rect(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 4) {
    throw ParameterError(std::string(what) + " must be [x0, y0, x1, y1]");
  }
  const Rect r{number(j[0], what), number(j[1], what), number(j[2], what), number(j[3], what)};
  validate_window(r);
  return r;
}

Json to_json(Point2 p) { return Json::array({p.x, p.y}); }
Json to_json(const Rect& r) { return Json::array({r.x0, r.y0, r.x1, r.y1}); }

Json measure_json(const ProbabilityMeasureSpec& mu) {
  return std::visit(
      detail::Overloaded{
          [](const Atomic& a) {
            Json atoms = Json::array();
            for (const Atom& atom : a.atoms) {
              atoms.push_back({{"label", atom.label.id}, {"weight", atom.weight}});
            }
            return Json{{"type", "atomic"}, {"atoms", atoms}};
          },
          [](const UniformOnBall& b) {
            return Json{{"type", "ball"}, {"center", to_json(b.center)}, {"radius", b.radius}};
          },
          [](const GaussianKernel& g) {
            return Json{{"type", "gaussian"}, {"center", to_json(g.center)}, {"scale", g.scale}};
          },
          [](const UniformOnWindow& w) {
            return Json{{"type", "uniform_window"}, {"window", to_json(w.window)}};
          },
      },
      mu);
}

ProbabilityMeasureSpec parse_measure(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParameterError("measure needs a string 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  ProbabilityMeasureSpec mu;
  if (type == "atomic") {
    check_keys(j, "atomic measure", {"type", "atoms"});
    if (!j["atoms"].is_array()) throw ParameterError("'atoms' must be an array");
    Atomic a;
    for (const Json& atom : j["atoms"]) {
      check_keys(atom, "atom", {"label", "weight"});
      if (!atom["label"].is_number_integer()) throw ParameterError("atom label must be an integer");
      a.atoms.push_back({Label{atom["label"].get<std::int64_t>()}, number(atom["weight"], "weight")});
    }
    mu = a;
  } else if (type == "ball") {
    check_keys(j, "ball measure", {"type", "center", "radius"});
    mu = UniformOnBall{point(j["center"], "center"), number(j["radius"], "radius")};
  } else if (type == "gaussian") {
    check_keys(j, "gaussian measure", {"type", "center", "scale"});
    mu = GaussianKernel{point(j["center"], "center"), number(j["scale"], "scale")};
  } else if (type == "uniform_window") {
    check_keys(j, "uniform_window measure", {"type", "window"});
    mu = UniformOnWindow{rect(j["window"], "window")};
  } else {
    throw ParameterError("unknown measure type '" + type + "'");
  }
  validate_measure(mu);
  return mu;
}

Json spectral_json(const SpectralMeasure& sigma) {
  return std::visit(detail::Overloaded{
                        [](const FiniteSpectral& f) {
                          Json comps = Json::array();
                          for (const SpectralComponent& c : f.components) {
                            comps.push_back({{"weight", c.weight}, {"measure", measure_json(c.measure)}});
                          }
                          return Json{{"type", "finite"}, {"components", comps}};
                        },
                        [](const TranslationFamily& tf) {
                          return Json{{"type", "translation"},
                                      {"kernel", measure_json(tf.kernel)},
                                      {"lambda", tf.intensity},
                                      {"window", to_json(tf.window)},
                                      {"margin", tf.margin}};
                        },
                    },
                    sigma);
}

SpectralMeasure parse_spectral(const Json& j, std::optional<Exponent> alpha) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParameterError("spectral measure needs a string 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  SpectralMeasure sigma;
  if (type == "finite") {
    check_keys(j, "finite spectral measure", {"type", "components"});
    if (!j["components"].is_array()) throw ParameterError("'components' must be an array");
    FiniteSpectral f;
    for (const Json& c : j["components"]) {
      check_keys(c, "spectral component", {"weight", "measure"});
      f.components.push_back({number(c["weight"], "weight"), parse_measure(c["measure"])});
    }
    sigma = f;
  } else if (type == "translation") {
    check_keys(j, "translation family", {"type", "kernel", "lambda", "window"}, {"margin"});
    TranslationFamily tf{parse_measure(j["kernel"]), number(j["lambda"], "lambda"),
                         rect(j["window"], "window"), 0.0};
    if (j.contains("margin")) {
      const Json& m = j["margin"];
      if (m.is_string() && m.get<std::string>() == "auto") {
        if (!alpha) throw ParameterError("'margin': \"auto\" needs alpha");
        tf.margin = suggest_margin(tf, *alpha);
      } else {
        tf.margin = number(m, "margin");
      }
    }
    sigma = tf;
  } else {
    throw ParameterError("unknown spectral type '" + type + "'");
  }
  validate_spectral(sigma);
  return sigma;
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto rethrow_json_errors(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("invalid JSON value: ") + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_pattern_csv(std::ostream& out, const PointPattern& pattern, PatternLayout layout) {
  out << (layout == PatternLayout::kPlanar ? "x,y,mult,cluster\n" : "label,mult,cluster\n");
  for (const PatternPoint& p : pattern.points()) {
    if (layout == PatternLayout::kPlanar) {
      const auto* q = std::get_if<Point2>(&p.location);
      if (!q) throw ParameterError("labelled point in a planar pattern");
      out << format_double(q->x) << ',' << format_double(q->y);
    } else {
      const auto* l = std::get_if<Label>(&p.location);
      if (!l) throw ParameterError("planar point in a discrete pattern");
      out << l->id;
    }
    out << ',' << p.multiplicity << ',';
    if (p.cluster) out << *p.cluster;
    out << '\n';
  }
}

std::string measure_to_json(const ProbabilityMeasureSpec& mu) { return measure_json(mu).dump(); }

ProbabilityMeasureSpec measure_from_json(std::string_view text) {
  const Json j = parse_text(text);
  return rethrow_json_errors([&] { return parse_measure(j); });
}

std::string spectral_to_json(const SpectralMeasure& sigma) { return spectral_json(sigma).dump(); }

SpectralMeasure spectral_from_json(std::string_view text, std::optional<Exponent> auto_margin_alpha) {
  const Json j = parse_text(text);
  return rethrow_json_errors([&] { return parse_spectral(j, auto_margin_alpha); });
}

std::string weighted_sample_to_json(const WeightedMeasureSample& sample) {
  Json measures = Json::array();
  for (const ProbabilityMeasureSpec& mu : sample.measures) measures.push_back(measure_json(mu));
  Json terms = Json::array();
  for (const WeightedTerm& t : sample.terms) {
    terms.push_back({{"weight", t.weight}, {"measure", t.measure}});
  }
  return Json{{"measures", measures}, {"terms", terms}, {"truncation_budget", sample.truncation_budget}}
      .dump();
}

std::string report_to_json(const TestReport& report, double level) {
  return Json{{"method", report.method},
              {"routes", report.routes},
              {"statistic", report.statistic},
              {"dof", report.dof},
              {"p_value", report.p_value},
              {"draws", report.draws},
              {"seed", report.seed},
              {"passed", report.passes(level)}}
      .dump(2);
}

void write_void_trace_csv(std::ostream& out, std::span<const VoidTracePoint> trace) {
  out << "draws,frequency,std_error\n";
  for (const VoidTracePoint& p : trace) {
    out << p.draws << ',' << format_double(p.frequency) << ',' << format_double(p.std_error) << '\n';
  }
}

void write_pmf_table_csv(std::ostream& out, const PmfTable& table) {
  for (std::size_t n = 0; n < table.box.size(); ++n) out << 'n' << n << ',';
  out << "probability\n";
  for (std::size_t flat = 0; flat < table.probabilities.size(); ++flat) {
    for (Count x : table.cell(flat)) out << x << ',';
    out << format_double(table.probabilities[flat]) << '\n';
  }
}

}  // namespace dastable
