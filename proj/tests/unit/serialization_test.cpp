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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dastable/das_process.hpp"
#include "dastable/errors.hpp"
#include "gtest/gtest.h"

namespace dastable {
namespace {

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(3.0), "3");
  EXPECT_EQ(format_double(-2.5e-12), "-2.5e-12");
  RandomSource rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.uniform() * 200) - 100);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(PatternCsvTest, PlanarAndDiscreteLayouts) {
  PointPattern planar;
  planar.add(Point2{0.25, 0.5}, 3, 7);
  planar.add(Point2{1, 0});
  std::ostringstream out;
  write_pattern_csv(out, planar, PatternLayout::kPlanar);
  EXPECT_EQ(out.str(), "x,y,mult,cluster\n0.25,0.5,3,7\n1,0,1,\n");

  PointPattern discrete;
  discrete.add(Label{4}, 2);
  std::ostringstream d;
  write_pattern_csv(d, discrete, PatternLayout::kDiscrete);
  EXPECT_EQ(d.str(), "label,mult,cluster\n4,2,\n");

  std::ostringstream bad;
  EXPECT_THROW(write_pattern_csv(bad, discrete, PatternLayout::kPlanar), ParameterError);
}

TEST(MeasureJsonTest, RoundTripsEveryKind) {
  const std::vector<ProbabilityMeasureSpec> measures{
      Atomic{{{Label{0}, 0.25}, {Label{3}, 0.75}}}, UniformOnBall{{0.1, 0.2}, 0.3},
      GaussianKernel{{0, 0}, 0.03}, UniformOnWindow{{0, 0, 1, 2}}};
  for (const ProbabilityMeasureSpec& mu : measures) {
    const std::string text = measure_to_json(mu);
    EXPECT_EQ(measure_to_json(measure_from_json(text)), text);
    EXPECT_EQ(measure_from_json(text).index(), mu.index());
  }
  EXPECT_NEAR(measure_mass(measure_from_json(measure_to_json(measures[1])), Rect{0, 0, 1, 1}),
              measure_mass(measures[1], Rect{0, 0, 1, 1}), 0.0);
}

TEST(MeasureJsonTest, RejectsMalformedDocuments) {
  for (const char* text : {
           R"({"type": "ball", "center": [0, 0], "radius": 1, "colour": "red"})",
           R"({"type": "ball", "center": [0, 0]})",
           R"({"type": "ball", "center": [0], "radius": 1})",
           R"({"type": "ball", "center": [0, 0], "radius": -1})",
           R"({"type": "cone"})",
           R"({"type": "atomic", "atoms": [{"label": 0, "weight": 0.4}]})",
           R"({"type": "gaussian", "center": [0, 0], "scale": "wide"})",
           R"([1, 2])",
           R"({"type": )",
       }) {
    EXPECT_THROW(measure_from_json(text), ParameterError) << text;
  }
}

TEST(SpectralJsonTest, FiniteRoundTrip) {
  const SpectralMeasure sigma =
      FiniteSpectral{{{2.0, GaussianKernel{{0.5, 0.5}, 0.1}}, {0.5, dirac(Label{2})}}};
  const std::string text = spectral_to_json(sigma);
  const SpectralMeasure back = spectral_from_json(text);
  EXPECT_EQ(spectral_to_json(back), text);
  EXPECT_DOUBLE_EQ(spectral_total(back), 2.5);
}

TEST(SpectralJsonTest, TranslationFamilyAndAutoMargin) {
  const std::string text = R"({"type": "translation", "kernel": {"type": "gaussian", "center": [0, 0], "scale": 0.03},
                                "lambda": 50, "window": [0, 0, 1, 1], "margin": "auto"})";
  EXPECT_THROW(spectral_from_json(text), ParameterError);
  const SpectralMeasure sigma = spectral_from_json(text, Exponent(0.5));
  const auto& tf = std::get<TranslationFamily>(sigma);
  EXPECT_DOUBLE_EQ(tf.margin, suggest_margin(TranslationFamily{tf.kernel, 50, {0, 0, 1, 1}, 0}, Exponent(0.5)));
  EXPECT_GT(tf.margin, 0.0);
  EXPECT_EQ(tf.intensity, 50.0);
  const SpectralMeasure back = spectral_from_json(spectral_to_json(sigma));
  EXPECT_EQ(std::get<TranslationFamily>(back).margin, tf.margin);
  EXPECT_THROW(spectral_from_json(R"({"type": "translation", "kernel": {"type": "gaussian", "center": [0, 0],
      "scale": 0.03}, "lambda": 50, "window": [0, 0, 1, 1], "margin": 0.1, "extra": 1})"),
               ParameterError);
  EXPECT_EQ(spectral_total(spectral_from_json(R"({"type": "finite", "components": []})")), 0.0);
}

TEST(ReportJsonTest, FieldsInOrder) {
  TestReport r;
  r.method = "route-equivalence";
  r.routes = {"cluster", "cox"};
  r.statistic = 12.5;
  r.dof = 9;
  r.p_value = 0.25;
  r.draws = 1000;
  r.seed = 42;
  const std::string text = report_to_json(r);
  std::vector<std::size_t> positions;
  for (const char* key : {"\"method\"", "\"routes\"", "\"statistic\"", "\"dof\"", "\"p_value\"", "\"draws\"",
                          "\"seed\"", "\"passed\""}) {
    positions.push_back(text.find(key));
    ASSERT_NE(positions.back(), std::string::npos) << key;
  }
  EXPECT_TRUE(std::is_sorted(positions.begin(), positions.end()));
  EXPECT_NE(text.find("\"passed\": true"), std::string::npos);
  EXPECT_NE(report_to_json(r, 0.5).find("\"passed\": false"), std::string::npos);
}

TEST(WeightedSampleJsonTest, ListsMeasuresAndTerms) {
  WeightedMeasureSample s;
  s.measures = {dirac(Label{1})};
  s.terms = {{0.5, 0}, {0.25, 0}};
  s.truncation_budget = 1e-4;
  const std::string text = weighted_sample_to_json(s);
  EXPECT_NE(text.find("\"terms\""), std::string::npos);
  EXPECT_NE(text.find("0.0001"), std::string::npos);
  EXPECT_NE(text.find("\"atomic\""), std::string::npos);
}

TEST(TableCsvTest, VoidTraceAndPmf) {
  const std::vector<VoidTracePoint> trace{{10, 0.5, 0.125}};
  std::ostringstream out;
  write_void_trace_csv(out, trace);
  EXPECT_EQ(out.str(), "draws,frequency,std_error\n10,0.5,0.125\n");

  const PmfTable t = vector_pmf_oracle(SimplexMeasure{{{1.0, {0.5, 0.5}}}}, Exponent(1.0), std::vector<Count>{1, 1});
  std::ostringstream pmf;
  write_pmf_table_csv(pmf, t);
  std::istringstream lines(pmf.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n0,n1,probability");
  std::getline(lines, line);
  EXPECT_EQ(line, "0,0," + format_double(std::exp(-1.0)));
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

}  // namespace
}  // namespace dastable
