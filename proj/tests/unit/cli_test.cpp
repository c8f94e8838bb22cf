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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dastable/cli/config.hpp"
#include "dastable/cli/svg.hpp"
#include "dastable/errors.hpp"
#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace dastable::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

const fs::path kExamples = DASTABLE_EXAMPLES_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("dastable_cli_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = root_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  // Runs the tool in-process and returns its exit code.
  int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"dastable"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  int run_config(const std::string& command, const fs::path& config, const fs::path& out,
                 std::vector<std::string> extra = {}) {
    std::vector<std::string> args{command, "--config", config.string(), "--out", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }

  fs::path root_;
  std::ostringstream out_, err_;
};

const char* kFiniteOne = R"({"type": "finite", "components": [
  {"weight": 1.5, "measure": {"type": "uniform_window", "window": [0, 0, 1, 1]}}]})";

std::string stability_config(const std::string& extra_test) {
  return std::string(R"({"alpha": 0.5, "seed": 3, "draws": 20000, "spectral": )") + kFiniteOne +
         R"(, "bins": [{"rect": [0, 0, 0.5, 1]}, {"rect": [0.5, 0, 1, 1]}],
            "test": {"name": "stability", "t": 0.5)" +
         extra_test + "}}";
}

TEST_F(CliTest, EveryExampleConfigValidates) {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(kExamples)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    SCOPED_TRACE(entry.path().string());
    const ExperimentConfig c = parse_config(slurp(entry.path()));
    // The canonical form parses back to the same canonical form.
    EXPECT_EQ(canonical_config(parse_config(canonical_config(c))), canonical_config(c));
  }
  EXPECT_GE(seen, 5);
}

TEST_F(CliTest, HelpAndCommandLineErrors) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_EQ(run({}), kExitConfigError);
  EXPECT_EQ(run({"frobnicate"}), kExitConfigError);
  EXPECT_EQ(run({"sample"}), kExitConfigError);
  EXPECT_EQ(run({"sample", "--config", (root_ / "missing.json").string()}), kExitConfigError);
  const fs::path cfg = write_config("c.json", R"({"alpha": 0.5, "basis": {"primes": [2], "weights": [0.1]}})");
  EXPECT_EQ(run_config("sample", cfg, root_ / "o", {"--workers", "0"}), kExitConfigError);
  EXPECT_EQ(run_config("sample", cfg, root_ / "o", {"--seed", "-4"}), kExitConfigError);
  // A regular file where the output directory should be.
  std::ofstream(root_ / "blocked") << "x";
  EXPECT_EQ(run_config("sample", cfg, root_ / "blocked"), kExitConfigError);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, EmptySpectralGivesHeaderOnlyCsv) {
  const fs::path cfg = write_config("e.json", R"({"alpha": 0.5, "spectral": {"type": "finite", "components": []}})");
  ASSERT_EQ(run_config("sample", cfg, root_ / "a"), kExitOk) << err_.str();
  EXPECT_EQ(slurp(root_ / "a" / "pattern.csv"), "label,mult,cluster\n");
  const fs::path planar = write_config(
      "p.json", R"({"alpha": 0.5, "window": [0, 0, 1, 1], "spectral": {"type": "finite", "components": []}})");
  ASSERT_EQ(run_config("sample", planar, root_ / "b"), kExitOk) << err_.str();
  EXPECT_EQ(slurp(root_ / "b" / "pattern.csv"), "x,y,mult,cluster\n");
  const Json prov = Json::parse(slurp(root_ / "b" / "provenance.json"));
  EXPECT_EQ(prov["summary"]["points"], 0);
  EXPECT_EQ(prov["seed"], 0);
}

TEST_F(CliTest, FixedSeedIsByteIdentical) {
  const fs::path gaussian = kExamples / "gaussian_clusters.json";
  const fs::path counts = write_config("k.json", std::string(R"({"alpha": 0.7, "draws": 500, "spectral": )") +
                                                     kFiniteOne + R"(, "bins": [{"rect": [0, 0, 0.3, 0.3]}]})");
  for (const fs::path& cfg : {gaussian, counts}) {
    for (const char* workers : {"1", "3"}) {
      ASSERT_EQ(run_config("sample", cfg, root_ / "r1", {"--workers", workers, "--seed", "99"}), kExitOk) << err_.str();
      ASSERT_EQ(run_config("sample", cfg, root_ / "r2", {"--workers", workers, "--seed", "99"}), kExitOk) << err_.str();
      int files = 0;
      for (const auto& entry : fs::directory_iterator(root_ / "r1")) {
        ++files;
        EXPECT_EQ(slurp(entry.path()), slurp(root_ / "r2" / entry.path().filename())) << entry.path();
      }
      EXPECT_GE(files, 2);
      fs::remove_all(root_ / "r1");
      fs::remove_all(root_ / "r2");
    }
  }
  // A different seed changes the realization.
  ASSERT_EQ(run_config("sample", gaussian, root_ / "s1", {"--seed", "1"}), kExitOk);
  ASSERT_EQ(run_config("sample", gaussian, root_ / "s2", {"--seed", "2"}), kExitOk);
  EXPECT_NE(slurp(root_ / "s1" / "pattern.svg"), slurp(root_ / "s2" / "pattern.svg"));
}

TEST_F(CliTest, GaussianExampleRendersGrayClusters) {
  ASSERT_EQ(run_config("sample", kExamples / "gaussian_clusters.json", root_ / "g"), kExitOk) << err_.str();
  const std::string svg = slurp(root_ / "g" / "pattern.svg");
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // Every fill is a gray.
  std::size_t pos = 0, circles = 0;
  while ((pos = svg.find("<circle", pos)) != std::string::npos) {
    const std::size_t f = svg.find("fill=\"#", pos) + 7;
    const std::string hex = svg.substr(f, 6);
    EXPECT_EQ(hex.substr(0, 2), hex.substr(2, 2));
    EXPECT_EQ(hex.substr(0, 2), hex.substr(4, 2));
    ++circles;
    ++pos;
  }
  const Json prov = Json::parse(slurp(root_ / "g" / "provenance.json"));
  EXPECT_EQ(circles, prov["summary"]["points"].get<std::size_t>());
  EXPECT_GT(prov["summary"]["clusters"].get<int>(), 5);
}

TEST_F(CliTest, SvgColorsByClusterAndScalesToWindow) {
  PointPattern p;
  p.add(Point2{0, 0}, 1, 4);
  p.add(Point2{1, 1}, 4, std::nullopt);
  const std::string svg = render_svg(p, Rect{0, 0, 1, 1}, SvgStyle{}, "t<1>");
  EXPECT_NE(svg.find("<title>t&lt;1&gt;</title>"), std::string::npos);
  EXPECT_NE(svg.find("cx=\"0.00\" cy=\"800.00\" r=\"1.50\""), std::string::npos);
  EXPECT_NE(svg.find("cx=\"800.00\" cy=\"0.00\" r=\"3.00\" fill=\"#000000\""), std::string::npos);
  EXPECT_EQ(cluster_gray(4), cluster_gray(4));
  EXPECT_EQ(cluster_gray(std::nullopt), 0);
  PointPattern discrete;
  discrete.add(Label{1});
  EXPECT_THROW(render_svg(discrete, Rect{0, 0, 1, 1}, SvgStyle{}, ""), ParameterError);
  SvgStyle tiny;
  tiny.max_points = 1;
  EXPECT_THROW(render_svg(p, Rect{0, 0, 1, 1}, tiny, ""), ResourceError);
}

TEST_F(CliTest, StabilityPassesAndCorruptedAlphaFails) {
  ASSERT_EQ(run_config("test", write_config("s.json", stability_config("")), root_ / "ok"), kExitOk) << out_.str();
  const Json ok = Json::parse(slurp(root_ / "ok" / "report.json"));
  EXPECT_TRUE(ok["passed"].get<bool>());
  EXPECT_EQ(ok["seed"], 3);
  EXPECT_EQ(run_config("test", write_config("f.json", stability_config(R"(, "thinning_alpha": 0.9)")), root_ / "bad"),
            kExitTestFailed);
  const Json bad = Json::parse(slurp(root_ / "bad" / "report.json"));
  EXPECT_FALSE(bad["passed"].get<bool>());
  EXPECT_LT(bad["p_value"].get<double>(), 1e-6);
}

TEST_F(CliTest, RouteEquivalenceCoxVersusCluster) {
  const std::string cfg = std::string(R"({"alpha": 0.8, "seed": 4, "draws": 20000, "spectral": )") + kFiniteOne +
                          R"(, "bins": [{"rect": [0, 0, 0.5, 0.5]}], "test": {"name": "route-equivalence"}})";
  EXPECT_EQ(run_config("test", write_config("r.json", cfg), root_ / "o"), kExitOk) << out_.str();
}

TEST_F(CliTest, GofAvoidanceAndMultNaturalsTests) {
  const std::string gof = R"({"alpha": 0.5, "seed": 8, "draws": 50000,
      "test": {"name": "gof", "law": "discrete-stable", "scale": 2, "max_cell": 30}})";
  EXPECT_EQ(run_config("test", write_config("g.json", gof), root_ / "g"), kExitOk) << out_.str();
  const std::string avoid = std::string(R"({"alpha": 0.5, "seed": 8, "draws": 20000, "spectral": )") + kFiniteOne +
                            R"(, "test": {"name": "avoidance", "set": {"rect": [0, 0, 0.4, 0.4]}}})";
  EXPECT_EQ(run_config("test", write_config("a.json", avoid), root_ / "a"), kExitOk) << out_.str();
  EXPECT_EQ(run_config("test", kExamples / "mult_naturals.json", root_ / "m", {"--workers", "2"}), kExitOk)
      << out_.str();
  // A test section the config cannot support.
  const std::string no_bins = std::string(R"({"alpha": 0.5, "spectral": )") + kFiniteOne +
                              R"(, "test": {"name": "stability"}})";
  EXPECT_EQ(run_config("test", write_config("n.json", no_bins), root_ / "n"), kExitConfigError);
}

TEST_F(CliTest, UnsupportedRouteExitsThree) {
  const std::string cfg = R"({"alpha": 0.5, "route": "lepage", "spectral": {"type": "translation",
      "kernel": {"type": "gaussian", "center": [0, 0], "scale": 0.03}, "lambda": 10, "window": [0, 0, 1, 1]}})";
  EXPECT_EQ(run_config("sample", write_config("l.json", cfg), root_ / "o"), kExitUnsupported);
  EXPECT_NE(err_.str().find("unsupported"), std::string::npos);
}

TEST_F(CliTest, TablesMatchLibraryValues) {
  const std::string cfg = R"({"alpha": 0.5, "basis": {"primes": [2, 3, 5], "weights": [0.1, 0.2, 0.3]},
    "tables": [
      {"kind": "discrete-stable-pmf", "file": "ds.csv", "alphas": [0.5], "scale": 1, "n_max": 30},
      {"kind": "sibuya-pmf", "file": "sib.csv", "alphas": [0.3, 0.5, 0.8], "n_max": 50},
      {"kind": "mult-naturals", "file": "mn.csv", "max_n": 30}]})";
  ASSERT_EQ(run_config("tables", write_config("t.json", cfg), root_ / "t"), kExitOk) << err_.str();

  const auto rows = [&](const std::string& file) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(slurp(root_ / "t" / file));
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.rfind("# ", 0) == 0) continue;
      if (header) {
        header = false;
        continue;
      }
      std::vector<std::string> cells;
      std::istringstream ls(line);
      for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
      out.push_back(cells);
    }
    return out;
  };

  const auto ds = rows("ds.csv");
  ASSERT_EQ(ds.size(), 31u);
  double mass = 0;
  for (const auto& r : ds) mass += std::stod(r[2]);
  EXPECT_NEAR(std::stod(ds[0][2]), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(std::stod(ds[1][2]), 0.5 * std::exp(-1.0), 1e-15);
  EXPECT_GT(mass, 0.85);
  EXPECT_LT(mass, 1.0);

  const auto sib = rows("sib.csv");
  ASSERT_EQ(sib.size(), 150u);
  for (const auto& r : sib) {
    const double a = std::stod(r[0]);
    const int n = std::stoi(r[1]);
    // q_n = (a/n) prod_{k<n} (1 - a/k)
    double q = a / n;
    for (int k = 1; k < n; ++k) q *= 1.0 - a / k;
    EXPECT_NEAR(std::stod(r[2]), q, 1e-12 * q);
  }

  // Prime rows at alpha = 1/2 are half the prime weight times e^{-total weight}.
  const auto mn = rows("mn.csv");
  const double total = 0.6;
  for (const auto& [q, w] : std::vector<std::pair<int, double>>{{2, 0.1}, {3, 0.2}, {5, 0.3}}) {
    bool found = false;
    for (const auto& r : mn) {
      if (std::stoi(r[1]) != q) continue;
      found = true;
      EXPECT_NEAR(std::stod(r[2]), 0.5 * w * std::exp(-total), 1e-14);
    }
    EXPECT_TRUE(found) << q;
  }
  EXPECT_TRUE(fs::exists(root_ / "t" / "provenance.json"));
  EXPECT_EQ(slurp(root_ / "t" / "ds.csv").rfind("# dastable ", 0), 0u);
}

// Replaces one random node of `j` with a value of an incompatible JSON type.
void corrupt_node(Json& j, RandomSource& rng) {
  std::vector<Json*> nodes;
  const auto collect = [&](const auto& self, Json& node) -> void {
    if (&node != &j) nodes.push_back(&node);
    if (node.is_structured()) {
      for (Json& child : node) self(self, child);
    }
  };
  collect(collect, j);
  Json& target = *nodes[rng.next_u64() % nodes.size()];
  target = target.is_boolean() ? Json("maybe") : Json(true);
}

TEST_F(CliTest, FuzzedInvalidConfigsExitTwo) {
  std::vector<std::string> valid;
  for (const auto& entry : fs::directory_iterator(kExamples)) {
    if (entry.path().extension() == ".json") valid.push_back(slurp(entry.path()));
  }
  std::sort(valid.begin(), valid.end());
  RandomSource rng(20261016);
  const char* commands[] = {"sample", "test", "tables"};
  for (int i = 0; i < 300; ++i) {
    const std::string& base = valid[rng.next_u64() % valid.size()];
    std::string text;
    switch (i % 4) {
      case 0: {  // wrong-typed value somewhere
        Json j = Json::parse(base);
        corrupt_node(j, rng);
        text = j.dump();
        break;
      }
      case 1: {  // unknown key in a random object
        Json j = Json::parse(base);
        std::vector<Json*> objects{&j};
        for (auto& [k, v] : j.items()) {
          if (v.is_object()) objects.push_back(&v);
        }
        (*objects[rng.next_u64() % objects.size()])["unexpected_" + std::to_string(i)] = 1;
        text = j.dump();
        break;
      }
      case 2:  // truncated document
        text = base.substr(0, rng.next_u64() % (base.size() - 2) + 1);
        break;
      default: {  // random bytes spliced in
        text = base;
        const std::size_t at = rng.next_u64() % text.size();
        text.insert(at, std::string(1 + rng.next_u64() % 4, static_cast<char>(rng.next_u64() % 256)));
        if (Json::accept(text)) text += "}";
        break;
      }
    }
    SCOPED_TRACE(text);
    const fs::path cfg = write_config("fuzz.json", text);
    const int code = run_config(commands[i % 3], cfg, root_ / "fuzz");
    EXPECT_EQ(code, kExitConfigError) << err_.str();
    EXPECT_FALSE(err_.str().empty());
  }
}

}  // namespace
}  // namespace dastable::cli
