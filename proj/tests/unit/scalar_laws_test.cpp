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

#include "dastable/scalar_laws.hpp"

#include <cmath>
#include <vector>

#include "dastable/errors.hpp"
#include "dastable/verify_stats.hpp"
#include "gtest/gtest.h"
#include "support/oracles.hpp"
#include "support/protocol.hpp"

namespace dastable {
namespace {

TEST(ExponentTest, RejectsOutsideUnitInterval) {
  EXPECT_THROW(Exponent(0.0), ParameterError);
  EXPECT_THROW(Exponent(1.5), ParameterError);
  EXPECT_THROW(Exponent(std::nan("")), ParameterError);
  EXPECT_NO_THROW(Exponent(1.0));
  EXPECT_TRUE(Exponent(1.0).is_one());
}

TEST(DiscreteStableParamsTest, RejectsNegativeScale) {
  EXPECT_THROW(DiscreteStableParams(-1.0, Exponent(0.5)), ParameterError);
  EXPECT_THROW(DiscreteStableParams(INFINITY, Exponent(0.5)), ParameterError);
  EXPECT_NO_THROW(DiscreteStableParams(0.0, Exponent(0.5)));
}

TEST(ThinIntegerTest, Boundaries) {
  RandomSource rng(1);
  EXPECT_EQ(thin_integer(5, 1.0, rng), 5u);
  EXPECT_EQ(thin_integer(7, 0.0, rng), 0u);
  EXPECT_THROW(thin_integer(3, -0.1, rng), ParameterError);
  EXPECT_THROW(thin_integer(3, 1.1, rng), ParameterError);
}

TEST(ThinIntegerTest, MatchesBinomialPmf) {
  RandomSource rng(2);
  constexpr int kDraws = 200000;
  std::vector<std::uint64_t> hits(11, 0);
  for (int i = 0; i < kDraws; ++i) {
    const Count k = thin_integer(10, 0.3, rng);
    ASSERT_LE(k, 10u);
    ++hits[k];
  }
  for (int k = 0; k <= 10; ++k) {
    const double p = oracle::binomial_pmf(10, k, 0.3);
    const double se = std::sqrt(p * (1 - p) / kDraws);
    EXPECT_NEAR(hits[k] / double(kDraws), p, 3.5 * se + 1e-12) << "k=" << k;
  }
}

TEST(SibuyaPmfTest, KnownValues) {
  EXPECT_DOUBLE_EQ(sibuya_pmf(Exponent(0.5), 1), 0.5);
  EXPECT_DOUBLE_EQ(sibuya_pmf(Exponent(0.5), 2), 0.125);
  EXPECT_DOUBLE_EQ(sibuya_pmf(Exponent(1.0), 1), 1.0);
  EXPECT_EQ(sibuya_pmf(Exponent(1.0), 2), 0.0);
  EXPECT_EQ(sibuya_pmf(Exponent(1.0), 17), 0.0);
  EXPECT_THROW(sibuya_pmf(Exponent(0.5), 0), DomainError);
}

TEST(SibuyaPmfTest, AgreesWithDirectProduct) {
  for (double a : {0.1, 0.3, 0.5, 0.8, 0.99}) {
    for (Count n : {1, 2, 3, 10, 57, 1000}) {
      EXPECT_NEAR(sibuya_pmf(Exponent(a), n), oracle::sibuya_pmf_product(a, n),
                  1e-12 * oracle::sibuya_pmf_product(a, n))
          << a << " " << n;
    }
  }
}

TEST(SibuyaSurvivalTest, KnownValues) {
  EXPECT_DOUBLE_EQ(sibuya_survival(Exponent(0.5), 0), 1.0);
  EXPECT_DOUBLE_EQ(sibuya_survival(Exponent(0.5), 1), 0.5);
  EXPECT_EQ(sibuya_survival(Exponent(1.0), 1), 0.0);
  const double direct = oracle::sibuya_survival_product(0.3, 10);
  EXPECT_NEAR(sibuya_survival(Exponent(0.3), 10), direct, 1e-12 * direct);
}

TEST(SibuyaSurvivalTest, MonotoneAndCompletesPmf) {
  for (double a : {0.2, 0.5, 0.9}) {
    const Exponent alpha(a);
    double cumulative = 0.0;
    double previous = 1.0;
    for (Count n = 1; n <= 10000; ++n) {
      cumulative += sibuya_pmf(alpha, n);
      const double s = sibuya_survival(alpha, n);
      ASSERT_LE(s, previous);
      ASSERT_GT(s, 0.0);
      previous = s;
      if (n % 97 == 0 || n == 10000) ASSERT_NEAR(cumulative + s, 1.0, 1e-12) << n;
    }
  }
}

TEST(SampleSibuyaTest, AlphaOneIsOne) {
  RandomSource rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_sibuya(Exponent(1.0), rng), 1u);
}

TEST(SampleSibuyaTest, GoodnessOfFit) {
  for (double a : {0.3, 0.5, 0.8}) {
    const int passed = testing_support::passing_repetitions(5, 4, [&](RandomSource& rng) {
      std::vector<Count> xs(100000);
      for (Count& x : xs) x = sample_sibuya(Exponent(a), rng);
      return gof_sibuya(xs, Exponent(a));
    });
    EXPECT_GE(passed, 4) << a;
  }
}

TEST(SampleSibuyaTest, MatchesLiteralBernoulliSampler) {
  const Exponent alpha(0.6);
  RandomSource a(5), b(6);
  Histogram inv, lit;
  for (int i = 0; i < 100000; ++i) {
    inv.add(static_cast<std::int64_t>(std::min<Count>(sample_sibuya(alpha, a), 200)));
    lit.add(static_cast<std::int64_t>(std::min<std::uint64_t>(oracle::literal_sibuya(0.6, b), 200)));
  }
  EXPECT_TRUE(chi_square_two_sample(inv, lit).passes());
}

TEST(SamplePositiveStableTest, AlphaOneIsOne) {
  RandomSource rng(7);
  EXPECT_EQ(sample_positive_stable(Exponent(1.0), rng), 1.0);
}

TEST(SamplePositiveStableTest, LaplaceTransform) {
  for (double a : {0.3, 0.5, 0.7}) {
    RandomSource rng(8);
    std::vector<double> xs(200000);
    for (double& x : xs) {
      x = sample_positive_stable(Exponent(a), rng);
      ASSERT_GT(x, 0.0);
    }
    for (double z : {0.5, 1.0, 2.0, 5.0}) {
      EXPECT_TRUE(empirical_laplace(xs, z).within(std::exp(-std::pow(z, a)), 3.5)) << a << " " << z;
    }
  }
}

TEST(SamplePositiveStableTest, HalfStableQuantilesMatchLevyLaw) {
  // For alpha = 1/2 the law is Levy with P{Z <= x} = erfc(1 / (2 sqrt(x))).
  RandomSource rng(9);
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_positive_stable(Exponent(0.5), rng);
  for (double q : {0.1, 0.5, 2.0, 10.0}) {
    const double p = std::erfc(1.0 / (2.0 * std::sqrt(q)));
    double hit = 0;
    for (double x : xs) hit += x <= q;
    EXPECT_NEAR(hit / xs.size(), p, 3.5 * std::sqrt(p * (1 - p) / xs.size())) << q;
  }
}

TEST(DiscreteStableRouteTest, Parsing) {
  EXPECT_EQ(parse_discrete_stable_route("poisson-mixture"), DiscreteStableRoute::kPoissonMixture);
  EXPECT_EQ(parse_discrete_stable_route("compound-sibuya"), DiscreteStableRoute::kCompoundSibuya);
  EXPECT_THROW(parse_discrete_stable_route("lepage"), ParameterError);
  EXPECT_EQ(to_string(DiscreteStableRoute::kCompoundSibuya), "compound-sibuya");
}

TEST(SampleDiscreteStableTest, ZeroScaleIsZero) {
  RandomSource rng(10);
  for (auto route : {DiscreteStableRoute::kPoissonMixture, DiscreteStableRoute::kCompoundSibuya}) {
    for (int i = 0; i < 100; ++i) {
      EXPECT_EQ(sample_discrete_stable({0.0, Exponent(0.5)}, route, rng), 0u);
    }
  }
}

TEST(SampleDiscreteStableTest, VoidAndSingletonProbabilities) {
  const DiscreteStableParams params(1.0, Exponent(0.5));
  for (auto route : {DiscreteStableRoute::kPoissonMixture, DiscreteStableRoute::kCompoundSibuya}) {
    RandomSource rng(11);
    constexpr int kDraws = 200000;
    double zero = 0, one = 0;
    for (int i = 0; i < kDraws; ++i) {
      const Count x = sample_discrete_stable(params, route, rng);
      zero += x == 0;
      one += x == 1;
    }
    const double p0 = std::exp(-1.0), p1 = 0.5 * std::exp(-1.0);
    EXPECT_NEAR(zero / kDraws, p0, 3.5 * std::sqrt(p0 * (1 - p0) / kDraws));
    EXPECT_NEAR(one / kDraws, p1, 3.5 * std::sqrt(p1 * (1 - p1) / kDraws));
  }
}

TEST(SampleDiscreteStableTest, RoutesAgree) {
  const DiscreteStableParams params(2.0, Exponent(0.6));
  RandomSource a(12), b(13);
  Histogram ha, hb;
  for (int i = 0; i < 100000; ++i) {
    ha.add(static_cast<std::int64_t>(std::min<Count>(
        sample_discrete_stable(params, DiscreteStableRoute::kPoissonMixture, a), 100)));
    hb.add(static_cast<std::int64_t>(std::min<Count>(
        sample_discrete_stable(params, DiscreteStableRoute::kCompoundSibuya, b), 100)));
  }
  EXPECT_TRUE(chi_square_two_sample(ha, hb).passes());
}

TEST(SampleDiscreteStableTest, AlphaOneIsPoisson) {
  RandomSource rng(14);
  MomentAccumulator m;
  for (int i = 0; i < 100000; ++i) {
    m.add(static_cast<double>(
        sample_discrete_stable({2.0, Exponent(1.0)}, DiscreteStableRoute::kCompoundSibuya, rng)));
  }
  EXPECT_NEAR(m.mean(), 2.0, 0.03);
  EXPECT_NEAR(m.variance(), 2.0, 0.06);
}

TEST(SampleDiscreteStableTest, ThinningStabilityFixedPoint) {
  const Exponent alpha(0.5);
  const DiscreteStableParams params(1.0, alpha);
  for (double t : {0.25, 0.5, 0.75}) {
    RandomSource rng(15);
    Histogram direct, thinned;
    const double p1 = std::pow(t, 1 / alpha.value()), p2 = std::pow(1 - t, 1 / alpha.value());
    for (int i = 0; i < 100000; ++i) {
      const auto route = DiscreteStableRoute::kCompoundSibuya;
      direct.add(static_cast<std::int64_t>(std::min<Count>(sample_discrete_stable(params, route, rng), 60)));
      const Count s = thin_integer(sample_discrete_stable(params, route, rng), p1, rng) +
                      thin_integer(sample_discrete_stable(params, route, rng), p2, rng);
      thinned.add(static_cast<std::int64_t>(std::min<Count>(s, 60)));
    }
    EXPECT_TRUE(chi_square_two_sample(direct, thinned).passes()) << t;
  }
}

TEST(SampleDiscreteStableTest, DoubleThinningSemigroup) {
  const DiscreteStableParams params(2.0, Exponent(0.7));
  RandomSource rng(16);
  Histogram nested, product;
  for (int i = 0; i < 100000; ++i) {
    const auto route = DiscreteStableRoute::kPoissonMixture;
    const Count a = thin_integer(thin_integer(sample_discrete_stable(params, route, rng), 0.6, rng), 0.5, rng);
    const Count b = thin_integer(sample_discrete_stable(params, route, rng), 0.3, rng);
    nested.add(static_cast<std::int64_t>(std::min<Count>(a, 60)));
    product.add(static_cast<std::int64_t>(std::min<Count>(b, 60)));
  }
  EXPECT_TRUE(chi_square_two_sample(nested, product).passes());
}

TEST(PmfOracleTest, AlphaOneIsPoisson) {
  const SeriesPmf s = discrete_stable_pmf_oracle({1.0, Exponent(1.0)}, 5);
  for (int n = 0; n <= 5; ++n) EXPECT_NEAR(s.pmf[n], oracle::poisson_pmf(n, 1.0), 1e-15);
}

TEST(PmfOracleTest, LeadingTerms) {
  const SeriesPmf s = discrete_stable_pmf_oracle({1.0, Exponent(0.5)}, 2);
  EXPECT_NEAR(s.pmf[0], std::exp(-1.0), 1e-15);
  EXPECT_NEAR(s.pmf[1], 0.5 * std::exp(-1.0), 1e-15);
  // Second derivative of exp{-(1-s)^{1/2}} at 0, halved: e^{-1} (1/8 + 1/8).
  EXPECT_NEAR(s.pmf[2], 0.25 * std::exp(-1.0), 1e-15);
}

TEST(PmfOracleTest, AgreesWithCompoundEnumeration) {
  for (double c : {0.5, 1.0, 2.0}) {
    for (double a : {0.3, 0.5, 0.8, 1.0}) {
      const SeriesPmf s = discrete_stable_pmf_oracle({c, Exponent(a)}, 40);
      const std::vector<double> ref = oracle::compound_sibuya_pmf(c, a, 40);
      double sum = 0;
      for (int n = 0; n <= 40; ++n) {
        EXPECT_NEAR(s.pmf[n], ref[n], 1e-13) << c << " " << a << " " << n;
        EXPECT_GE(s.pmf[n], 0.0);
        sum += s.pmf[n];
      }
      EXPECT_NEAR(s.tail_mass, 1.0 - sum, 1e-15);
      EXPECT_GE(s.tail_mass, -1e-15);
    }
  }
}

TEST(PmfOracleTest, ZeroScale) {
  const SeriesPmf s = discrete_stable_pmf_oracle({0.0, Exponent(0.5)}, 3);
  EXPECT_EQ(s.pmf[0], 1.0);
  EXPECT_EQ(s.pmf[1], 0.0);
}

TEST(PgfTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(discrete_stable_pgf({1.0, Exponent(0.5)}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(discrete_stable_pgf({1.0, Exponent(0.5)}, 0.0), std::exp(-1.0));
  EXPECT_DOUBLE_EQ(discrete_stable_pgf({3.0, Exponent(0.25)}, 0.5), std::exp(-3.0 * std::pow(0.5, 0.25)));
  EXPECT_THROW(discrete_stable_pgf({1.0, Exponent(0.5)}, 1.5), ParameterError);
}

TEST(PgfTest, EmpiricalPgfMatches) {
  const DiscreteStableParams params(3.0, Exponent(0.25));
  RandomSource rng(17);
  std::vector<Count> xs(200000);
  for (Count& x : xs) x = sample_discrete_stable(params, DiscreteStableRoute::kPoissonMixture, rng);
  EXPECT_TRUE(empirical_pgf(xs, 0.5).within(discrete_stable_pgf(params, 0.5), 3.5));
}

}  // namespace
}  // namespace dastable
