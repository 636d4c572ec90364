// Copyright 2026 The sampriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "sampriv/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sampriv/tradeoff.hpp"
#include "sampriv/verify.hpp"

namespace sampriv {
namespace {

TEST(OracleDivergenceTest, AgreesWithPushforward) {
  const auto db = DatabaseModel::iid(Pmf::bernoulli(0.3), 3);
  const auto t = TemplateDistribution::without_replacement(3, 2);
  for (double eps : {0.0, 0.4, 1.3}) {
    const double want = hockey_stick(technique_pushforward(condition(db, 0, 1.0), t, Query::sum()),
                                     technique_pushforward(condition(db, 0, 0.0), t, Query::sum()),
                                     eps);
    EXPECT_NEAR(oracle_divergence(condition(db, 0, 1.0), condition(db, 0, 0.0), t, Query::sum(),
                                  eps),
                want, 1e-12);
  }
}

TEST(OracleDivergenceTest, Examples) {
  const auto db = DatabaseModel::iid(Pmf::bernoulli(0.5), 2);
  const auto t = TemplateDistribution::without_replacement(2, 1);
  EXPECT_NEAR(oracle_max_divergence(db, 0, t, Query::sum(), 0.0), 0.5, 1e-15);
  EXPECT_EQ(oracle_max_divergence(db, 0, t, Query::sum(), 50.0), 0.0);
  const auto full = TemplateDistribution::without_replacement(2, 2);
  EXPECT_EQ(oracle_max_divergence(db, 0, full, Query::constant(1.0), 0.0), 0.0);
}

TEST(OracleDivergenceTest, MatchesSampledFormula) {
  for (double p : {0.3, 0.5}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto db = DatabaseModel::iid(Pmf::bernoulli(p), static_cast<int>(n));
      for (double lam : {0.25, 0.75}) {
        const auto t = TemplateDistribution::poisson(n, lam);
        for (double eps : {0.0, 0.5, 1.0}) {
          EXPECT_NEAR(oracle_max_divergence(db, 0, t, Query::sum(), eps),
                      sampled_max_divergence(db, 0, t, Query::sum(), eps), 1e-12);
        }
      }
    }
  }
}

TEST(OracleDivergenceTest, Budget) {
  const auto db = DatabaseModel::iid(Pmf::bernoulli(0.5), 10);
  const auto t = TemplateDistribution::without_replacement(10, 5);
  EXPECT_THROW(oracle_max_divergence(db, 0, t, Query::sum(), 0.0, 1000), BudgetExceeded);
}

TEST(OracleTradeoffTest, Examples) {
  const Pmf mu({0.0, 1.0}, {0.75, 0.25});
  const Pmf nu({0.0, 1.0}, {0.25, 0.75});
  EXPECT_NEAR(oracle_tradeoff(mu, mu, 0.3), 0.7, 1e-15);
  EXPECT_EQ(oracle_tradeoff(Pmf::point_mass(0.0), Pmf::point_mass(1.0), 0.3), 0.0);
  EXPECT_NEAR(oracle_tradeoff(mu, nu, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(oracle_tradeoff(mu, nu, 0.25), 0.25, 1e-15);
  EXPECT_NEAR(oracle_tradeoff(mu, nu, 1.0), 0.0, 1e-15);

  std::vector<double> xs(13);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
  const Pmf wide(xs, std::vector<double>(13, 1.0 / 13.0));
  EXPECT_THROW(oracle_tradeoff(wide, wide, 0.5), InvalidArgument);
}

TEST(OracleTradeoffTest, AgreesWithNeymanPearson) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Pmf mu = random_pmf(rng, 1 + trial % 10);
    const Pmf nu = random_pmf(rng, 1 + (trial / 10) % 10);
    const auto t = tradeoff_from_pmfs(mu, nu);
    for (double x : t.breakpoints()) EXPECT_NEAR(t(x), oracle_tradeoff(mu, nu, x), 1e-10);
    for (int k = 0; k <= 20; ++k) {
      EXPECT_NEAR(t(k / 20.0), oracle_tradeoff(mu, nu, k / 20.0), 1e-10);
    }
  }
}

}  // namespace
}  // namespace sampriv
