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

#include "sampriv/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "sampriv/verify.hpp"

namespace sampriv {
namespace {

double total_probability(const TemplateDistribution& t) {
  double s = 0.0;
  for (const auto& wt : t.support()) s += wt.probability;
  return s;
}

// Sum-query answer distribution of the sampled database, enumerating every
// database realization and template jointly.
std::map<double, double> joint_sum(const DatabaseModel& db, const TemplateDistribution& t) {
  std::map<double, double> out;
  const std::size_t n = db.size();
  const std::size_t w = db.support().size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= w;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> x(n);
    double p = 1.0;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = c % w;
      c /= w;
      x[i] = db.support()[k];
      p *= db.effective_entry(i).weights()[k];
    }
    for (const auto& wt : t.support()) {
      double s = 0.0;
      for (std::size_t idx : wt.indices) s += x[idx];
      out[std::round(s * 1e9) / 1e9] += p * wt.probability;
    }
  }
  return out;
}

TEST(TemplateDistributionTest, Shapes) {
  const auto wor = TemplateDistribution::without_replacement(5, 3);
  EXPECT_EQ(wor.support().size(), 10u);
  EXPECT_NEAR(total_probability(wor), 1.0, 1e-12);
  for (const auto& wt : wor.support()) {
    EXPECT_TRUE(std::is_sorted(wt.indices.begin(), wt.indices.end()));
    EXPECT_EQ(std::adjacent_find(wt.indices.begin(), wt.indices.end()), wt.indices.end());
  }
  const auto poi = TemplateDistribution::poisson(4, 0.3);
  EXPECT_EQ(poi.support().size(), 16u);
  EXPECT_NEAR(total_probability(poi), 1.0, 1e-12);
  const auto wr = TemplateDistribution::with_replacement(3, 3);
  EXPECT_EQ(wr.support().size(), 27u);
  EXPECT_NEAR(total_probability(wr), 1.0, 1e-12);
  EXPECT_THROW(TemplateDistribution::without_replacement(2, 3), InvalidArgument);
  EXPECT_THROW(TemplateDistribution::poisson(2, 1.5), InvalidArgument);
  EXPECT_THROW(TemplateDistribution::with_replacement(10, 10, 1000), BudgetExceeded);
}

TEST(ApplyTemplateTest, Examples) {
  const auto db3 = DatabaseModel::iid(Pmf::bernoulli(0.5), 3);
  EXPECT_EQ(apply_template(db3, {0, 1, 2}, Query::sum()), pushforward(db3, Query::sum()));
  const auto db2 = DatabaseModel::iid(Pmf::bernoulli(0.5), 2);
  const Pmf dup = apply_template(db2, {0, 0}, Query::sum());
  EXPECT_EQ(dup, Pmf({0.0, 2.0}, {0.5, 0.5}));
  EXPECT_EQ(apply_template(db2, {}, Query::constant(3.0)), Pmf::point_mass(3.0));
  EXPECT_THROW(apply_template(db2, {2}, Query::sum()), InvalidArgument);
}

TEST(TechniquePushforwardTest, Examples) {
  const auto db2 = DatabaseModel::iid(Pmf::bernoulli(0.5), 2);
  const Pmf p = technique_pushforward(condition(db2, 0, 1.0),
                                      TemplateDistribution::without_replacement(2, 1),
                                      Query::sum());
  EXPECT_TRUE(approx_equal(p, Pmf({0.0, 1.0}, {0.25, 0.75}), 1e-15));

  const auto db3 = DatabaseModel::iid(Pmf::bernoulli(0.3), 3);
  EXPECT_TRUE(approx_equal(
      technique_pushforward(db3, TemplateDistribution::without_replacement(3, 3), Query::sum()),
      pushforward(db3, Query::sum()), 1e-15));

  const DatabaseModel point({Pmf::point_mass(1.0)});
  const Pmf q = technique_pushforward(point, TemplateDistribution::poisson(1, 0.3), Query::sum());
  EXPECT_TRUE(approx_equal(q, Pmf({0.0, 1.0}, {0.7, 0.3}), 1e-15));
}

TEST(TechniquePushforwardTest, MatchesJointEnumeration) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Pmf> entries;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = u(rng), b = u(rng), c = u(rng);
      const double s = a + b + c;
      entries.emplace_back(std::vector<double>{0.0, 1.0, 2.5},
                           std::vector<double>{a / s, b / s, c / s});
    }
    const DatabaseModel db(entries);
    std::vector<TemplateDistribution> ts = {
        TemplateDistribution::without_replacement(n, (n + 1) / 2),
        TemplateDistribution::poisson(n, u(rng)),
        TemplateDistribution::with_replacement(n, std::min<std::size_t>(n, 3))};
    for (const auto& t : ts) {
      const Pmf got = technique_pushforward(db, t, Query::sum());
      const auto want = joint_sum(db, t);
      ASSERT_EQ(got.size(), want.size());
      std::size_t i = 0;
      for (const auto& [a, w] : want) {
        EXPECT_NEAR(got.outcomes()[i], a, 1e-9);
        EXPECT_NEAR(got.weights()[i], w, 1e-12);
        ++i;
      }
    }
  }
}

TEST(ConditionedViewTest, EventProbabilities) {
  const auto wor = TemplateDistribution::without_replacement(5, 2);
  EXPECT_NEAR(event_probability(wor, DrawnAtLeastOnce{3}), 2.0 / 5.0, 1e-15);

  const std::size_t n = 3, m = 4;
  const auto wr = TemplateDistribution::with_replacement(n, m);
  for (std::size_t k = 0; k <= m; ++k) {
    const double want = std::exp(log_choose(4, static_cast<int>(k))) *
                        std::pow(1.0 / 3.0, static_cast<double>(k)) *
                        std::pow(2.0 / 3.0, static_cast<double>(m - k));
    EXPECT_NEAR(event_probability(wr, DrawnExactly{1, k}), want, 1e-12);
  }

  const double lam = 0.4;
  const auto poi = TemplateDistribution::poisson(4, lam);
  for (std::size_t size = 0; size <= 4; ++size) {
    const double want = std::exp(log_choose(4, static_cast<int>(size))) *
                        std::pow(lam, static_cast<double>(size)) *
                        std::pow(1 - lam, static_cast<double>(4 - size));
    EXPECT_NEAR(event_probability(poi, SampleSize{size}), want, 1e-12);
    const auto view = conditioned_view(poi, SampleSize{size});
    for (const auto& wt : view.support()) {
      EXPECT_EQ(wt.indices.size(), size);
      EXPECT_NEAR(wt.probability, 1.0 / std::exp(log_choose(4, static_cast<int>(size))),
                  1e-12);
    }
  }
  EXPECT_THROW(conditioned_view(wor, SampleSize{3}), ZeroProbabilityEvent);
}

TEST(ConditionedViewTest, ViewsRecombine) {
  const auto wr = TemplateDistribution::with_replacement(3, 3);
  std::map<Template, double> acc;
  for (std::size_t k = 0; k <= 3; ++k) {
    const double pk = event_probability(wr, DrawnExactly{0, k});
    const auto view = conditioned_view(wr, DrawnExactly{0, k});
    for (const auto& wt : view.support()) {
      acc[wt.indices] += pk * wt.probability;
    }
  }
  ASSERT_EQ(acc.size(), wr.support().size());
  for (const auto& wt : wr.support()) EXPECT_NEAR(acc[wt.indices], wt.probability, 1e-15);
}

TEST(MatchedCouplingTest, Examples) {
  const auto t21 = TemplateDistribution::without_replacement(2, 1);
  const auto pairs = matched_coupling(conditioned_view(t21, DrawnAtLeastOnce{0}),
                                      conditioned_view(t21, NeverDrawn{0}), 0);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].plus, Template{0});
  EXPECT_EQ(pairs[0].minus, Template{1});
  EXPECT_NEAR(pairs[0].probability, 1.0, 1e-15);

  const auto t31 = TemplateDistribution::without_replacement(3, 1);
  const auto p3 = matched_coupling(conditioned_view(t31, DrawnAtLeastOnce{0}),
                                   conditioned_view(t31, NeverDrawn{0}), 0);
  ASSERT_EQ(p3.size(), 2u);
  EXPECT_EQ(p3[0].minus, Template{1});
  EXPECT_EQ(p3[1].minus, Template{2});
  EXPECT_NEAR(p3[0].probability, 0.5, 1e-15);
}

TEST(MatchedCouplingTest, MarginalsAndAgreementOffJ) {
  for (const auto& t : {TemplateDistribution::without_replacement(4, 2),
                        TemplateDistribution::with_replacement(3, 3)}) {
    const auto plus = conditioned_view(t, DrawnAtLeastOnce{1});
    const auto minus = conditioned_view(t, NeverDrawn{1});
    const auto pairs = matched_coupling(plus, minus, 1);
    std::map<Template, double> first;
    for (const auto& cp : pairs) {
      first[cp.plus] += cp.probability;
      ASSERT_EQ(cp.plus.size(), cp.minus.size());
      for (std::size_t i = 0; i < cp.plus.size(); ++i) {
        if (cp.plus[i] != 1) {
          EXPECT_EQ(cp.plus[i], cp.minus[i]);
        }
        EXPECT_NE(cp.minus[i], 1u);
      }
    }
    for (const auto& wt : plus.support()) EXPECT_NEAR(first[wt.indices], wt.probability, 1e-15);
  }
  // Sampling every entry leaves nothing to swap in.
  const auto full = TemplateDistribution::without_replacement(2, 2);
  EXPECT_THROW(matched_coupling(full, full, 0), InvalidArgument);
}

TEST(MatchedCouplingTest, CouplingBound) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 3;
    std::vector<Pmf> entries;
    for (std::size_t i = 0; i < n; ++i) entries.push_back(Pmf::bernoulli(u(rng)));
    const DatabaseModel db(entries);
    const auto dbv = condition(db, 0, 1.0);
    for (const auto& t : {TemplateDistribution::without_replacement(n, n - 1),
                          TemplateDistribution::with_replacement(n, 2)}) {
      const auto plus = conditioned_view(t, DrawnAtLeastOnce{0});
      const auto minus = conditioned_view(t, NeverDrawn{0});
      const auto pairs = matched_coupling(plus, minus, 0);
      for (double eps : {0.0, 0.5, 1.0}) {
        const double lhs = hockey_stick(technique_pushforward(dbv, plus, Query::sum()),
                                        technique_pushforward(dbv, minus, Query::sum()), eps);
        double rhs = 0.0;
        for (const auto& cp : pairs) {
          rhs += cp.probability * hockey_stick(apply_template(dbv, cp.plus, Query::sum()),
                                               apply_template(dbv, cp.minus, Query::sum()), eps);
        }
        EXPECT_LE(lhs, rhs + 1e-12);
      }
    }
  }
}

TEST(MatchedCouplingTest, SwappedTemplateBoundedByConditionedPairs) {
  // For monotone queries: D(apply(db|j=v, t+), apply(db, t-)) is at most
  // max_w D(apply(db|j=v, t+), apply(db|j=w, t+)).
  for (std::size_t n = 2; n <= 5; ++n) {
    for (double p : {0.2, 0.5}) {
      const auto db = DatabaseModel::iid(Pmf::bernoulli(p), static_cast<int>(n));
      const auto t = TemplateDistribution::without_replacement(n, n - 1);
      const auto pairs = matched_coupling(conditioned_view(t, DrawnAtLeastOnce{0}),
                                          conditioned_view(t, NeverDrawn{0}), 0);
      for (const auto& cp : pairs) {
        for (double v : {0.0, 1.0}) {
          const Pmf a = apply_template(condition(db, 0, v), cp.plus, Query::sum());
          const Pmf b = apply_template(db, cp.minus, Query::sum());
          for (double eps : {0.0, 0.5, 1.0}) {
            double rhs = 0.0;
            for (double w : {0.0, 1.0}) {
              rhs = std::max(rhs, hockey_stick(a, apply_template(condition(db, 0, w), cp.plus,
                                                                 Query::sum()),
                                               eps));
            }
            EXPECT_LE(hockey_stick(a, b, eps), rhs + 1e-12);
          }
        }
      }
    }
  }
}

TEST(SpcTest, Examples) {
  const std::vector<double> grid = {0.0, std::log(2.0), 2.0};
  const auto db2 = DatabaseModel::iid(Pmf::bernoulli(0.5), 2);
  const auto s = spc(db2, Query::sum(), TemplateDistribution::without_replacement(2, 1), 0, grid);
  for (double v : s.values()) EXPECT_NEAR(v, 1.0, 1e-15);

  const auto db3 = DatabaseModel::iid(Pmf::bernoulli(0.5), 3);
  const auto full = spc_max(db3, Query::sum(), TemplateDistribution::without_replacement(3, 3),
                            grid);
  EXPECT_NEAR(full.values()[1], 0.25, 1e-12);
  EXPECT_NEAR(full.values()[1], sp_curve(db3, Query::sum(), grid).values()[1], 1e-15);

  const auto dbp = DatabaseModel::iid(Pmf::point_mass(1.0), 3);
  const auto flat = spc_max(dbp, Query::constant(0.0),
                            TemplateDistribution::with_replacement(3, 2), grid);
  for (double v : flat.values()) {
    EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(spc(db2, Query::sum(), TemplateDistribution::poisson(2, 0.0), 0, grid),
               ZeroProbabilityEvent);
}

TEST(SpcTest, NonIidTakesWorstPosition) {
  const DatabaseModel db({Pmf::bernoulli(0.5), Pmf::bernoulli(0.05), Pmf::bernoulli(0.5)});
  const auto t = TemplateDistribution::without_replacement(3, 2);
  const std::vector<double> grid = {0.5};
  double worst = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    worst = std::max(worst, spc(db, Query::sum(), t, j, grid).values()[0]);
  }
  EXPECT_EQ(spc_max(db, Query::sum(), t, grid).values()[0], worst);
}

TEST(MaximalCouplingTest, Examples) {
  const Pmf mu({0.0, 1.0}, {0.25, 0.75});
  const Pmf nu({0.0, 1.0}, {0.75, 0.25});
  const auto c = maximal_coupling_split(mu, nu);
  EXPECT_NEAR(c.lambda, 0.5, 1e-15);
  EXPECT_TRUE(approx_equal(c.common, Pmf({0.0, 1.0}, {0.5, 0.5}), 1e-15));
  EXPECT_EQ(c.mu_rest, Pmf::point_mass(1.0));
  EXPECT_EQ(c.nu_rest, Pmf::point_mass(0.0));

  const auto same = maximal_coupling_split(mu, mu);
  EXPECT_EQ(same.lambda, 0.0);
  EXPECT_EQ(same.common, mu);

  const auto apart = maximal_coupling_split(Pmf::point_mass(0.0), Pmf::point_mass(1.0));
  EXPECT_EQ(apart.lambda, 1.0);
  EXPECT_EQ(apart.mu_rest, Pmf::point_mass(0.0));
  EXPECT_EQ(apart.nu_rest, Pmf::point_mass(1.0));
}

TEST(MaximalCouplingTest, ReconstructsBothSides) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Pmf mu = random_pmf(rng, 6);
    const Pmf nu = random_pmf(rng, 6);
    const auto c = maximal_coupling_split(mu, nu);
    EXPECT_NEAR(c.lambda, total_variation(mu, nu), 1e-12);
    if (c.lambda == 0.0 || c.lambda == 1.0) continue;
    const std::vector<std::pair<double, Pmf>> a = {{1 - c.lambda, c.common}, {c.lambda, c.mu_rest}};
    const std::vector<std::pair<double, Pmf>> b = {{1 - c.lambda, c.common}, {c.lambda, c.nu_rest}};
    const Pmf ma = mixture(a), mb = mixture(b);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      EXPECT_NEAR(ma.mass_at(mu.outcomes()[i]), mu.weights()[i], 1e-12);
      EXPECT_NEAR(mb.mass_at(nu.outcomes()[i]), nu.weights()[i], 1e-12);
    }
  }
}

}  // namespace
}  // namespace sampriv
