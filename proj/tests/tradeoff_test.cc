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

#include "sampriv/tradeoff.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "sampriv/verify.hpp"

namespace sampriv {
namespace {

const TradeoffFn kZero({0.0, 1.0}, {0.0, 0.0});
const TradeoffFn kKinked({0.0, 0.25, 1.0}, {0.75, 0.25, 0.0});

void expect_same(const TradeoffFn& a, const TradeoffFn& b, double tol) {
  for (int k = 0; k <= 200; ++k) {
    const double x = k / 200.0;
    EXPECT_NEAR(a(x), b(x), tol) << "x=" << x;
  }
}

// Convex closure of samples of f on a dense grid, by numerical
// biconjugation over a dense slope grid.
std::vector<double> dense_closure(const std::function<double(double)>& f, int nx) {
  std::vector<double> xs(static_cast<std::size_t>(nx) + 1), fs(xs.size());
  for (int i = 0; i <= nx; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / nx;
    fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  }
  std::vector<double> ys, star;
  for (int k = 0; k <= 8000; ++k) {
    const double y = -20.0 + 0.0025 * k;
    double s = -1e300;
    for (std::size_t i = 0; i < xs.size(); ++i) s = std::max(s, y * xs[i] - fs[i]);
    ys.push_back(y);
    star.push_back(s);
  }
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double s = -1e300;
    for (std::size_t k = 0; k < ys.size(); ++k) s = std::max(s, ys[k] * xs[i] - star[k]);
    out[i] = s;
  }
  return out;
}

TEST(TradeoffFnTest, Validation) {
  EXPECT_THROW(TradeoffFn({0.0}, {1.0}), InvalidArgument);
  EXPECT_THROW(TradeoffFn({0.1, 1.0}, {1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(TradeoffFn({0.0, 0.5, 0.5, 1.0}, {1.0, 0.5, 0.5, 0.0}), InvalidArgument);
  EXPECT_THROW(TradeoffFn({0.0, 1.0}, {0.0, 0.5}), InvalidArgument);
  EXPECT_THROW(TradeoffFn({0.0, 0.5, 1.0}, {1.0, 0.9, 0.0}), InvalidArgument);
  EXPECT_NEAR(kKinked(0.5), 0.25 - 0.25 / 3.0, 1e-15);
  EXPECT_THROW(kKinked(1.5), InvalidArgument);
  std::ostringstream os;
  kKinked.write_csv(os);
  EXPECT_EQ(os.str(), "alpha,t_of_alpha\n0,0.75\n0.25,0.25\n1,0\n");
}

TEST(TradeoffFromPmfsTest, Examples) {
  const Pmf mu({0.0, 1.0}, {0.75, 0.25});
  const Pmf nu({0.0, 1.0}, {0.25, 0.75});
  expect_same(tradeoff_from_pmfs(mu, mu), identity_tradeoff(), 1e-15);
  expect_same(tradeoff_from_pmfs(Pmf::point_mass(0.0), Pmf::point_mass(1.0)), kZero, 1e-15);

  // Rejecting every outcome has zero type-I error but type-II error 1.
  const auto t = tradeoff_from_pmfs(mu, nu);
  EXPECT_NEAR(t(0.0), 1.0, 1e-15);
  EXPECT_NEAR(t(0.25), 0.25, 1e-15);
  EXPECT_NEAR(t(1.0), 0.0, 1e-15);
  EXPECT_NEAR(t(0.125), 0.625, 1e-15);
}

TEST(TradeoffFromPmfsTest, RandomPairsAreValid) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const Pmf mu = random_pmf(rng, 1 + trial % 9);
    const Pmf nu = random_pmf(rng, 1 + (trial / 9) % 9);
    const auto t = tradeoff_from_pmfs(mu, nu);
    EXPECT_LE(t(0.0), 1.0);
    EXPECT_EQ(t(1.0), 0.0);
    for (int k = 0; k < 100; ++k) {
      const double x = k / 100.0, h = 0.01;
      EXPECT_LE(t(x + h), t(x) + 1e-12);
      if (k > 0) {
        EXPECT_LE(t(x), 0.5 * (t(x - h) + t(x + h)) + 1e-12);
      }
    }
  }
}

// With T(alpha) = inf { nu(S) : mu(A \ S) <= alpha } the conjugate recovers
// the divergence of nu from mu.
TEST(TradeoffFromPmfsTest, ConjugateDuality) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const Pmf mu = random_pmf(rng, 1 + trial % 9);
    const Pmf nu = random_pmf(rng, 1 + (trial / 9) % 9);
    const auto t = tradeoff_from_pmfs(mu, nu);
    for (double eps : {0.0, 0.2, 0.7, 1.5, 3.0}) {
      EXPECT_NEAR(tradeoff_to_sp(t, eps), hockey_stick(nu, mu, eps), 1e-9);
    }
  }
}

TEST(ConjugateTest, Examples) {
  for (double eps : {0.0, 0.5, 2.0}) {
    EXPECT_NEAR(conjugate(identity_tradeoff(), -std::exp(eps)), -1.0, 1e-15);
    EXPECT_EQ(tradeoff_to_sp(identity_tradeoff(), eps), 0.0);
    EXPECT_EQ(tradeoff_to_sp(kZero, eps), 1.0);
  }
  EXPECT_EQ(conjugate(identity_tradeoff(), 0.0), 0.0);
  for (double y : {0.0, 0.3, 2.0}) EXPECT_EQ(conjugate(kZero, y), y);
  EXPECT_THROW(tradeoff_to_sp(kZero, -1.0), InvalidArgument);
}

TEST(ConjugateTest, BiconjugateRecoversBreakpoints) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = tradeoff_from_pmfs(random_pmf(rng, 6), random_pmf(rng, 6));
    const auto x = t.breakpoints();
    const auto v = t.values();
    // Candidate slopes: every segment slope plus a coarse sweep.
    std::vector<double> ys;
    for (std::size_t i = 1; i < x.size(); ++i) ys.push_back((v[i] - v[i - 1]) / (x[i] - x[i - 1]));
    for (double y = -50.0; y <= 0.0; y += 0.5) ys.push_back(y);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double best = -1e300;
      for (double y : ys) best = std::max(best, y * x[i] - conjugate(t, y));
      EXPECT_NEAR(best, v[i], 1e-10);
    }
  }
}

TEST(InverseTest, Examples) {
  expect_same(inverse(identity_tradeoff()), identity_tradeoff(), 1e-15);
  expect_same(inverse(kZero), kZero, 1e-15);
  EXPECT_NEAR(inverse(kKinked)(0.25), 0.25, 1e-15);
  // Flat tail: inf { x : T(x) <= 0 } = 0.5.
  const TradeoffFn flat({0.0, 0.5, 1.0}, {1.0, 0.0, 0.0});
  EXPECT_NEAR(inverse(flat)(0.0), 0.5, 1e-15);
}

TEST(InverseTest, InvolutionOnStrictlyDecreasing) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = tradeoff_from_pmfs(random_pmf(rng, 5, false), random_pmf(rng, 5, false));
    if (t(0.0) < 1.0) continue;
    expect_same(inverse(inverse(t)), t, 1e-12);
  }
}

TEST(PSampleTest, Examples) {
  expect_same(p_sample(kKinked, 1.0), kKinked, 1e-15);
  expect_same(p_sample(kKinked, 0.0), identity_tradeoff(), 1e-15);
  expect_same(p_sample(kZero, 0.5), TradeoffFn({0.0, 1.0}, {0.5, 0.0}), 1e-15);
  EXPECT_THROW(p_sample(kZero, 1.5), InvalidArgument);
}

TEST(PsiOperatorTest, Examples) {
  for (double p : {0.0, 0.3, 1.0}) {
    expect_same(psi_operator(identity_tradeoff(), p), identity_tradeoff(), 1e-15);
    if (p == 0.0) expect_same(psi_operator(kKinked, p), identity_tradeoff(), 1e-15);
  }
  const auto psi = psi_operator(kZero, 0.5);
  const auto oracle = dense_closure(
      [](double x) { return std::min(0.5 * (1.0 - x), std::max(0.0, 1.0 - 2.0 * x)); }, 400);
  for (int i = 0; i <= 400; ++i) {
    const double x = i / 400.0;
    EXPECT_NEAR(psi(x), oracle[static_cast<std::size_t>(i)], 1e-3);
    EXPECT_NEAR(psi(x), std::max(0.0, 0.5 - x), 1e-12);
  }
}

TEST(PsiOperatorTest, NeverAbovePSample) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = tradeoff_from_pmfs(random_pmf(rng, 6), random_pmf(rng, 6));
    for (double p : {0.1, 0.5, 0.9}) {
      const auto psi = psi_operator(t, p);
      const auto tp = p_sample(t, p);
      for (int k = 0; k <= 100; ++k) EXPECT_LE(psi(k / 100.0), tp(k / 100.0) + 1e-12);
    }
  }
}

TEST(SpToTradeoffTest, Examples) {
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  expect_same(sp_to_tradeoff(PrivacyCurve(grid, {0.0, 0.0, 0.0})), identity_tradeoff(), 1e-12);
  expect_same(sp_to_tradeoff(PrivacyCurve(grid, {1.0, 1.0, 1.0})), kZero, 1e-15);
  EXPECT_NEAR(sp_to_tradeoff(PrivacyCurve(grid, {0.2, 0.2, 0.2}))(0.0), 0.8, 1e-12);
}

TEST(SpToTradeoffTest, RoundTripNeverLoosensTheCurve) {
  for (double p : {0.2, 0.5}) {
    for (int n : {2, 5, 9}) {
      const auto phi = sp_curve(DatabaseModel::iid(Pmf::bernoulli(p), n), Query::sum(),
                                default_grid());
      const auto t = sp_to_tradeoff(phi);
      for (std::size_t g = 0; g < phi.size(); ++g) {
        EXPECT_LE(tradeoff_to_sp(t, phi.grid()[g]), phi.values()[g] + 2e-9);
      }
    }
  }
}

TEST(SubsampledTradeoffTest, Examples) {
  const auto sym = tradeoff_from_pmfs(Pmf({0.0, 1.0}, {0.75, 0.25}),
                                      Pmf({0.0, 1.0}, {0.25, 0.75}));
  expect_same(subsampled_tradeoff(sym, 4, 4), sym, 1e-12);
  expect_same(subsampled_tradeoff(identity_tradeoff(), 7, 3), identity_tradeoff(), 1e-15);
  expect_same(subsampled_tradeoff(kZero, 4, 2), psi_operator(kZero, 0.5), 1e-15);
  EXPECT_THROW(subsampled_tradeoff(kZero, 3, 0), InvalidArgument);
  EXPECT_THROW(subsampled_tradeoff(kZero, 3, 4), InvalidArgument);
}

}  // namespace
}  // namespace sampriv
