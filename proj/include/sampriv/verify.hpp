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
//
// Cross-checks of the pipeline against the brute-force oracle on small
// Bernoulli models: exact agreement of sampled divergences, dominance of
// each amplification bound over the directly computed divergence, and
// trade-off curves against exhaustive set search.
#ifndef SAMPRIV_VERIFY_HPP_
#define SAMPRIV_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "sampriv/amplify.hpp"
#include "sampriv/csv.hpp"
#include "sampriv/divergence.hpp"
#include "sampriv/oracle.hpp"
#include "sampriv/sampling.hpp"
#include "sampriv/tradeoff.hpp"

namespace sampriv {

inline constexpr double kAgreementTolerance = 1e-12;
inline constexpr double kDominanceSlack = 1e-10;

struct VerifyOptions {
  std::size_t max_n = 4;
  std::uint64_t budget = kDefaultBudget;
  // Test hook: negates every pipeline divergence so agreement rows fail.
  bool inject_fault = false;
};

struct VerifyRow {
  std::string case_name;
  std::string quantity;
  double pipeline;
  double oracle;
  bool pass;
};

// Largest sampled divergence over ordered pairs of values for entry j.
inline double sampled_max_divergence(const DatabaseModel& db, std::size_t j,
                                     const TemplateDistribution& t,
                                     const Query& q, double eps,
                                     std::uint64_t budget = kDefaultBudget) {
  std::vector<Pmf> pmfs;
  for (double v : db.support()) {
    pmfs.push_back(technique_pushforward(condition(db, j, v), t, q, budget));
  }
  return max_pairwise_divergence(pmfs, {&eps, 1})[0];
}

// Random Pmf on outcomes 0..size-1; some cells may be empty.
template <typename Rng>
Pmf random_pmf(Rng& rng, std::size_t size, bool allow_zero = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(size), ws(size);
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    xs[i] = static_cast<double>(i);
    ws[i] = (allow_zero && u(rng) < 0.2) ? 0.0 : u(rng) + 1e-3;
    total += ws[i];
  }
  if (total == 0.0) {
    ws[0] = 1.0;
    total = 1.0;
  }
  for (double& w : ws) w /= total;
  return Pmf(std::move(xs), std::move(ws));
}

inline std::vector<VerifyRow> run_verify(const VerifyOptions& opt) {
  const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
  const Query q = Query::sum();
  std::vector<VerifyRow> rows;

  auto label = [](const std::string& tech, std::size_t n, const std::string& arg,
                  double p, double eps) {
    return tech + " n=" + std::to_string(n) + " " + arg + " p=" + format_double(p) +
           " eps=" + format_double(eps);
  };
  auto agreement = [&](const DatabaseModel& db, const TemplateDistribution& t,
                       const std::string& name, double eps) {
    double pipe = sampled_max_divergence(db, 0, t, q, eps, opt.budget);
    if (opt.inject_fault) pipe = -pipe;
    const double orc = oracle_max_divergence(db, 0, t, q, eps, opt.budget);
    rows.push_back({name, "agreement", pipe, orc,
                    std::fabs(pipe - orc) <= kAgreementTolerance});
  };
  auto dominance = [&](const DatabaseModel& db, const TemplateDistribution& t,
                       const std::string& name, double bound, double direct_eps) {
    const double orc = oracle_max_divergence(db, 0, t, q, direct_eps, opt.budget);
    rows.push_back({name, "dominance", bound, orc, orc <= bound + kDominanceSlack});
  };

  for (double p : {0.3, 0.5}) {
    const Pmf entry = Pmf::bernoulli(p);
    for (std::size_t n = 1; n <= opt.max_n; ++n) {
      const auto db = DatabaseModel::iid(entry, static_cast<int>(n));
      for (std::size_t m = 1; m <= n; ++m) {
        const auto t = TemplateDistribution::without_replacement(n, m, opt.budget);
        const auto bound = wor_bound(db, q, n, m, grid, opt.budget);
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const auto name = label("wor", n, "m=" + std::to_string(m), p, grid[g]);
          agreement(db, t, name, grid[g]);
          dominance(db, t, name, bound[g].delta_prime, bound[g].eps_prime);
        }
      }
      for (double rate : {0.25, 0.5, 0.75}) {
        const auto t = TemplateDistribution::poisson(n, rate, opt.budget);
        const auto bound = poisson_bound(db, q, n, rate, grid, opt.budget);
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const auto name = label("poisson", n, "lambda=" + format_double(rate), p, grid[g]);
          agreement(db, t, name, grid[g]);
          dominance(db, t, name, bound.values()[g], grid[g]);
        }
      }
      for (std::size_t m = 1; m <= opt.max_n; ++m) {
        const auto t = TemplateDistribution::with_replacement(n, m, opt.budget);
        std::vector<AmplifiedPoint> bound;
        try {
          bound = wr_bound(db, q, n, m, grid, {}, opt.budget).curve;
        } catch (const NotSamplable&) {
          // Outside the bound's hypothesis; only agreement is checked.
        }
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const auto name = label("wr", n, "m=" + std::to_string(m), p, grid[g]);
          agreement(db, t, name, grid[g]);
          if (!bound.empty()) {
            dominance(db, t, name, bound[g].delta_prime, bound[g].eps_prime);
          }
        }
      }
    }
  }

  std::mt19937_64 rng(20260101);
  for (int k = 0; k < 10; ++k) {
    const Pmf mu = random_pmf(rng, 2 + static_cast<std::size_t>(k) % 7);
    const Pmf nu = random_pmf(rng, 2 + static_cast<std::size_t>(k) % 7);
    const TradeoffFn t = tradeoff_from_pmfs(mu, nu);
    double worst = 0.0, pipe = 0.0, orc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double a = t.breakpoints()[i];
      const double o = oracle_tradeoff(mu, nu, a);
      const double v = opt.inject_fault ? -t.values()[i] : t.values()[i];
      if (std::fabs(v - o) >= worst) {
        worst = std::fabs(v - o);
        pipe = v;
        orc = o;
      }
    }
    rows.push_back({"pair " + std::to_string(k), "tradeoff", pipe, orc,
                    worst <= kAgreementTolerance * 100});
  }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<VerifyRow>& rows) {
  os << "case,quantity,pipeline,oracle,abs_diff,pass\n";
  for (const auto& r : rows) {
    os << r.case_name << ',' << r.quantity << ',' << format_double(r.pipeline) << ','
       << format_double(r.oracle) << ',' << format_double(std::fabs(r.pipeline - r.oracle))
       << ',' << (r.pass ? "1" : "0") << '\n';
  }
}

}  // namespace sampriv

#endif  // SAMPRIV_VERIFY_HPP_
