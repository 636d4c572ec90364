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
// Amplification bounds for statistical privacy under subsampling: without
// replacement, Poisson and with replacement, plus the differential-privacy
// side bounds they are compared against.
#ifndef SAMPRIV_AMPLIFY_HPP_
#define SAMPRIV_AMPLIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "sampriv/counting.hpp"
#include "sampriv/csv.hpp"
#include "sampriv/dist.hpp"
#include "sampriv/divergence.hpp"
#include "sampriv/error.hpp"
#include "sampriv/numeric.hpp"
#include "sampriv/sampling.hpp"

namespace sampriv {

struct AmplifiedParams {
  double eps_prime;
  double delta_prime;
};

struct AmplifiedPoint {
  double epsilon;
  double eps_prime;
  double delta_prime;
};

using AmplifiedCurve = std::vector<AmplifiedPoint>;

inline void write_csv(std::ostream& os, const AmplifiedCurve& curve) {
  os << "epsilon,eps_prime,delta_prime\n";
  for (const auto& p : curve) write_row(os, {p.epsilon, p.eps_prime, p.delta_prime});
}

// log(1 + rate (e^eps - 1)).
inline double eps_shrink(double eps, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw InvalidArgument("eps_shrink: rate must lie in (0,1]");
  }
  if (!(eps >= 0.0)) throw InvalidArgument("eps_shrink: eps must be >= 0");
  if (rate == 1.0) return eps;
  return std::log1p(rate * std::expm1(eps));
}

// Inverse of eps_shrink in eps: log(1 + (e^eps - 1) / rate).
inline double eps_expand(double eps, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw InvalidArgument("eps_expand: rate must lie in (0,1]");
  }
  if (!(eps >= 0.0)) throw InvalidArgument("eps_expand: eps must be >= 0");
  if (rate == 1.0) return eps;
  return std::log1p(std::expm1(eps) / rate);
}

// Privacy curve of q on n i.i.d. copies of `entry`, via the counting route
// when it applies and exact enumeration otherwise.
inline std::vector<double> phi_iid(const Pmf& entry, const Query& q, int n,
                                   std::span<const double> grid,
                                   std::uint64_t budget = kDefaultBudget) {
  if (n < 1) throw InvalidArgument("phi_iid: n must be >= 1");
  if (const auto ind = counting_indicator(entry, q)) {
    return counting_phi(*ind, n, grid);
  }
  const PrivacyCurve c = sp_curve(DatabaseModel::iid(entry, n), q, grid, budget);
  return {c.values().begin(), c.values().end()};
}

// SPC for sampling m of the db's entries without replacement. For i.i.d.
// entries under a symmetric query every template that draws the sensitive
// entry sees a size-m product model, so SPC equals the size-m curve.
inline std::vector<double> spc_without_replacement(
    const DatabaseModel& db, const Query& q, std::size_t m,
    std::span<const double> grid, std::uint64_t budget = kDefaultBudget) {
  if (db.is_iid() && q.symmetric()) {
    return phi_iid(db.entry(0), q, static_cast<int>(m), grid, budget);
  }
  const auto t = TemplateDistribution::without_replacement(db.size(), m, budget);
  const PrivacyCurve c = spc_max(db, q, t, grid, budget);
  return {c.values().begin(), c.values().end()};
}

namespace detail {

inline void check_sizes(const DatabaseModel& db, std::size_t n, std::size_t m) {
  if (n != db.size()) {
    throw InvalidArgument("database size does not match n");
  }
  if (m < 1 || m > n) throw InvalidArgument("need 1 <= m <= n");
}

}  // namespace detail

// Sampling m of n without replacement: at each eps the sampled mechanism is
// (eps_shrink(eps, m/n), (m/n) SPC(eps))-private. SPC is enumerated over the
// templates directly.
inline AmplifiedCurve wor_bound(const DatabaseModel& db, const Query& q,
                                std::size_t n, std::size_t m,
                                std::span<const double> grid,
                                std::uint64_t budget = kDefaultBudget) {
  detail::check_sizes(db, n, m);
  const double rate = static_cast<double>(m) / static_cast<double>(n);
  const auto t = TemplateDistribution::without_replacement(n, m, budget);
  const PrivacyCurve s = spc_max(db, q, t, grid, budget);
  AmplifiedCurve out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.push_back({grid[g], eps_shrink(grid[g], rate), rate * s.values()[g]});
  }
  return out;
}

// The i.i.d. form: (eps_shrink(eps, m/n), (m/n) Phi_m(eps)).
inline AmplifiedCurve wor_bound_iid(const Pmf& entry, const Query& q,
                                    std::size_t n, std::size_t m,
                                    std::span<const double> grid,
                                    std::uint64_t budget = kDefaultBudget) {
  if (m < 1 || m > n) throw InvalidArgument("need 1 <= m <= n");
  const double rate = static_cast<double>(m) / static_cast<double>(n);
  const auto phi = phi_iid(entry, q, static_cast<int>(m), grid, budget);
  AmplifiedCurve out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.push_back({grid[g], eps_shrink(grid[g], rate), rate * phi[g]});
  }
  return out;
}

// [(m/n) Phi_m(eps_expand(eps, m/n))] / Phi_n(eps): below one when
// subsampling lowers delta at a matched epsilon.
inline double viability_ratio(const Pmf& entry, const Query& q, std::size_t n,
                              std::size_t m, double eps,
                              std::uint64_t budget = kDefaultBudget) {
  if (m < 1 || m > n) throw InvalidArgument("need 1 <= m <= n");
  const double rate = static_cast<double>(m) / static_cast<double>(n);
  const double full = phi_iid(entry, q, static_cast<int>(n), {&eps, 1}, budget)[0];
  if (!(full > 0.0)) {
    throw ZeroDenominator("viability_ratio: unsampled delta is zero");
  }
  const double wide = eps_expand(eps, rate);
  const double sampled =
      rate * phi_iid(entry, q, static_cast<int>(m), {&wide, 1}, budget)[0];
  return sampled / full;
}

// Poisson sampling with inclusion rate `rate`:
//   delta*(eps) = sum_{m=1..n} C(n,m) r^m (1-r)^(n-m) (m/n)
//                 SPC_{n,m}(eps_expand(eps, m/n)).
// The m = 0 term vanishes through its m/n factor.
inline PrivacyCurve poisson_bound(const DatabaseModel& db, const Query& q,
                                  std::size_t n, double rate,
                                  std::span<const double> grid,
                                  std::uint64_t budget = kDefaultBudget) {
  if (n != db.size()) throw InvalidArgument("database size does not match n");
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw InvalidArgument("poisson_bound: rate must lie in (0,1]");
  }
  const auto weights = binomial_weights(static_cast<int>(n), rate);
  std::vector<CompensatedSum> acc(grid.size());
  for (std::size_t m = 1; m <= n; ++m) {
    if (weights[m] == 0.0) continue;
    const double frac = static_cast<double>(m) / static_cast<double>(n);
    std::vector<double> wide(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) wide[g] = eps_expand(grid[g], frac);
    const auto s = spc_without_replacement(db, q, m, wide, budget);
    for (std::size_t g = 0; g < grid.size(); ++g) acc[g].add(weights[m] * frac * s[g]);
  }
  std::vector<double> values(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) values[g] = acc[g].value();
  return PrivacyCurve(std::vector<double>(grid.begin(), grid.end()), values);
}

// Checks the half-line property on the pairs the with-replacement bound is
// built from: for each template drawing a sensitive position j, the answer
// distributions with j fixed to v and to w, over ordered pairs v != w.
inline HalfLineResult samplability_check(const DatabaseModel& db,
                                         const Query& q,
                                         const TemplateDistribution& t,
                                         std::span<const double> grid,
                                         std::uint64_t budget = kDefaultBudget) {
  for (std::size_t j : spc_positions(db, q, t)) {
    std::vector<DatabaseModel> conditioned;
    for (double v : db.support()) conditioned.push_back(condition(db, j, v));
    std::vector<detail::TemplateAnswerCache> caches;
    for (const auto& c : conditioned) caches.emplace_back(c, q, budget);
    std::map<Template, bool> seen;
    for (const auto& wt : t.support()) {
      if (occurrences(wt.indices, j) == 0) continue;
      Template key = wt.indices;
      if (q.symmetric()) std::sort(key.begin(), key.end());
      if (!seen.emplace(key, true).second) continue;
      std::vector<Pmf> pmfs;
      for (auto& c : caches) pmfs.push_back(c.get(key));
      for (std::size_t a = 0; a < pmfs.size(); ++a) {
        for (std::size_t b = 0; b < pmfs.size(); ++b) {
          if (a == b) continue;
          const auto r = half_line_check(pmfs[a], pmfs[b], grid);
          if (!r.ok) return r;
        }
      }
    }
  }
  return {};
}

struct WrBound {
  AmplifiedCurve curve;
  // 1 - (1 - 1/n)^m, the probability that the sensitive entry is drawn.
  double lambda_hat;
  // P(K = k) for K ~ Binomial(m, 1/n), k = 0..m.
  std::vector<double> k_weights;
  // C(n,k) (1/n)^k (1-1/n)^(m-k), k = 0..m; diagnostic only.
  std::vector<double> alt_k_weights;
  // SPC of the technique conditioned on k draws of the sensitive entry,
  // indexed by k (entry 0 unused).
  std::vector<std::vector<double>> spc_k;
};

// Sampling m times with replacement from n entries, for monotone queries on
// models passing the half-line check:
//   eps' = eps_shrink(eps, lambda_hat),
//   delta' = sum_{k=1..m} P(K = k) SPC_k(eps),  K ~ Binomial(m, 1/n).
// `check_grid` is where the half-line property is certified; it defaults to
// `grid`.
inline WrBound wr_bound(const DatabaseModel& db, const Query& q, std::size_t n,
                        std::size_t m, std::span<const double> grid,
                        std::span<const double> check_grid = {},
                        std::uint64_t budget = kDefaultBudget) {
  if (n != db.size()) throw InvalidArgument("database size does not match n");
  if (m < 1) throw InvalidArgument("wr_bound: m must be >= 1");
  if (!q.monotone()) throw InvalidArgument("wr_bound: query must be monotone");
  const auto t = TemplateDistribution::with_replacement(n, m, budget);
  const auto certified = check_grid.empty() ? grid : check_grid;
  if (const auto r = samplability_check(db, q, t, certified, budget); !r.ok) {
    throw NotSamplable("wr_bound: half-line check failed at eps=" +
                           format_double(r.epsilon) +
                           " outcome=" + format_double(r.outcome),
                       r.epsilon, r.outcome);
  }

  WrBound out;
  const double inv_n = 1.0 / static_cast<double>(n);
  out.lambda_hat = -std::expm1(static_cast<double>(m) * std::log1p(-inv_n));
  out.k_weights = binomial_weights(static_cast<int>(m), inv_n);
  out.alt_k_weights.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    out.alt_k_weights[k] =
        n >= k ? std::exp(log_choose(static_cast<int>(n), static_cast<int>(k))) *
                     std::pow(inv_n, static_cast<double>(k)) *
                     std::pow(1.0 - inv_n, static_cast<double>(m - k))
               : 0.0;
  }
  out.spc_k.assign(m + 1, std::vector<double>(grid.size(), 0.0));

  const auto js = spc_positions(db, q, t);
  std::vector<CompensatedSum> acc(grid.size());
  for (std::size_t k = 1; k <= m; ++k) {
    if (out.k_weights[k] == 0.0) continue;
    for (std::size_t j : js) {
      const auto view = conditioned_view(t, DrawnExactly{j, k});
      const PrivacyCurve c = spc(db, q, view, j, grid, budget);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        out.spc_k[k][g] = std::max(out.spc_k[k][g], c.values()[g]);
      }
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      acc[g].add(out.k_weights[k] * out.spc_k[k][g]);
    }
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.curve.push_back({grid[g], eps_shrink(grid[g], out.lambda_hat),
                         std::clamp(acc[g].value(), 0.0, 1.0)});
  }
  return out;
}

// Heuristic delta for counting queries from a normal approximation of the
// Binomial answer: min(1, 10 / (n p (1-p) eps^2)).
inline double normal_approx_delta(std::size_t n, double p, double eps) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("normal_approx_delta: p must lie in (0,1)");
  }
  if (!(eps > 0.0)) throw InvalidArgument("normal_approx_delta: eps must be > 0");
  if (n < 1) throw InvalidArgument("normal_approx_delta: n must be >= 1");
  return std::min(1.0, 10.0 / (static_cast<double>(n) * p * (1.0 - p) * eps * eps));
}

// Classic DP subsampling: (eps_shrink(eps, rate), rate * delta).
inline AmplifiedParams dp_classic_subsample(double eps, double delta,
                                            double rate) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidArgument("dp_classic_subsample: delta must lie in [0,1]");
  }
  return {eps_shrink(eps, rate), rate * delta};
}

// Linear interpolation of a privacy curve. Outside the grid this refuses
// unless `extrapolate`, in which case points below the grid read 1 and
// points above read the last value (both upper bounds for a nonincreasing
// curve).
inline double interpolate_curve(const PrivacyCurve& curve, double eps,
                                bool extrapolate = false) {
  const auto g = curve.grid();
  const auto v = curve.values();
  if (eps < g.front() || eps > g.back()) {
    if (!extrapolate) {
      throw CurveDomainError("curve has no value at eps=" + format_double(eps));
    }
    return eps < g.front() ? 1.0 : v.back();
  }
  const auto it = std::lower_bound(g.begin(), g.end(), eps);
  const auto i = static_cast<std::size_t>(it - g.begin());
  if (g[i] == eps || i == 0) return v[i];
  const double t = (eps - g[i - 1]) / (g[i] - g[i - 1]);
  const double y = v[i - 1] + t * (v[i] - v[i - 1]);
  return std::clamp(y, std::min(v[i - 1], v[i]), std::max(v[i - 1], v[i]));
}

// Poisson subsampling of a DP mechanism with privacy curve `delta_curve`:
//   sum_{m=1..n} C(n,m) r^m (1-r)^(n-m) (m/n) delta(eps_expand(eps, m/n)).
inline double dp_poisson_bound(const PrivacyCurve& delta_curve, std::size_t n,
                               double rate, double eps,
                               bool extrapolate = false) {
  if (n < 1) throw InvalidArgument("dp_poisson_bound: n must be >= 1");
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw InvalidArgument("dp_poisson_bound: rate must lie in (0,1]");
  }
  const auto weights = binomial_weights(static_cast<int>(n), rate);
  CompensatedSum acc;
  for (std::size_t m = 1; m <= n; ++m) {
    if (weights[m] == 0.0) continue;
    const double frac = static_cast<double>(m) / static_cast<double>(n);
    acc.add(weights[m] * frac *
            interpolate_curve(delta_curve, eps_expand(eps, frac), extrapolate));
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

}  // namespace sampriv

#endif  // SAMPRIV_AMPLIFY_HPP_
