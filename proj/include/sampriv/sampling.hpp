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
// Sampling templates and the three sampling techniques (without replacement,
// Poisson, with replacement), each enumerated exactly. A template lists the
// database positions that make up the sample; a technique is a finite
// distribution over templates.
#ifndef SAMPRIV_SAMPLING_HPP_
#define SAMPRIV_SAMPLING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sampriv/dist.hpp"
#include "sampriv/divergence.hpp"
#include "sampriv/error.hpp"
#include "sampriv/numeric.hpp"

namespace sampriv {

using Template = std::vector<std::size_t>;

enum class Technique { kWithoutReplacement, kPoisson, kWithReplacement };

struct WeightedTemplate {
  Template indices;
  double probability;
};

// Events a technique can be conditioned on.
struct SampleSize {
  std::size_t m;
};
struct DrawnExactly {
  std::size_t j;
  std::size_t k;
};
struct DrawnAtLeastOnce {
  std::size_t j;
};
struct NeverDrawn {
  std::size_t j;
};
using Selector = std::variant<SampleSize, DrawnExactly, DrawnAtLeastOnce, NeverDrawn>;

inline std::size_t occurrences(const Template& t, std::size_t j) {
  return static_cast<std::size_t>(std::count(t.begin(), t.end(), j));
}

inline bool selects(const Selector& sel, const Template& t) {
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SampleSize>) {
          return t.size() == s.m;
        } else if constexpr (std::is_same_v<S, DrawnExactly>) {
          return occurrences(t, s.j) == s.k;
        } else if constexpr (std::is_same_v<S, DrawnAtLeastOnce>) {
          return occurrences(t, s.j) > 0;
        } else {
          return occurrences(t, s.j) == 0;
        }
      },
      sel);
}

class TemplateDistribution {
 public:
  // Uniform over the C(n,m) index sets of size m, as sorted sequences.
  static TemplateDistribution without_replacement(
      std::size_t n, std::size_t m, std::uint64_t budget = kDefaultBudget) {
    if (n < 1 || m > n) {
      throw InvalidArgument("without_replacement: need 0 <= m <= n, n >= 1");
    }
    check_budget("without-replacement templates",
                 std::exp(log_choose(static_cast<int>(n), static_cast<int>(m))),
                 budget);
    TemplateDistribution t(Technique::kWithoutReplacement, n, m, 0.0);
    Template cur(m);
    for (std::size_t i = 0; i < m; ++i) cur[i] = i;
    std::vector<Template> all;
    while (true) {
      all.push_back(cur);
      std::size_t i = m;
      while (i > 0 && cur[i - 1] == n - m + (i - 1)) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t k = i; k < m; ++k) cur[k] = cur[k - 1] + 1;
    }
    const double p = 1.0 / static_cast<double>(all.size());
    for (auto& tpl : all) t.support_.push_back({std::move(tpl), p});
    return t;
  }

  // Every position included independently with probability `rate`; the
  // template is the sorted set of included positions.
  static TemplateDistribution poisson(std::size_t n, double rate,
                                      std::uint64_t budget = kDefaultBudget) {
    if (n < 1) throw InvalidArgument("poisson: n must be >= 1");
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw InvalidArgument("poisson: rate must lie in [0,1]");
    }
    check_budget("Poisson templates", std::pow(2.0, static_cast<double>(n)),
                 budget);
    TemplateDistribution t(Technique::kPoisson, n, 0, rate);
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Template tpl;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) tpl.push_back(i);
      }
      const double k = static_cast<double>(tpl.size());
      const double p = std::pow(rate, k) * std::pow(1.0 - rate, static_cast<double>(n) - k);
      if (p > 0.0) t.support_.push_back({std::move(tpl), p});
    }
    return t;
  }

  // Uniform over all n^m index sequences of length m.
  static TemplateDistribution with_replacement(
      std::size_t n, std::size_t m, std::uint64_t budget = kDefaultBudget) {
    if (n < 1) throw InvalidArgument("with_replacement: n must be >= 1");
    check_budget("with-replacement templates",
                 std::pow(static_cast<double>(n), static_cast<double>(m)), budget);
    TemplateDistribution t(Technique::kWithReplacement, n, m, 0.0);
    const double p = std::pow(static_cast<double>(n), -static_cast<double>(m));
    Template cur(m, 0);
    while (true) {
      t.support_.push_back({cur, p});
      std::size_t i = m;
      while (i > 0 && cur[i - 1] == n - 1) cur[--i] = 0;
      if (i == 0) break;
      ++cur[i - 1];
    }
    return t;
  }

  Technique technique() const { return technique_; }
  std::size_t n() const { return n_; }
  // Sample size for the fixed-size techniques.
  std::size_t m() const { return m_; }
  // Inclusion probability for Poisson sampling.
  double rate() const { return rate_; }
  std::span<const WeightedTemplate> support() const { return support_; }

  // False once conditioned on an event naming a specific position.
  bool exchangeable() const { return exchangeable_; }

  friend double event_probability(const TemplateDistribution& t,
                                  const Selector& sel);
  friend TemplateDistribution conditioned_view(const TemplateDistribution& t,
                                               const Selector& sel);

 private:
  TemplateDistribution(Technique tech, std::size_t n, std::size_t m, double rate)
      : technique_(tech), n_(n), m_(m), rate_(rate) {}

  Technique technique_;
  std::size_t n_;
  std::size_t m_;
  double rate_;
  bool exchangeable_ = true;
  std::vector<WeightedTemplate> support_;
};

inline double event_probability(const TemplateDistribution& t,
                                 const Selector& sel) {
  CompensatedSum s;
  for (const auto& wt : t.support_) {
    if (selects(sel, wt.indices)) s.add(wt.probability);
  }
  return s.value();
}

// The technique restricted to the selected event and renormalised.
inline TemplateDistribution conditioned_view(const TemplateDistribution& t,
                                             const Selector& sel) {
  const double mass = event_probability(t, sel);
  if (!(mass > 0.0)) {
    throw ZeroProbabilityEvent("conditioned_view: event has probability zero");
  }
  TemplateDistribution out(t.technique_, t.n_, t.m_, t.rate_);
  out.exchangeable_ = t.exchangeable_ && std::holds_alternative<SampleSize>(sel);
  for (const auto& wt : t.support_) {
    if (selects(sel, wt.indices)) {
      out.support_.push_back({wt.indices, wt.probability / mass});
    }
  }
  return out;
}

// Answer distribution of q on the sample picked by `t`. Repeated indices are
// the same random entry.
inline Pmf apply_template(const DatabaseModel& db, const Template& t,
                          const Query& q, std::uint64_t budget = kDefaultBudget) {
  return detail::enumerate_answers(db, t, q, budget);
}

namespace detail {

// Memoises apply_template per template; symmetric queries share one entry
// for all orderings of the same multiset.
class TemplateAnswerCache {
 public:
  TemplateAnswerCache(const DatabaseModel& db, const Query& q,
                      std::uint64_t budget)
      : db_(db), q_(q), budget_(budget) {}

  const Pmf& get(const Template& t) {
    Template key = t;
    if (q_.symmetric()) std::sort(key.begin(), key.end());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, apply_template(db_, key, q_, budget_)).first;
    }
    return it->second;
  }

 private:
  const DatabaseModel& db_;
  const Query& q_;
  std::uint64_t budget_;
  std::map<Template, Pmf> cache_;
};

}  // namespace detail

// Answer distribution after sampling: sum over templates of
// P(t) * apply_template(db, t, q).
inline Pmf technique_pushforward(const DatabaseModel& db,
                                 const TemplateDistribution& t, const Query& q,
                                 std::uint64_t budget = kDefaultBudget) {
  detail::TemplateAnswerCache cache(db, q, budget);
  std::vector<std::pair<double, Pmf>> parts;
  parts.reserve(t.support().size());
  for (const auto& wt : t.support()) {
    parts.emplace_back(wt.probability, cache.get(wt.indices));
  }
  return mixture(parts);
}

struct CoupledPair {
  Template plus;
  Template minus;
  double probability;
};

// Couples templates that draw j with templates that avoid it. Every
// j-position of the plus template is replaced, everything else is kept, so
// each supported pair agrees off the j-positions. With replacement, each
// j-position independently takes a uniform index from {0..n-1} \ {j}; for
// the set-based techniques it takes a uniform index not drawn yet. For the
// set-based techniques the minus template is reported position-aligned with
// the plus template, i.e. not re-sorted.
inline std::vector<CoupledPair> matched_coupling(
    const TemplateDistribution& plus, const TemplateDistribution& minus,
    std::size_t j) {
  const std::size_t n = plus.n();
  std::vector<CoupledPair> pairs;
  for (const auto& wt : plus.support()) {
    const Template& tp = wt.indices;
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < tp.size(); ++i) {
      if (tp[i] == j) slots.push_back(i);
    }
    if (slots.empty()) {
      throw InvalidArgument("matched_coupling: plus template avoids j");
    }
    // Branch over replacements slot by slot.
    std::vector<std::pair<Template, double>> partial{{tp, wt.probability}};
    for (std::size_t slot : slots) {
      std::vector<std::pair<Template, double>> next;
      for (const auto& [cur, p] : partial) {
        std::vector<std::size_t> choices;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          if (plus.technique() != Technique::kWithReplacement &&
              std::find(cur.begin(), cur.end(), c) != cur.end()) {
            continue;
          }
          choices.push_back(c);
        }
        if (choices.empty()) {
          throw InvalidArgument(
              "matched_coupling: infeasible pairing, no index left to draw");
        }
        const double share = p / static_cast<double>(choices.size());
        for (std::size_t c : choices) {
          Template t2 = cur;
          t2[slot] = c;
          next.emplace_back(std::move(t2), share);
        }
      }
      partial = std::move(next);
    }
    for (auto& [tm, p] : partial) pairs.push_back({tp, std::move(tm), p});
  }

  // The second marginal must reproduce `minus`.
  const bool as_sets = plus.technique() != Technique::kWithReplacement;
  auto normal = [&](Template t) {
    if (as_sets) std::sort(t.begin(), t.end());
    return t;
  };
  std::map<Template, double> got;
  for (const auto& cp : pairs) got[normal(cp.minus)] += cp.probability;
  std::map<Template, double> want;
  for (const auto& wt : minus.support()) want[normal(wt.indices)] += wt.probability;
  bool ok = got.size() == want.size();
  for (auto it = got.begin(); ok && it != got.end(); ++it) {
    const auto w = want.find(it->first);
    ok = w != want.end() && std::fabs(w->second - it->second) <= 1e-12;
  }
  if (!ok) {
    throw InvalidArgument(
        "matched_coupling: infeasible pairing, marginal does not match");
  }
  return pairs;
}

// Expected worst-case pairwise divergence of the sampled conditioned
// databases over templates that draw j:
//   E_{t ~ T | j drawn} max_{v,w in W} D(apply(db|j=v, t), apply(db|j=w, t)).
inline PrivacyCurve spc(const DatabaseModel& db, const Query& q,
                        const TemplateDistribution& t, std::size_t j,
                        std::span<const double> grid,
                        std::uint64_t budget = kDefaultBudget) {
  const TemplateDistribution view = conditioned_view(t, DrawnAtLeastOnce{j});
  std::vector<DatabaseModel> conditioned;
  std::vector<detail::TemplateAnswerCache> caches;
  conditioned.reserve(db.support().size());
  for (double v : db.support()) conditioned.push_back(condition(db, j, v));
  caches.reserve(conditioned.size());
  for (const auto& c : conditioned) caches.emplace_back(c, q, budget);

  std::map<Template, std::vector<double>> seen;
  std::vector<CompensatedSum> acc(grid.size());
  for (const auto& wt : view.support()) {
    Template key = wt.indices;
    if (q.symmetric()) std::sort(key.begin(), key.end());
    auto it = seen.find(key);
    if (it == seen.end()) {
      std::vector<Pmf> pmfs;
      for (auto& c : caches) pmfs.push_back(c.get(key));
      it = seen.emplace(key, max_pairwise_divergence(pmfs, grid)).first;
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      acc[g].add(wt.probability * it->second[g]);
    }
  }
  std::vector<double> values(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) values[g] = acc[g].value();
  // Clean float noise so the curve stays monotone.
  for (std::size_t g = 1; g < values.size(); ++g) {
    values[g] = std::min(values[g], values[g - 1]);
  }
  return PrivacyCurve(std::vector<double>(grid.begin(), grid.end()), values);
}

// Positions worth scanning for the sensitive entry under technique t.
inline std::vector<std::size_t> spc_positions(const DatabaseModel& db,
                                              const Query& q,
                                              const TemplateDistribution& t) {
  if (db.is_iid() && q.symmetric() && t.exchangeable()) return {0};
  std::vector<std::size_t> js;
  for (std::size_t j = 0; j < db.size(); ++j) {
    if (!db.is_fixed(j) && event_probability(t, DrawnAtLeastOnce{j}) > 0.0) {
      js.push_back(j);
    }
  }
  return js;
}

// max over j of spc(db, q, t, j, .).
inline PrivacyCurve spc_max(const DatabaseModel& db, const Query& q,
                            const TemplateDistribution& t,
                            std::span<const double> grid,
                            std::uint64_t budget = kDefaultBudget) {
  std::vector<double> best(grid.size(), 0.0);
  const auto js = spc_positions(db, q, t);
  if (js.empty()) {
    throw ZeroProbabilityEvent("spc_max: no position is ever drawn");
  }
  for (std::size_t j : js) {
    const PrivacyCurve c = spc(db, q, t, j, grid, budget);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      best[g] = std::max(best[g], c.values()[g]);
    }
  }
  return PrivacyCurve(std::vector<double>(grid.begin(), grid.end()), best);
}

// mu = (1 - lambda) common + lambda mu_rest and
// nu = (1 - lambda) common + lambda nu_rest, with lambda the total variation.
struct MaximalCoupling {
  double lambda;
  Pmf common;
  Pmf mu_rest;
  Pmf nu_rest;
};

inline MaximalCoupling maximal_coupling_split(const Pmf& mu, const Pmf& nu) {
  std::map<double, std::pair<double, double>> joint;
  for (std::size_t i = 0; i < mu.size(); ++i) joint[mu.outcomes()[i]].first = mu.weights()[i];
  for (std::size_t i = 0; i < nu.size(); ++i) joint[nu.outcomes()[i]].second = nu.weights()[i];

  CompensatedSum overlap, excess;
  for (const auto& [a, pq] : joint) {
    overlap.add(std::min(pq.first, pq.second));
    excess.add(std::max(0.0, pq.first - pq.second));
  }
  const double lambda = std::clamp(excess.value(), 0.0, 1.0);
  const double shared = overlap.value();
  if (lambda == 0.0) return {0.0, mu, mu, nu};
  if (!(shared > 0.0)) return {1.0, mu, mu, nu};

  std::map<double, double> common, mu_rest, nu_rest;
  for (const auto& [a, pq] : joint) {
    const double lo = std::min(pq.first, pq.second);
    if (lo > 0.0) common[a] = lo / shared;
    if (pq.first > lo) mu_rest[a] = (pq.first - lo) / lambda;
    if (pq.second > lo) nu_rest[a] = (pq.second - lo) / lambda;
  }
  return {lambda, Pmf::from_map(common), Pmf::from_map(mu_rest),
          Pmf::from_map(nu_rest)};
}

}  // namespace sampriv

#endif  // SAMPRIV_SAMPLING_HPP_
