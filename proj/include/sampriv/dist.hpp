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
// Finite discrete distributions, product database models, conditioning on
// one entry, and the exact pushforward of a database through a query.
//
// Database positions are 0-based throughout the library.
#ifndef SAMPRIV_DIST_HPP_
#define SAMPRIV_DIST_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sampriv/error.hpp"
#include "sampriv/numeric.hpp"

namespace sampriv {

// Probability mass function over a strictly increasing set of real outcomes.
// Outcomes may carry zero weight; they still belong to the outcome set.
class Pmf {
 public:
  Pmf(std::vector<double> outcomes, std::vector<double> weights)
      : outcomes_(std::move(outcomes)), weights_(std::move(weights)) {
    validate();
  }

  // Builds a Pmf from unordered (outcome, weight) pairs. Outcomes are rounded
  // to 12 significant digits and equal outcomes are merged.
  static Pmf from_pairs(std::span<const std::pair<double, double>> pairs) {
    std::map<double, double> acc;
    for (const auto& [a, w] : pairs) acc[canonical_answer(a)] += w;
    return from_map(acc);
  }

  static Pmf from_map(const std::map<double, double>& acc) {
    std::vector<double> xs;
    std::vector<double> ws;
    xs.reserve(acc.size());
    ws.reserve(acc.size());
    for (const auto& [a, w] : acc) {
      xs.push_back(a);
      ws.push_back(w);
    }
    return Pmf(std::move(xs), std::move(ws));
  }

  static Pmf point_mass(double v) { return Pmf({v}, {1.0}); }

  static Pmf bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument("bernoulli: p must lie in [0,1]");
    }
    return Pmf({0.0, 1.0}, {1.0 - p, p});
  }

  // Binomial(trials, p) on the outcomes 0..trials.
  static Pmf binomial(int trials, double p) {
    std::vector<double> xs(static_cast<std::size_t>(trials) + 1);
    std::iota(xs.begin(), xs.end(), 0.0);
    return Pmf(std::move(xs), binomial_weights(trials, p));
  }

  std::span<const double> outcomes() const { return outcomes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return outcomes_.size(); }

  bool contains(double a) const {
    return std::binary_search(outcomes_.begin(), outcomes_.end(), a);
  }

  // Weight at `a`, zero when `a` is not an outcome.
  double mass_at(double a) const {
    const auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), a);
    if (it == outcomes_.end() || *it != a) return 0.0;
    return weights_[static_cast<std::size_t>(it - outcomes_.begin())];
  }

  double total_mass() const {
    CompensatedSum s;
    for (double w : weights_) s.add(w);
    return s.value();
  }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  void validate() const {
    if (outcomes_.empty()) throw InvalidArgument("Pmf: empty outcome set");
    if (outcomes_.size() != weights_.size()) {
      throw InvalidArgument("Pmf: outcomes and weights differ in length");
    }
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
      if (!std::isfinite(outcomes_[i])) {
        throw InvalidArgument("Pmf: outcomes must be finite");
      }
      if (i > 0 && !(outcomes_[i - 1] < outcomes_[i])) {
        throw InvalidArgument("Pmf: outcomes must be strictly increasing");
      }
      if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
        throw InvalidArgument("Pmf: weights must be finite and nonnegative");
      }
    }
    if (std::fabs(total_mass() - 1.0) > kMassTolerance) {
      throw InvalidArgument("Pmf: weights must sum to 1");
    }
  }

  std::vector<double> outcomes_;
  std::vector<double> weights_;
};

// Same outcome set and weights within `tol`.
inline bool approx_equal(const Pmf& a, const Pmf& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.outcomes()[i] != b.outcomes()[i]) return false;
    if (std::fabs(a.weights()[i] - b.weights()[i]) > tol) return false;
  }
  return true;
}

// Sum_i coeff_i * pmf_i, outcomes merged after rounding.
inline Pmf mixture(std::span<const std::pair<double, Pmf>> parts) {
  std::map<double, double> acc;
  for (const auto& [coeff, pmf] : parts) {
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      acc[canonical_answer(pmf.outcomes()[i])] += coeff * pmf.weights()[i];
    }
  }
  return Pmf::from_map(acc);
}

enum class QueryKind { kCount, kSum, kMean, kCustom };

// A symmetric family of functions F_m applied to samples of any size m >= 0.
// The empty sample maps to a fixed declared answer.
class Query {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  Query(std::string name, Evaluator evaluator, bool monotone, bool symmetric,
        double empty_answer = 0.0, QueryKind kind = QueryKind::kCustom)
      : name_(std::move(name)),
        evaluator_(std::move(evaluator)),
        monotone_(monotone),
        symmetric_(symmetric),
        empty_answer_(empty_answer),
        kind_(kind) {}

  // Number of entries with a positive value.
  static Query count() {
    return Query(
        "count",
        [](std::span<const double> xs) {
          return static_cast<double>(
              std::count_if(xs.begin(), xs.end(), [](double x) { return x > 0; }));
        },
        true, true, 0.0, QueryKind::kCount);
  }

  static Query sum() {
    return Query(
        "sum",
        [](std::span<const double> xs) {
          return std::accumulate(xs.begin(), xs.end(), 0.0);
        },
        true, true, 0.0, QueryKind::kSum);
  }

  static Query mean() {
    return Query(
        "mean",
        [](std::span<const double> xs) {
          return std::accumulate(xs.begin(), xs.end(), 0.0) /
                 static_cast<double>(xs.size());
        },
        true, true, 0.0, QueryKind::kMean);
  }

  static Query constant(double c) {
    return Query(
        "constant", [c](std::span<const double>) { return c; }, true, true, c);
  }

  static Query by_name(const std::string& name) {
    if (name == "count") return count();
    if (name == "sum") return sum();
    if (name == "mean") return mean();
    throw InvalidArgument("unknown query '" + name + "'");
  }

  double operator()(std::span<const double> sample) const {
    if (sample.empty()) return empty_answer_;
    return evaluator_(sample);
  }

  const std::string& name() const { return name_; }
  bool monotone() const { return monotone_; }
  bool symmetric() const { return symmetric_; }
  double empty_answer() const { return empty_answer_; }
  QueryKind kind() const { return kind_; }

 private:
  std::string name_;
  Evaluator evaluator_;
  bool monotone_;
  bool symmetric_;
  double empty_answer_;
  QueryKind kind_;
};

// n independent entries over a common support W, some possibly fixed to a
// value in W. Immutable; conditioning returns a new model.
class DatabaseModel {
 public:
  explicit DatabaseModel(std::vector<Pmf> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) {
      throw InvalidArgument("DatabaseModel: need at least one entry");
    }
    for (const Pmf& e : entries_) {
      if (!std::equal(e.outcomes().begin(), e.outcomes().end(),
                      entries_[0].outcomes().begin(),
                      entries_[0].outcomes().end())) {
        throw InvalidArgument(
            "DatabaseModel: all entries must share one outcome set");
      }
    }
  }

  static DatabaseModel iid(const Pmf& entry, int n) {
    if (n < 1) throw InvalidArgument("DatabaseModel: n must be >= 1");
    return DatabaseModel(std::vector<Pmf>(static_cast<std::size_t>(n), entry));
  }

  std::size_t size() const { return entries_.size(); }

  // The common support W.
  std::span<const double> support() const { return entries_[0].outcomes(); }

  // The unconditioned distribution of entry i.
  const Pmf& entry(std::size_t i) const { return entries_.at(i); }

  std::optional<double> fixed_value(std::size_t i) const {
    const auto it = fixed_.find(i);
    if (it == fixed_.end()) return std::nullopt;
    return it->second;
  }
  bool is_fixed(std::size_t i) const { return fixed_.contains(i); }
  bool has_fixed() const { return !fixed_.empty(); }

  // Entry i as it enters an enumeration: a point mass on W when fixed.
  Pmf effective_entry(std::size_t i) const {
    const auto v = fixed_value(i);
    if (!v) return entries_.at(i);
    std::vector<double> ws(support().size(), 0.0);
    const auto it = std::lower_bound(support().begin(), support().end(), *v);
    ws[static_cast<std::size_t>(it - support().begin())] = 1.0;
    return Pmf(std::vector<double>(support().begin(), support().end()),
               std::move(ws));
  }

  // Unfixed and identically distributed entries.
  bool is_iid() const {
    if (has_fixed()) return false;
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const Pmf& e) { return e == entries_[0]; });
  }

  friend DatabaseModel condition(const DatabaseModel& db, std::size_t j,
                                 double w);

 private:
  std::vector<Pmf> entries_;
  std::map<std::size_t, double> fixed_;
};

// The model with entry j fixed to w; the input is left untouched.
inline DatabaseModel condition(const DatabaseModel& db, std::size_t j,
                               double w) {
  if (j >= db.size()) {
    throw InvalidArgument("condition: position " + std::to_string(j) +
                          " out of range");
  }
  if (!std::binary_search(db.support().begin(), db.support().end(), w)) {
    throw InvalidArgument("condition: value outside the support W");
  }
  if (db.is_fixed(j)) {
    throw AlreadyFixed("condition: position " + std::to_string(j) +
                       " is already fixed");
  }
  DatabaseModel out = db;
  out.fixed_[j] = w;
  return out;
}

namespace detail {

// Exact answer distribution of q over the sample (db[t_0], ..., db[t_{m-1}]).
// Repeated indices refer to the same random entry, so only the distinct
// positions are enumerated.
inline Pmf enumerate_answers(const DatabaseModel& db,
                             std::span<const std::size_t> tmpl, const Query& q,
                             std::uint64_t budget) {
  if (tmpl.empty()) return Pmf::point_mass(canonical_answer(q({})));

  std::vector<std::size_t> distinct(tmpl.begin(), tmpl.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.back() >= db.size()) {
    throw InvalidArgument("template index out of range");
  }

  // Positive-weight support of every distinct slot.
  std::vector<std::vector<double>> values(distinct.size());
  std::vector<std::vector<double>> probs(distinct.size());
  double states = 1.0;
  for (std::size_t s = 0; s < distinct.size(); ++s) {
    const Pmf e = db.effective_entry(distinct[s]);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e.weights()[i] > 0.0) {
        values[s].push_back(e.outcomes()[i]);
        probs[s].push_back(e.weights()[i]);
      }
    }
    states = saturating_product(states, static_cast<double>(values[s].size()));
  }
  check_budget("answer enumeration", states, budget);

  std::vector<std::size_t> slot_of(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    slot_of[i] = static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), tmpl[i]) -
        distinct.begin());
  }

  std::map<double, double> acc;
  std::vector<std::size_t> digit(distinct.size(), 0);
  std::vector<double> sample(tmpl.size());
  while (true) {
    double weight = 1.0;
    for (std::size_t s = 0; s < distinct.size(); ++s) weight *= probs[s][digit[s]];
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      sample[i] = values[slot_of[i]][digit[slot_of[i]]];
    }
    acc[canonical_answer(q(sample))] += weight;

    std::size_t s = 0;
    while (s < digit.size() && ++digit[s] == values[s].size()) digit[s++] = 0;
    if (s == digit.size()) break;
  }
  return Pmf::from_map(acc);
}

}  // namespace detail

// Exact distribution of q over the full database.
inline Pmf pushforward(const DatabaseModel& db, const Query& q,
                       std::uint64_t budget = kDefaultBudget) {
  std::vector<std::size_t> all(db.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return detail::enumerate_answers(db, all, q, budget);
}

// Minimum number of differing entry distributions over all matchings of the
// smaller model into the larger, plus the size difference. Fixed entries
// count as point masses. Equivalent to max(|A \ B|, |B \ A|) on multisets.
inline std::size_t gamma_distance(const DatabaseModel& a,
                                  const DatabaseModel& b) {
  auto key = [](const Pmf& p) {
    std::vector<double> k;
    for (std::size_t i = 0; i < p.size(); ++i) {
      k.push_back(p.outcomes()[i]);
      k.push_back(canonical_answer(p.weights()[i]));
    }
    return k;
  };
  auto keys = [&](const DatabaseModel& db) {
    std::vector<std::vector<double>> ks;
    for (std::size_t i = 0; i < db.size(); ++i) ks.push_back(key(db.effective_entry(i)));
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  const auto ka = keys(a);
  const auto kb = keys(b);
  std::vector<std::vector<double>> common;
  std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                        std::back_inserter(common));
  return std::max(ka.size(), kb.size()) - common.size();
}

}  // namespace sampriv

#endif  // SAMPRIV_DIST_HPP_
