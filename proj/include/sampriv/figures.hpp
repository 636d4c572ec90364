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
// Data series behind the three figures: the privacy curve against database
// size, and the delta ratio of subsampled to unsampled queries for sampling
// without replacement and for Poisson sampling.
#ifndef SAMPRIV_FIGURES_HPP_
#define SAMPRIV_FIGURES_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "sampriv/amplify.hpp"
#include "sampriv/csv.hpp"
#include "sampriv/dist.hpp"
#include "sampriv/error.hpp"

namespace sampriv {

struct FigureParams {
  Pmf entry = Pmf::bernoulli(0.5);
  Query query = Query::count();
  // Database size for the ratio figures.
  std::size_t n = 0;
  std::vector<double> epsilons;
  std::uint64_t budget = kDefaultBudget;
};

inline FigureParams fig1_defaults() {
  FigureParams p;
  p.epsilons = {1.0, 0.3, 0.1};
  return p;
}

inline FigureParams fig2_defaults() {
  FigureParams p;
  p.n = 1000;
  p.epsilons = {0.1, 0.075, 0.05, 0.025};
  return p;
}

inline FigureParams fig3_defaults() {
  FigureParams p;
  p.n = 100;
  p.epsilons = {0.1, 0.075, 0.05, 0.025};
  return p;
}

// 10, 20, ..., 200.
inline std::vector<std::size_t> fig1_sizes() {
  std::vector<std::size_t> ns;
  for (std::size_t n = 10; n <= 200; n += 10) ns.push_back(n);
  return ns;
}

// 0.1, 0.2, ..., 1.0.
inline std::vector<double> figure_rates() {
  std::vector<double> r;
  for (int i = 1; i <= 10; ++i) r.push_back(i / 10.0);
  return r;
}

struct SizeRow {
  double epsilon;
  std::size_t n;
  double delta;
};

struct RatioRow {
  double epsilon;
  double lambda;
  double ratio;
};

// Privacy curve against database size, one series per epsilon.
inline std::vector<SizeRow> figure1(const FigureParams& p,
                                    const std::vector<std::size_t>& sizes) {
  std::vector<SizeRow> rows;
  for (double eps : p.epsilons) {
    for (std::size_t n : sizes) {
      const double d =
          phi_iid(p.entry, p.query, static_cast<int>(n), {&eps, 1}, p.budget)[0];
      rows.push_back({eps, n, d});
    }
  }
  return rows;
}

inline std::size_t sample_size(std::size_t n, double rate) {
  const auto m = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  if (m < 1) throw InvalidArgument("sampling rate leaves an empty sample");
  return m;
}

// Without replacement: viability ratio at m = round(lambda n).
inline std::vector<RatioRow> figure2(const FigureParams& p,
                                     const std::vector<double>& rates) {
  if (p.n < 1) throw InvalidArgument("figure 2 needs n >= 1");
  std::vector<RatioRow> rows;
  for (double eps : p.epsilons) {
    for (double rate : rates) {
      const std::size_t m = sample_size(p.n, rate);
      rows.push_back({eps, rate, viability_ratio(p.entry, p.query, p.n, m, eps, p.budget)});
    }
  }
  return rows;
}

// Poisson sampling: delta*(eps) / Phi_n(eps).
inline std::vector<RatioRow> figure3(const FigureParams& p,
                                     const std::vector<double>& rates) {
  if (p.n < 1) throw InvalidArgument("figure 3 needs n >= 1");
  const auto db = DatabaseModel::iid(p.entry, static_cast<int>(p.n));
  std::vector<RatioRow> rows;
  for (double eps : p.epsilons) {
    const double full =
        phi_iid(p.entry, p.query, static_cast<int>(p.n), {&eps, 1}, p.budget)[0];
    if (!(full > 0.0)) throw ZeroDenominator("figure 3: unsampled delta is zero");
    for (double rate : rates) {
      const PrivacyCurve c = poisson_bound(db, p.query, p.n, rate, {&eps, 1}, p.budget);
      rows.push_back({eps, rate, c.values()[0] / full});
    }
  }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<SizeRow>& rows) {
  os << "epsilon,n,delta\n";
  for (const auto& r : rows) write_row(os, {r.epsilon, static_cast<double>(r.n), r.delta});
}

inline void write_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
  os << "epsilon,lambda,ratio\n";
  for (const auto& r : rows) write_row(os, {r.epsilon, r.lambda, r.ratio});
}

}  // namespace sampriv

#endif  // SAMPRIV_FIGURES_HPP_
