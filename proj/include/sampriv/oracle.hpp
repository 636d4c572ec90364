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
// Brute-force reference computations. Everything here enumerates the joint
// space directly and aggregates answers with its own code, so it can be used
// to check the main pipeline.
#ifndef SAMPRIV_ORACLE_HPP_
#define SAMPRIV_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "sampriv/dist.hpp"
#include "sampriv/error.hpp"
#include "sampriv/sampling.hpp"

namespace sampriv {

inline constexpr std::size_t kOracleMaxOutcomes = 12;

namespace oracle_detail {

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Same 12-digit rounding as the pipeline, through the C library.
inline double round_answer(double a) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", a);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

// Exact answer distribution after sampling, as an ordered map.
inline std::map<double, Kahan> joint_answers(const DatabaseModel& db,
                                             const TemplateDistribution& t,
                                             const Query& q,
                                             std::uint64_t budget) {
  const std::size_t n = db.size();
  const std::size_t w = db.support().size();
  const double states = static_cast<double>(t.support().size()) *
                        std::pow(static_cast<double>(w), static_cast<double>(n));
  if (states > static_cast<double>(budget)) {
    throw BudgetExceeded("oracle joint enumeration", states, budget);
  }
  std::vector<std::vector<double>> probs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = db.fixed_value(i);
    for (std::size_t k = 0; k < w; ++k) {
      if (v) {
        probs[i].push_back(db.support()[k] == *v ? 1.0 : 0.0);
      } else {
        probs[i].push_back(db.entry(i).weights()[k]);
      }
    }
  }
  std::map<double, Kahan> out;
  std::vector<std::size_t> digit(n, 0);
  std::vector<double> sample;
  while (true) {
    double pdb = 1.0;
    for (std::size_t i = 0; i < n; ++i) pdb *= probs[i][digit[i]];
    if (pdb > 0.0) {
      for (const auto& wt : t.support()) {
        sample.clear();
        for (std::size_t idx : wt.indices) sample.push_back(db.support()[digit[idx]]);
        out[round_answer(q(sample))].add(wt.probability * pdb);
      }
    }
    std::size_t i = 0;
    while (i < n && ++digit[i] == w) digit[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace oracle_detail

// Hockey-stick divergence at eps between the sampled answer distributions of
// db_v and db_w, by joint enumeration over (template, database values).
inline double oracle_divergence(const DatabaseModel& db_v,
                                const DatabaseModel& db_w,
                                const TemplateDistribution& t, const Query& q,
                                double eps,
                                std::uint64_t budget = kDefaultBudget) {
  const auto mu = oracle_detail::joint_answers(db_v, t, q, budget);
  const auto nu = oracle_detail::joint_answers(db_w, t, q, budget);
  const double scale = std::exp(eps);
  oracle_detail::Kahan total;
  for (const auto& [a, p] : mu) {
    const auto it = nu.find(a);
    const double d = it == nu.end() ? p.sum : p.sum - scale * it->second.sum;
    if (d > 0.0) total.add(d);
  }
  return std::clamp(total.sum, 0.0, 1.0);
}

// max over ordered pairs v != w in W of oracle_divergence(db|j=v, db|j=w).
inline double oracle_max_divergence(const DatabaseModel& db, std::size_t j,
                                    const TemplateDistribution& t,
                                    const Query& q, double eps,
                                    std::uint64_t budget = kDefaultBudget) {
  double best = 0.0;
  for (double v : db.support()) {
    for (double w : db.support()) {
      if (v == w) continue;
      best = std::max(best, oracle_divergence(condition(db, j, v),
                                              condition(db, j, w), t, q, eps,
                                              budget));
    }
  }
  return best;
}

// inf of nu(S) over randomized sets S with mu(A \ S) <= alpha, by listing
// every deterministic S and mixing pairs of them.
inline double oracle_tradeoff(const Pmf& mu, const Pmf& nu, double alpha) {
  std::map<double, std::pair<double, double>> joint;
  for (std::size_t i = 0; i < mu.size(); ++i) joint[mu.outcomes()[i]].first = mu.weights()[i];
  for (std::size_t i = 0; i < nu.size(); ++i) joint[nu.outcomes()[i]].second = nu.weights()[i];
  if (joint.size() > kOracleMaxOutcomes) {
    throw InvalidArgument("oracle_tradeoff: union support exceeds 12 outcomes");
  }
  std::vector<std::pair<double, double>> cells(joint.size());
  std::size_t c = 0;
  for (const auto& [a, pq] : joint) cells[c++] = pq;

  // (mu(A \ S), nu(S)) for every S.
  std::vector<std::pair<double, double>> pts;
  const std::uint32_t count = 1u << cells.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    oracle_detail::Kahan out_mu, in_nu;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (mask & (1u << k)) {
        in_nu.add(cells[k].second);
      } else {
        out_mu.add(cells[k].first);
      }
    }
    pts.emplace_back(out_mu.sum, in_nu.sum);
  }
  // Keep the points not dominated in both coordinates.
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> front;
  for (const auto& p : pts) {
    if (front.empty() || p.second < front.back().second) front.push_back(p);
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (front[i].first > alpha) break;
    best = std::min(best, front[i].second);
    for (std::size_t k = i + 1; k < front.size(); ++k) {
      if (front[k].first <= alpha) continue;
      const double t = (alpha - front[i].first) / (front[k].first - front[i].first);
      best = std::min(best, front[i].second + t * (front[k].second - front[i].second));
    }
  }
  return best;
}

}  // namespace sampriv

#endif  // SAMPRIV_ORACLE_HPP_
