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
// Privacy loss, hockey-stick divergence, statistical privacy curves and the
// half-line structure check on pairs of answer distributions.
#ifndef SAMPRIV_DIVERGENCE_HPP_
#define SAMPRIV_DIVERGENCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sampriv/csv.hpp"
#include "sampriv/dist.hpp"
#include "sampriv/error.hpp"
#include "sampriv/numeric.hpp"

namespace sampriv {

inline constexpr double kCurveTolerance = 1e-12;

// delta as a function of epsilon, sampled on an increasing grid of
// nonnegative epsilons. Values are nonincreasing and lie in [0,1].
class PrivacyCurve {
 public:
  PrivacyCurve(std::vector<double> grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.empty()) throw InvalidArgument("PrivacyCurve: empty grid");
    if (grid_.size() != values_.size()) {
      throw InvalidArgument("PrivacyCurve: grid and values differ in length");
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (!(grid_[i] >= 0.0) || !std::isfinite(grid_[i])) {
        throw InvalidArgument("PrivacyCurve: epsilons must be finite and >= 0");
      }
      if (i > 0 && !(grid_[i - 1] < grid_[i])) {
        throw InvalidArgument("PrivacyCurve: grid must be strictly increasing");
      }
      if (!(values_[i] >= -kCurveTolerance && values_[i] <= 1.0 + kCurveTolerance)) {
        throw InvalidArgument("PrivacyCurve: delta outside [0,1]");
      }
      values_[i] = std::clamp(values_[i], 0.0, 1.0);
      if (i > 0 && values_[i] > values_[i - 1] + kCurveTolerance) {
        throw InvalidArgument("PrivacyCurve: delta must be nonincreasing");
      }
    }
  }

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return grid_.size(); }

  // Header `epsilon,delta`, one row per grid point.
  void write_csv(std::ostream& os) const {
    os << "epsilon,delta\n";
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      write_row(os, {grid_[i], values_[i]});
    }
  }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

// 0, 0.05, ..., 3.
inline std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 60; ++i) g.push_back(i * 0.05);
  return g;
}

// ln(mu(a)/nu(a)) with ln 0/0 = 0, ln >0/0 = +inf, ln 0/>0 = -inf.
inline double plrv(const Pmf& mu, const Pmf& nu, double a) {
  if (!mu.contains(a) && !nu.contains(a)) {
    throw InvalidArgument("plrv: answer outside both supports");
  }
  const double p = mu.mass_at(a);
  const double q = nu.mass_at(a);
  if (p == 0.0 && q == 0.0) return 0.0;
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(p / q);
}

// Sum over the union support of max(0, mu(a) - e^eps nu(a)).
inline double hockey_stick(const Pmf& mu, const Pmf& nu, double eps) {
  if (!(eps >= 0.0)) throw InvalidArgument("hockey_stick: eps must be >= 0");
  const double scale = std::exp(eps);
  CompensatedSum total;
  std::size_t j = 0;
  const auto nx = nu.outcomes();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double a = mu.outcomes()[i];
    while (j < nx.size() && nx[j] < a) ++j;
    const double q = (j < nx.size() && nx[j] == a) ? nu.weights()[j] : 0.0;
    const double p = mu.weights()[i];
    const double term = q == 0.0 ? p : p - scale * q;
    if (term > 0.0) total.add(term);
  }
  return std::clamp(total.value(), 0.0, 1.0);
}

inline double total_variation(const Pmf& mu, const Pmf& nu) {
  return hockey_stick(mu, nu, 0.0);
}

// Largest hockey-stick divergence over ordered pairs of `pmfs`, per epsilon.
inline std::vector<double> max_pairwise_divergence(std::span<const Pmf> pmfs,
                                                   std::span<const double> grid) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t v = 0; v < pmfs.size(); ++v) {
    for (std::size_t w = 0; w < pmfs.size(); ++w) {
      if (v == w) continue;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        out[g] = std::max(out[g], hockey_stick(pmfs[v], pmfs[w], grid[g]));
      }
    }
  }
  return out;
}

// Positions whose sensitive-entry choice must be scanned. Exchangeable
// models under symmetric queries need only the first.
inline std::vector<std::size_t> sensitive_positions(const DatabaseModel& db,
                                                    const Query& q) {
  if (db.is_iid() && q.symmetric()) return {0};
  std::vector<std::size_t> js;
  for (std::size_t j = 0; j < db.size(); ++j) {
    if (!db.is_fixed(j)) js.push_back(j);
  }
  return js;
}

// Statistical privacy curve of q under db: for each epsilon, the largest
// divergence between the answer distributions with entry j fixed to v and
// to w, over all j and all ordered pairs v, w in W.
inline PrivacyCurve sp_curve(const DatabaseModel& db, const Query& q,
                             std::span<const double> grid,
                             std::uint64_t budget = kDefaultBudget) {
  if (db.has_fixed()) {
    throw InvalidArgument("sp_curve: model must not contain fixed entries");
  }
  std::vector<double> best(grid.size(), 0.0);
  for (std::size_t j : sensitive_positions(db, q)) {
    std::vector<Pmf> pmfs;
    for (double v : db.support()) {
      pmfs.push_back(pushforward(condition(db, j, v), q, budget));
    }
    const auto d = max_pairwise_divergence(pmfs, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) best[g] = std::max(best[g], d[g]);
  }
  return PrivacyCurve(std::vector<double>(grid.begin(), grid.end()), best);
}

struct HalfLineResult {
  bool ok = true;
  // First failing epsilon and the outcome that breaks the half-line shape.
  double epsilon = 0.0;
  double outcome = 0.0;
};

// Checks, at every grid epsilon, that some maximiser of
// S -> mu(S) - e^eps nu(S) is a prefix or a suffix of the ordered union
// support. Outcomes where the difference vanishes (within `tol`) may go
// either way. Only the grid points are certified.
inline HalfLineResult half_line_check(const Pmf& mu, const Pmf& nu,
                                      std::span<const double> grid,
                                      double tol = 1e-12) {
  std::vector<std::pair<double, double>> pts;  // (mu(a), nu(a)) in order
  std::vector<double> xs;
  {
    std::size_t i = 0, j = 0;
    const auto mx = mu.outcomes();
    const auto nx = nu.outcomes();
    while (i < mx.size() || j < nx.size()) {
      double a;
      double p = 0.0, q = 0.0;
      if (j == nx.size() || (i < mx.size() && mx[i] < nx[j])) {
        a = mx[i];
        p = mu.weights()[i++];
      } else if (i == mx.size() || nx[j] < mx[i]) {
        a = nx[j];
        q = nu.weights()[j++];
      } else {
        a = mx[i];
        p = mu.weights()[i++];
        q = nu.weights()[j++];
      }
      if (p > 0.0 || q > 0.0) {
        xs.push_back(a);
        pts.emplace_back(p, q);
      }
    }
  }
  for (double eps : grid) {
    const double scale = std::exp(eps);
    // Sign pattern: +1 strictly positive, -1 strictly negative, 0 tie.
    std::vector<int> sign(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto [p, q] = pts[k];
      const double d = q == 0.0 ? p : p - scale * q;
      sign[k] = d > tol ? 1 : (d < -tol ? -1 : 0);
    }
    std::ptrdiff_t first_pos = -1, last_pos = -1, first_neg = -1, last_neg = -1;
    for (std::size_t k = 0; k < sign.size(); ++k) {
      const auto sk = static_cast<std::ptrdiff_t>(k);
      if (sign[k] > 0) {
        if (first_pos < 0) first_pos = sk;
        last_pos = sk;
      } else if (sign[k] < 0) {
        if (first_neg < 0) first_neg = sk;
        last_neg = sk;
      }
    }
    if (first_pos < 0 || first_neg < 0) continue;
    const bool prefix = last_pos < first_neg;
    const bool suffix = first_pos > last_neg;
    if (prefix || suffix) continue;
    // Report the first positive outcome lying past a negative one.
    std::size_t witness = static_cast<std::size_t>(last_pos);
    for (auto k = static_cast<std::size_t>(first_neg); k < sign.size(); ++k) {
      if (sign[k] > 0) {
        witness = k;
        break;
      }
    }
    return {false, eps, xs[witness]};
  }
  return {};
}

}  // namespace sampriv

#endif  // SAMPRIV_DIVERGENCE_HPP_
