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
// Trade-off functions: the optimal type-II error of a test at each type-I
// level, stored as piecewise-linear curves on [0,1], with the conjugate,
// inverse, p-sample and subsampling operators and the conversions to and
// from privacy curves.
//
// For a pair (mu, nu), T(alpha) = inf { nu(S) : mu(A \ S) <= alpha } over
// randomized sets S.
#ifndef SAMPRIV_TRADEOFF_HPP_
#define SAMPRIV_TRADEOFF_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "sampriv/csv.hpp"
#include "sampriv/dist.hpp"
#include "sampriv/divergence.hpp"
#include "sampriv/error.hpp"
#include "sampriv/numeric.hpp"

namespace sampriv {

inline constexpr double kTradeoffTolerance = 1e-9;
inline constexpr double kHullTolerance = 1e-12;

class TradeoffFn {
 public:
  TradeoffFn(std::vector<double> breakpoints, std::vector<double> values)
      : x_(std::move(breakpoints)), y_(std::move(values)) {
    if (x_.size() < 2 || x_.size() != y_.size()) {
      throw InvalidArgument("TradeoffFn: need matching breakpoints, at least 2");
    }
    if (x_.front() != 0.0 || x_.back() != 1.0) {
      throw InvalidArgument("TradeoffFn: breakpoints must run from 0 to 1");
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (i > 0 && !(x_[i - 1] < x_[i])) {
        throw InvalidArgument("TradeoffFn: breakpoints must be strictly increasing");
      }
      if (!(y_[i] >= -kTradeoffTolerance && y_[i] <= 1.0 + kTradeoffTolerance)) {
        throw InvalidArgument("TradeoffFn: values must lie in [0,1]");
      }
      y_[i] = std::clamp(y_[i], 0.0, 1.0);
      if (i > 0 && y_[i] > y_[i - 1] + kTradeoffTolerance) {
        throw InvalidArgument("TradeoffFn: values must be nonincreasing");
      }
    }
    for (std::size_t i = 1; i + 1 < x_.size(); ++i) {
      const double turn = (x_[i] - x_[i - 1]) * (y_[i + 1] - y_[i]) -
                          (x_[i + 1] - x_[i]) * (y_[i] - y_[i - 1]);
      if (turn < -kTradeoffTolerance) {
        throw InvalidArgument("TradeoffFn: function must be convex");
      }
    }
  }

  std::span<const double> breakpoints() const { return x_; }
  std::span<const double> values() const { return y_; }
  std::size_t size() const { return x_.size(); }

  double operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InvalidArgument("TradeoffFn: argument outside [0,1]");
    }
    const auto it = std::lower_bound(x_.begin(), x_.end(), x);
    const auto i = static_cast<std::size_t>(it - x_.begin());
    if (x_[i] == x) return y_[i];
    const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return y_[i - 1] + t * (y_[i] - y_[i - 1]);
  }

  // Header `alpha,t_of_alpha`, one row per breakpoint.
  void write_csv(std::ostream& os) const {
    os << "alpha,t_of_alpha\n";
    for (std::size_t i = 0; i < x_.size(); ++i) write_row(os, {x_[i], y_[i]});
  }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

// 1 - x.
inline TradeoffFn identity_tradeoff() { return TradeoffFn({0.0, 1.0}, {1.0, 0.0}); }

namespace detail {

// Lower convex hull of points sorted by x (monotone chain). Points within
// kHullTolerance of a hull edge are dropped.
inline std::vector<std::pair<double, double>> lower_hull(
    std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> h;
  for (const auto& p : pts) {
    if (!h.empty() && h.back().first == p.first) {
      h.back().second = std::min(h.back().second, p.second);
      // A lowered point may break convexity with its predecessors.
      const auto last = h.back();
      h.pop_back();
      while (h.size() >= 2) {
        const auto& a = h[h.size() - 2];
        const auto& b = h.back();
        const double cross = (b.first - a.first) * (last.second - a.second) -
                             (b.second - a.second) * (last.first - a.first);
        if (cross <= kHullTolerance) h.pop_back(); else break;
      }
      h.push_back(last);
      continue;
    }
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h.back();
      const double cross = (b.first - a.first) * (p.second - a.second) -
                           (b.second - a.second) * (p.first - a.first);
      if (cross <= kHullTolerance) h.pop_back(); else break;
    }
    h.push_back(p);
  }
  return h;
}

inline TradeoffFn from_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> xs, ys;
  for (const auto& [x, y] : pts) {
    xs.push_back(x);
    ys.push_back(std::clamp(y, 0.0, 1.0));
  }
  return TradeoffFn(std::move(xs), std::move(ys));
}

}  // namespace detail

// Neyman-Pearson construction: outcomes enter S in increasing order of
// nu(a)/mu(a), giving the deterministic tests whose interpolation is T.
inline TradeoffFn tradeoff_from_pmfs(const Pmf& mu, const Pmf& nu) {
  std::vector<std::pair<double, double>> pq;  // (mu(a), nu(a))
  {
    std::size_t i = 0, j = 0;
    const auto mx = mu.outcomes();
    const auto nx = nu.outcomes();
    while (i < mx.size() || j < nx.size()) {
      double p = 0.0, q = 0.0;
      if (j == nx.size() || (i < mx.size() && mx[i] < nx[j])) {
        p = mu.weights()[i++];
      } else if (i == mx.size() || nx[j] < mx[i]) {
        q = nu.weights()[j++];
      } else {
        p = mu.weights()[i++];
        q = nu.weights()[j++];
      }
      if (p > 0.0) pq.emplace_back(p, q);
    }
  }
  std::stable_sort(pq.begin(), pq.end(), [](const auto& a, const auto& b) {
    return a.second * b.first < b.second * a.first;
  });

  // With S the first k outcomes: alpha = suffix mass of mu, beta = prefix
  // mass of nu. Walk k downwards to get increasing alpha.
  const std::size_t len = pq.size();
  std::vector<double> alpha(len + 1, 0.0), beta(len + 1, 0.0);
  {
    CompensatedSum s;
    for (std::size_t k = len; k-- > 0;) {
      s.add(pq[k].first);
      alpha[k] = s.value();
    }
    CompensatedSum t;
    for (std::size_t k = 0; k < len; ++k) {
      t.add(pq[k].second);
      beta[k + 1] = t.value();
    }
  }
  alpha[0] = 1.0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = len + 1; k-- > 0;) pts.emplace_back(alpha[k], beta[k]);
  return detail::from_points(detail::lower_hull(std::move(pts)));
}

// sup_x y x - T(x); exact at the breakpoints for piecewise-linear T.
inline double conjugate(const TradeoffFn& t, double y) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    best = std::max(best, y * t.breakpoints()[i] - t.values()[i]);
  }
  return best;
}

// inf { x : T(x) <= alpha }. Where the set is empty (alpha < T(1)) the
// value 1 is joined linearly to the first attained point so the result
// stays piecewise linear.
inline TradeoffFn inverse(const TradeoffFn& t) {
  const auto x = t.breakpoints();
  const auto y = t.values();
  std::vector<std::pair<double, double>> pts;
  if (y.back() > 0.0) pts.emplace_back(0.0, 1.0);
  // Walk from the right so y increases; on a flat run keep the leftmost x.
  for (std::size_t i = x.size(); i-- > 0;) {
    if (!pts.empty() && pts.back().first == y[i]) {
      pts.back().second = x[i];
    } else {
      pts.emplace_back(y[i], x[i]);
    }
  }
  if (pts.back().first < 1.0) pts.emplace_back(1.0, 0.0);
  return detail::from_points(detail::lower_hull(std::move(pts)));
}

// p T(x) + (1 - p)(1 - x).
inline TradeoffFn p_sample(const TradeoffFn& t, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("p_sample: p must lie in [0,1]");
  }
  std::vector<double> xs(t.breakpoints().begin(), t.breakpoints().end());
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys[i] = p * t.values()[i] + (1.0 - p) * (1.0 - xs[i]);
  }
  return TradeoffFn(std::move(xs), std::move(ys));
}

// Convex closure of the pointwise minimum of two trade-off functions.
inline TradeoffFn convex_min(const TradeoffFn& a, const TradeoffFn& b) {
  std::vector<double> xs(a.breakpoints().begin(), a.breakpoints().end());
  xs.insert(xs.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double da = a(xs[i]) - b(xs[i]);
    pts.emplace_back(xs[i], std::min(a(xs[i]), b(xs[i])));
    if (i + 1 < xs.size()) {
      // Both are linear on [xs[i], xs[i+1]]; add their crossing if any.
      const double db = a(xs[i + 1]) - b(xs[i + 1]);
      if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
        const double c = xs[i] + (xs[i + 1] - xs[i]) * da / (da - db);
        if (c > xs[i] && c < xs[i + 1]) pts.emplace_back(c, std::min(a(c), b(c)));
      }
    }
  }
  return detail::from_points(detail::lower_hull(std::move(pts)));
}

// Psi_p(T): convex closure of min(T_p, T_p^{-1}).
inline TradeoffFn psi_operator(const TradeoffFn& t, double p) {
  const TradeoffFn tp = p_sample(t, p);
  return convex_min(tp, inverse(tp));
}

// Largest trade-off function implied by a privacy curve, taking the sup
// over its grid points only; evaluated on 1024 alphas and convexified.
inline TradeoffFn sp_to_tradeoff(const PrivacyCurve& phi) {
  constexpr int kAlphas = 1024;
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < kAlphas; ++k) {
    const double a = k == kAlphas - 1 ? 1.0 : static_cast<double>(k) / (kAlphas - 1);
    double best = 0.0;
    for (std::size_t g = 0; g < phi.size(); ++g) {
      const double eps = phi.grid()[g];
      const double rest = 1.0 - phi.values()[g];
      best = std::max({best, rest - std::exp(eps) * a, std::exp(-eps) * (rest - a)});
    }
    pts.emplace_back(a, std::min(best, 1.0));
  }
  return detail::from_points(detail::lower_hull(std::move(pts)));
}

// 1 + T*(-e^eps), clamped to [0,1].
inline double tradeoff_to_sp(const TradeoffFn& t, double eps) {
  if (!(eps >= 0.0)) throw InvalidArgument("tradeoff_to_sp: eps must be >= 0");
  return std::clamp(1.0 + conjugate(t, -std::exp(eps)), 0.0, 1.0);
}

// Psi_{m/n}(T), the guarantee after sampling m of n without replacement.
inline TradeoffFn subsampled_tradeoff(const TradeoffFn& t, std::size_t n,
                                      std::size_t m) {
  if (m < 1 || m > n) throw InvalidArgument("need 1 <= m <= n");
  return psi_operator(t, static_cast<double>(m) / static_cast<double>(n));
}

}  // namespace sampriv

#endif  // SAMPRIV_TRADEOFF_HPP_
