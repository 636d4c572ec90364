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
#ifndef SAMPRIV_NUMERIC_HPP_
#define SAMPRIV_NUMERIC_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "sampriv/error.hpp"

namespace sampriv {

// Default cap on the number of states any exact enumeration may visit.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Tolerance for weights summing to one.
inline constexpr double kMassTolerance = 1e-9;

// Rounds to 12 significant digits so that answers which differ only by
// floating-point noise collapse onto one outcome.
inline double canonical_answer(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  const double scale = std::pow(10.0, 11 - exponent);
  if (!std::isfinite(scale) || scale == 0.0) return x;
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

// Natural log of the binomial coefficient C(n, k).
inline double log_choose(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Binomial(n, p) probabilities for k = 0..n, evaluated in log space.
inline std::vector<double> binomial_weights(int n, double p) {
  if (n < 0) throw InvalidArgument("binomial_weights: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("binomial_weights: p must lie in [0,1]");
  }
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  if (p == 0.0) {
    w[0] = 1.0;
    return w;
  }
  if (p == 1.0) {
    w[static_cast<std::size_t>(n)] = 1.0;
    return w;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (int k = 0; k <= n; ++k) {
    w[static_cast<std::size_t>(k)] =
        std::exp(log_choose(n, k) + k * lp + (n - k) * lq);
  }
  return w;
}

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Multiplies state counts without overflowing; the result is only used to
// compare against a budget.
inline double saturating_product(double acc, double factor) {
  const double r = acc * factor;
  return std::isfinite(r) ? r : std::numeric_limits<double>::max();
}

inline void check_budget(const char* what, double required,
                         std::uint64_t budget) {
  if (required > static_cast<double>(budget)) {
    throw BudgetExceeded(what, required, budget);
  }
}

}  // namespace sampriv

#endif  // SAMPRIV_NUMERIC_HPP_
