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
// Closed-form route for counting-type queries over i.i.d. two-valued
// entries. With entry j fixed, the answer is an affine image of
// I(v) + Binomial(n-1, p), so the privacy curve reduces to divergences
// between a Binomial and its unit shift, without enumerating W^n.
#ifndef SAMPRIV_COUNTING_HPP_
#define SAMPRIV_COUNTING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sampriv/dist.hpp"
#include "sampriv/numeric.hpp"

namespace sampriv {

// How a two-valued entry feeds a counting-type query.
struct CountingIndicator {
  // Probability that the entry is counted.
  double rate;
  // Whether the two support values are counted differently.
  bool distinguishes;
};

// Applies to count/sum/mean over entries with exactly two support values.
inline std::optional<CountingIndicator> counting_indicator(const Pmf& entry,
                                                           const Query& q) {
  if (entry.size() != 2) return std::nullopt;
  const double lo = entry.outcomes()[0];
  const double hi = entry.outcomes()[1];
  switch (q.kind()) {
    case QueryKind::kCount: {
      const bool i_lo = lo > 0.0;
      const bool i_hi = hi > 0.0;
      const double rate = (i_lo ? entry.weights()[0] : 0.0) +
                          (i_hi ? entry.weights()[1] : 0.0);
      return CountingIndicator{rate, i_lo != i_hi};
    }
    case QueryKind::kSum:
    case QueryKind::kMean:
      return CountingIndicator{entry.weights()[1], true};
    default:
      return std::nullopt;
  }
}

// max over both directions of D(1 + B, B) at eps, B ~ Binomial(trials, p).
inline double shifted_binomial_divergence(const std::vector<double>& b,
                                          double eps) {
  const double scale = std::exp(eps);
  CompensatedSum up, down;
  const std::size_t len = b.size() + 1;
  for (std::size_t k = 0; k < len; ++k) {
    const double shifted = k >= 1 ? b[k - 1] : 0.0;
    const double plain = k < b.size() ? b[k] : 0.0;
    const double d1 = plain == 0.0 ? shifted : shifted - scale * plain;
    const double d2 = shifted == 0.0 ? plain : plain - scale * shifted;
    if (d1 > 0.0) up.add(d1);
    if (d2 > 0.0) down.add(d2);
  }
  return std::clamp(std::max(up.value(), down.value()), 0.0, 1.0);
}

// Statistical privacy curve of a counting-type query on n i.i.d. entries.
inline std::vector<double> counting_phi(const CountingIndicator& ind, int n,
                                        std::span<const double> grid) {
  std::vector<double> out(grid.size(), 0.0);
  if (!ind.distinguishes) return out;
  const auto b = binomial_weights(n - 1, ind.rate);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out[g] = shifted_binomial_divergence(b, grid[g]);
  }
  for (std::size_t g = 1; g < out.size(); ++g) out[g] = std::min(out[g], out[g - 1]);
  return out;
}

}  // namespace sampriv

#endif  // SAMPRIV_COUNTING_HPP_
