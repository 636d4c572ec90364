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
#ifndef SAMPRIV_CSV_HPP_
#define SAMPRIV_CSV_HPP_

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <string>
#include <system_error>

namespace sampriv {

// Shortest decimal string that parses back to exactly `x`.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";  // also folds -0
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

inline void write_row(std::ostream& os, std::initializer_list<double> cells) {
  bool first = true;
  for (double c : cells) {
    if (!first) os << ',';
    os << format_double(c);
    first = false;
  }
  os << '\n';
}

}  // namespace sampriv

#endif  // SAMPRIV_CSV_HPP_
