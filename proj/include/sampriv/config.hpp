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
// Run configuration for the command-line tool and the small grammars it
// accepts:
//
//   grid       start:end:step | v1,v2,... | v     (a value may be ln<x>)
//   technique  wor:n,m | poisson:n,lambda | wr:n,m | none
//   entry      bern:p | point:v | binom:k,p | pmf:v=w,v=w,...
//
// A config file holds `key=value` lines with the same keys as the long
// flags; blank lines and lines starting with '#' are ignored.
#ifndef SAMPRIV_CONFIG_HPP_
#define SAMPRIV_CONFIG_HPP_

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "sampriv/dist.hpp"
#include "sampriv/divergence.hpp"
#include "sampriv/error.hpp"
#include "sampriv/numeric.hpp"

namespace sampriv {

struct TechniqueSpec {
  enum class Kind { kNone, kWithoutReplacement, kPoisson, kWithReplacement };
  Kind kind = Kind::kNone;
  std::size_t n = 0;
  std::size_t m = 0;
  double rate = 0.0;
};

struct RunConfig {
  std::string entry = "bern:0.5";
  std::optional<int> n;
  std::string query = "count";
  std::string technique = "none";
  // Empty means the command's default grid.
  std::string eps;
  std::string out;
  std::uint64_t budget = kDefaultBudget;
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace config_detail

inline double parse_number(std::string_view token) {
  const auto t = config_detail::trim(token);
  if (t.size() > 2 && t.substr(0, 2) == "ln") {
    const double inner = parse_number(t.substr(2));
    if (!(inner > 0.0)) throw ParseError("ln of a nonpositive value", 0, 0);
    return std::log(inner);
  }
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ParseError("not a number: '" + std::string(t) + "'", 0, 0);
  }
  return v;
}

inline std::uint64_t parse_count(std::string_view token) {
  const auto t = config_detail::trim(token);
  std::uint64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError("not a nonnegative integer: '" + std::string(t) + "'", 0, 0);
  }
  return v;
}

// Increasing, nonnegative epsilons. Ranges include `end` when it is hit to
// within a millionth of a step; values are rounded to 12 digits.
inline std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> g;
  const auto colon = config_detail::split(spec, ':');
  if (colon.size() == 3) {
    const double start = parse_number(colon[0]);
    const double end = parse_number(colon[1]);
    const double step = parse_number(colon[2]);
    if (!(step > 0.0)) throw ParseError("grid step must be positive", 0, 0);
    if (end < start) throw ParseError("grid end precedes start", 0, 0);
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-6));
    if (count > 1'000'000) throw ParseError("grid has too many points", 0, 0);
    for (std::size_t i = 0; i <= count; ++i) {
      g.push_back(canonical_answer(start + static_cast<double>(i) * step));
    }
  } else if (colon.size() == 1) {
    for (const auto part : config_detail::split(spec, ',')) g.push_back(parse_number(part));
  } else {
    throw ParseError("grid must be start:end:step, a list, or a value", 0, 0);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] >= 0.0)) throw ParseError("grid values must be >= 0", 0, 0);
    if (i > 0 && !(g[i - 1] < g[i])) {
      throw ParseError("grid must be strictly increasing", 0, 0);
    }
  }
  return g;
}

inline TechniqueSpec parse_technique(std::string_view token) {
  using Kind = TechniqueSpec::Kind;
  const auto t = config_detail::trim(token);
  if (t == "none") return {};
  const auto colon = t.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("technique must be wor:n,m, poisson:n,lambda, wr:n,m or none", 0, 0);
  }
  const auto name = t.substr(0, colon);
  const auto args = config_detail::split(t.substr(colon + 1), ',');
  if (args.size() != 2) throw ParseError("technique takes two parameters", 0, 0);
  TechniqueSpec s;
  s.n = parse_count(args[0]);
  if (s.n < 1) throw ParseError("technique needs n >= 1", 0, 0);
  if (name == "wor" || name == "wr") {
    s.kind = name == "wor" ? Kind::kWithoutReplacement : Kind::kWithReplacement;
    s.m = parse_count(args[1]);
    if (s.m < 1) throw ParseError("technique needs m >= 1", 0, 0);
    if (s.kind == Kind::kWithoutReplacement && s.m > s.n) {
      throw ParseError("without replacement needs m <= n", 0, 0);
    }
  } else if (name == "poisson") {
    s.kind = Kind::kPoisson;
    s.rate = parse_number(args[1]);
    if (!(s.rate > 0.0 && s.rate <= 1.0)) {
      throw ParseError("Poisson rate must lie in (0,1]", 0, 0);
    }
  } else {
    throw ParseError("unknown technique '" + std::string(name) + "'", 0, 0);
  }
  return s;
}

inline Pmf parse_entry(std::string_view token) {
  const auto t = config_detail::trim(token);
  const auto colon = t.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("entry must look like bern:p, point:v, binom:k,p or pmf:v=w,...", 0, 0);
  }
  const auto name = t.substr(0, colon);
  const auto rest = t.substr(colon + 1);
  try {
    if (name == "bern") return Pmf::bernoulli(parse_number(rest));
    if (name == "point") return Pmf::point_mass(parse_number(rest));
    if (name == "binom") {
      const auto args = config_detail::split(rest, ',');
      if (args.size() != 2) throw ParseError("binom takes k,p", 0, 0);
      const auto k = parse_count(args[0]);
      if (k > 10'000) throw ParseError("binom k too large", 0, 0);
      return Pmf::binomial(static_cast<int>(k), parse_number(args[1]));
    }
    if (name == "pmf") {
      std::vector<std::pair<double, double>> pairs;
      for (const auto part : config_detail::split(rest, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) throw ParseError("pmf cells are v=w", 0, 0);
        pairs.emplace_back(parse_number(part.substr(0, eq)),
                           parse_number(part.substr(eq + 1)));
      }
      return Pmf::from_pairs(pairs);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, 0);
  }
  throw ParseError("unknown entry '" + std::string(name) + "'", 0, 0);
}

// Applies one `key=value` setting; unknown keys are an error.
inline void apply_setting(RunConfig& cfg, std::string_view key,
                          std::string_view value) {
  const std::string v(config_detail::trim(value));
  if (key == "entry") {
    cfg.entry = v;
  } else if (key == "n") {
    const auto n = parse_count(v);
    if (n > 1'000'000) throw ParseError("n too large", 0, 0);
    cfg.n = static_cast<int>(n);
  } else if (key == "query") {
    cfg.query = v;
  } else if (key == "technique") {
    cfg.technique = v;
  } else if (key == "eps") {
    cfg.eps = v;
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "budget") {
    cfg.budget = parse_count(v);
  } else {
    throw ParseError("unknown key '" + std::string(key) + "'", 0, 0);
  }
}

// Reads `key=value` lines. Errors carry 1-based line and column numbers;
// the column points at the start of the offending key or value.
inline void load_config(std::istream& in, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view sv(line);
    const auto body = config_detail::trim(sv);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = sv.find('=');
    const int key_col = static_cast<int>(sv.find_first_not_of(" \t")) + 1;
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value", lineno, key_col);
    }
    const auto key = config_detail::trim(sv.substr(0, eq));
    if (key.empty()) throw ParseError("missing key", lineno, key_col);
    const auto value_start = sv.find_first_not_of(" \t", eq + 1);
    const int value_col = static_cast<int>(
        value_start == std::string_view::npos ? eq + 2 : value_start + 1);
    try {
      apply_setting(cfg, key, sv.substr(eq + 1));
    } catch (const ParseError& e) {
      const bool key_error = std::string_view(e.what()).starts_with("unknown key");
      throw ParseError(e.what(), lineno, key_error ? key_col : value_col);
    }
  }
}

inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'", 0, 0);
  load_config(in, cfg);
}

inline std::vector<double> config_grid(const RunConfig& cfg) {
  return cfg.eps.empty() ? default_grid() : parse_grid(cfg.eps);
}

// Validates every field that has a grammar, so errors surface before work
// starts.
inline void validate(const RunConfig& cfg) {
  parse_entry(cfg.entry);
  if (!cfg.eps.empty()) parse_grid(cfg.eps);
  parse_technique(cfg.technique);
  if (cfg.n && *cfg.n < 1) throw ParseError("n must be >= 1", 0, 0);
  try {
    Query::by_name(cfg.query);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

}  // namespace sampriv

#endif  // SAMPRIV_CONFIG_HPP_
