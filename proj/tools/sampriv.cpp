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
// Command-line front end. Every command writes CSV to --out or stdout.
//
// Exit codes: 0 success, 1 usage or parse error, 2 enumeration budget
// exceeded, 3 verification failure.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sampriv/sampriv.hpp"

namespace {

using sampriv::RunConfig;
using sampriv::TechniqueSpec;

constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerify = 3;

// Raw flag values, applied on top of the config file after parsing.
struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key=value config file");
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"entry", "entry distribution: bern:p | point:v | binom:k,p | pmf:v=w,..."},
      {"n", "database size"},
      {"query", "count | sum | mean"},
      {"technique", "wor:n,m | poisson:n,lambda | wr:n,m | none"},
      {"eps", "epsilon grid: start:end:step | v1,v2,... | v (ln<x> allowed)"},
      {"out", "output path (default stdout)"},
      {"budget", "enumeration budget in states"},
  };
  for (const auto& [key, help] : keys) {
    f.options[key] = cmd->add_option("--" + key, f.values[key], help);
  }
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) sampriv::load_config_file(f.config, cfg);
  for (const auto& [key, opt] : f.options) {
    if (opt->count() > 0) sampriv::apply_setting(cfg, key, f.values.at(key));
  }
  sampriv::validate(cfg);
  return cfg;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw sampriv::InvalidArgument("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int require_n(const RunConfig& cfg) {
  if (!cfg.n) throw sampriv::ParseError("--n is required", 0, 0);
  return *cfg.n;
}

// The technique's n, checked against --n when both are given.
std::size_t technique_n(const RunConfig& cfg, const TechniqueSpec& t) {
  if (cfg.n && static_cast<std::size_t>(*cfg.n) != t.n) {
    throw sampriv::ParseError("--n disagrees with the technique's n", 0, 0);
  }
  return t.n;
}

void cmd_curve(const RunConfig& cfg) {
  const auto entry = sampriv::parse_entry(cfg.entry);
  const auto q = sampriv::Query::by_name(cfg.query);
  const auto grid = sampriv::config_grid(cfg);
  const auto values = sampriv::phi_iid(entry, q, require_n(cfg), grid, cfg.budget);
  Output out(cfg.out);
  sampriv::PrivacyCurve(grid, values).write_csv(out.stream());
}

void cmd_amplify(const RunConfig& cfg) {
  using Kind = TechniqueSpec::Kind;
  const auto tech = sampriv::parse_technique(cfg.technique);
  if (tech.kind == Kind::kNone) {
    throw sampriv::ParseError("amplify needs a --technique other than none", 0, 0);
  }
  const auto entry = sampriv::parse_entry(cfg.entry);
  const auto q = sampriv::Query::by_name(cfg.query);
  const auto grid = sampriv::config_grid(cfg);
  const std::size_t n = technique_n(cfg, tech);
  const auto db = sampriv::DatabaseModel::iid(entry, static_cast<int>(n));
  sampriv::AmplifiedCurve curve;
  switch (tech.kind) {
    case Kind::kWithoutReplacement:
      curve = sampriv::wor_bound(db, q, n, tech.m, grid, cfg.budget);
      break;
    case Kind::kPoisson: {
      const auto c = sampriv::poisson_bound(db, q, n, tech.rate, grid, cfg.budget);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        curve.push_back({grid[g], grid[g], c.values()[g]});
      }
      break;
    }
    case Kind::kWithReplacement:
      curve = sampriv::wr_bound(db, q, n, tech.m, grid, {}, cfg.budget).curve;
      break;
    case Kind::kNone:
      break;
  }
  Output out(cfg.out);
  sampriv::write_csv(out.stream(), curve);
}

// Trade-off function implied by the privacy curve; with wor:n,m, the
// subsampled guarantee built from the size-m curve.
void cmd_tradeoff(const RunConfig& cfg) {
  using Kind = TechniqueSpec::Kind;
  const auto tech = sampriv::parse_technique(cfg.technique);
  const auto entry = sampriv::parse_entry(cfg.entry);
  const auto q = sampriv::Query::by_name(cfg.query);
  const auto grid = sampriv::config_grid(cfg);
  Output out(cfg.out);
  if (tech.kind == Kind::kNone) {
    const auto phi = sampriv::phi_iid(entry, q, require_n(cfg), grid, cfg.budget);
    sampriv::sp_to_tradeoff(sampriv::PrivacyCurve(grid, phi)).write_csv(out.stream());
    return;
  }
  if (tech.kind != Kind::kWithoutReplacement) {
    throw sampriv::ParseError("tradeoff supports --technique wor:n,m or none", 0, 0);
  }
  const std::size_t n = technique_n(cfg, tech);
  const auto phi = sampriv::phi_iid(entry, q, static_cast<int>(tech.m), grid, cfg.budget);
  const auto t = sampriv::sp_to_tradeoff(sampriv::PrivacyCurve(grid, phi));
  sampriv::subsampled_tradeoff(t, n, tech.m).write_csv(out.stream());
}

void cmd_figures(const RunConfig& cfg, const std::string& which) {
  sampriv::FigureParams p = which == "fig1"   ? sampriv::fig1_defaults()
                            : which == "fig2" ? sampriv::fig2_defaults()
                                              : sampriv::fig3_defaults();
  p.entry = sampriv::parse_entry(cfg.entry);
  p.query = sampriv::Query::by_name(cfg.query);
  p.budget = cfg.budget;
  if (!cfg.eps.empty()) p.epsilons = sampriv::parse_grid(cfg.eps);
  if (cfg.n) p.n = static_cast<std::size_t>(*cfg.n);
  Output out(cfg.out);
  if (which == "fig1") {
    std::vector<std::size_t> sizes = sampriv::fig1_sizes();
    if (cfg.n) {
      sizes.clear();
      for (std::size_t n = 10; n <= p.n; n += 10) sizes.push_back(n);
      if (sizes.empty()) sizes.push_back(p.n);
    }
    sampriv::write_csv(out.stream(), sampriv::figure1(p, sizes));
  } else if (which == "fig2") {
    sampriv::write_csv(out.stream(), sampriv::figure2(p, sampriv::figure_rates()));
  } else {
    sampriv::write_csv(out.stream(), sampriv::figure3(p, sampriv::figure_rates()));
  }
}

int cmd_verify(const RunConfig& cfg, std::size_t max_n, bool inject_fault) {
  sampriv::VerifyOptions opt;
  opt.max_n = max_n;
  opt.budget = cfg.budget;
  opt.inject_fault = inject_fault;
  const auto rows = sampriv::run_verify(opt);
  Output out(cfg.out);
  sampriv::write_csv(out.stream(), rows);
  const bool ok = std::all_of(rows.begin(), rows.end(),
                              [](const sampriv::VerifyRow& r) { return r.pass; });
  return ok ? 0 : kExitVerify;
}

// Poisson bound from statistical privacy next to the same sum driven by the
// unsampled curve, as for a DP mechanism.
void cmd_poisson_compare(const RunConfig& cfg) {
  const auto tech = sampriv::parse_technique(cfg.technique);
  if (tech.kind != TechniqueSpec::Kind::kPoisson) {
    throw sampriv::ParseError("poisson-compare needs --technique poisson:n,lambda", 0, 0);
  }
  const auto entry = sampriv::parse_entry(cfg.entry);
  const auto q = sampriv::Query::by_name(cfg.query);
  const auto grid = sampriv::config_grid(cfg);
  const std::size_t n = technique_n(cfg, tech);
  const auto db = sampriv::DatabaseModel::iid(entry, static_cast<int>(n));
  const auto sp = sampriv::poisson_bound(db, q, n, tech.rate, grid, cfg.budget);

  std::vector<double> needed;
  for (double eps : grid) {
    for (std::size_t m = 1; m <= n; ++m) {
      needed.push_back(sampriv::eps_expand(
          eps, static_cast<double>(m) / static_cast<double>(n)));
    }
  }
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  const auto phi = sampriv::phi_iid(entry, q, static_cast<int>(n), needed, cfg.budget);
  const sampriv::PrivacyCurve full(needed, phi);

  Output out(cfg.out);
  out.stream() << "epsilon,sp_delta_star,dp_delta_star\n";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    sampriv::write_row(out.stream(),
                       {grid[g], sp.values()[g],
                        sampriv::dp_poisson_bound(full, n, tech.rate, grid[g])});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical privacy accounting under subsampling"};
  app.require_subcommand(1);

  Flags curve_f, amplify_f, tradeoff_f, figures_f, verify_f, compare_f;
  auto* curve = app.add_subcommand("curve", "privacy curve of the i.i.d. model");
  add_common(curve, curve_f);
  auto* amplify = app.add_subcommand("amplify", "amplification bound for a technique");
  add_common(amplify, amplify_f);
  auto* tradeoff = app.add_subcommand("tradeoff", "trade-off function from the curve");
  add_common(tradeoff, tradeoff_f);
  auto* figures = app.add_subcommand("figures", "figure data series");
  std::string which;
  figures->add_option("which", which, "fig1 | fig2 | fig3")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  add_common(figures, figures_f);
  auto* verify = app.add_subcommand("verify", "pipeline against the brute-force oracle");
  add_common(verify, verify_f);
  std::size_t max_n = 4;
  bool inject_fault = false;
  verify->add_option("--max-n", max_n, "largest database size in the matrix")
      ->check(CLI::Range(1, 6));
  verify->add_flag("--inject-fault", inject_fault)->group("");
  auto* compare = app.add_subcommand("poisson-compare",
                                     "Poisson bound against the DP-style sum");
  add_common(compare, compare_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (curve->parsed()) cmd_curve(resolve(curve_f));
    if (amplify->parsed()) cmd_amplify(resolve(amplify_f));
    if (tradeoff->parsed()) cmd_tradeoff(resolve(tradeoff_f));
    if (figures->parsed()) cmd_figures(resolve(figures_f), which);
    if (verify->parsed()) return cmd_verify(resolve(verify_f), max_n, inject_fault);
    if (compare->parsed()) cmd_poisson_compare(resolve(compare_f));
  } catch (const sampriv::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const sampriv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
