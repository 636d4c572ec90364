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
#ifndef SAMPRIV_ERROR_HPP_
#define SAMPRIV_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sampriv {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Conditioning a database position that is already fixed.
class AlreadyFixed : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An exact enumeration would visit more states than the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double required, std::uint64_t budget)
      : Error(what + ": " + std::to_string(static_cast<long double>(required)) +
              " states exceed budget " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  double required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  double required_;
  std::uint64_t budget_;
};

// Conditioning on an event of probability zero.
class ZeroProbabilityEvent : public Error {
 public:
  using Error::Error;
};

// A ratio whose denominator vanished.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

// A privacy curve was asked for a value outside its grid.
class CurveDomainError : public Error {
 public:
  using Error::Error;
};

// The optimal distinguishing set is not a half-line for some pair of
// answer distributions; carries the offending epsilon and outcome.
class NotSamplable : public Error {
 public:
  NotSamplable(const std::string& what, double epsilon, double outcome)
      : Error(what), epsilon_(epsilon), outcome_(outcome) {}

  double epsilon() const { return epsilon_; }
  double outcome() const { return outcome_; }

 private:
  double epsilon_;
  double outcome_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(line > 0 ? "line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what
                       : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sampriv

#endif  // SAMPRIV_ERROR_HPP_
