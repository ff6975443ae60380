// Copyright 2026 The capnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAPNET_ERRORS_HPP_
#define CAPNET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace capnet {

// Caller violated a documented precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The instance has no feasible solution (or the requested target cannot be
// reached from the given structure).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Greedy augmentation ran out of candidates with positive marginal gain.
class StallError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

// An exhaustive oracle refused an input larger than its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace capnet

#endif  // CAPNET_ERRORS_HPP_
