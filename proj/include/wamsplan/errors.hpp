// Copyright 2026 The wamsplan Authors
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

#ifndef WAMSPLAN_ERRORS_HPP_
#define WAMSPLAN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace wamsplan {

// Malformed or invalid case file / network description.
class CaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A plan that cannot be interpreted (bad plan file, dangling assignment).
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent planning options or a model that is infeasible by
// construction.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solver failures: numerical breakdown, external tool errors, rejected
// external solutions.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wamsplan

#endif  // WAMSPLAN_ERRORS_HPP_
