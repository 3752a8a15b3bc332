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

#ifndef WAMSPLAN_SOLVER_HPP_
#define WAMSPLAN_SOLVER_HPP_

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wamsplan/milp_model.hpp"

namespace wamsplan {

enum class SolveStatus { kOptimal, kInfeasible, kCapExceeded };

const char* StatusName(SolveStatus status);

struct SolveLimits {
  std::size_t max_nodes = 1'000'000;
  double max_seconds = 600.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Full 0/1 assignment of the best plan found; empty when none was found.
  std::vector<double> assignment;
  // Objective of the assignment, recomputed from the integral values.
  double objective = std::numeric_limits<double>::infinity();
  // Proven lower bound on the optimum.
  double bound = -std::numeric_limits<double>::infinity();
  double root_bound = -std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  std::size_t lp_iterations = 0;
  double seconds = 0.0;

  bool has_assignment() const { return !assignment.empty(); }
  // Relative gap between objective and bound; zero at optimality.
  double gap() const;
};

// Branch-and-bound over the 0-1 model with LP relaxation bounds. Nodes are
// taken best bound first, then deepest, then oldest; the branching variable
// is the most fractional one, lowest index on ties. A feasible warm_start
// assignment seeds the incumbent.
SolveResult Solve(const MilpProblem& problem, const LinearExpr& objective,
                  const SolveLimits& limits = {},
                  const std::vector<double>* warm_start = nullptr);

struct LpRelaxation {
  bool feasible = false;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  std::size_t iterations = 0;
};

LpRelaxation LpRelax(const MilpProblem& problem, const LinearExpr& objective);

// Runs an external solver. The template receives the LP path in {lp} and
// the expected solution path in {sol}. The returned assignment is verified
// against every constraint before it is accepted; throws SolverError when
// the tool fails or its answer does not check out.
SolveResult Delegate(const MilpProblem& problem, const LinearExpr& objective,
                     const std::string& command_template);

}  // namespace wamsplan

#endif  // WAMSPLAN_SOLVER_HPP_
