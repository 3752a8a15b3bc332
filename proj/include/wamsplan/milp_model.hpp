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

#ifndef WAMSPLAN_MILP_MODEL_HPP_
#define WAMSPLAN_MILP_MODEL_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wamsplan/contingency.hpp"
#include "wamsplan/network.hpp"
#include "wamsplan/options.hpp"
#include "wamsplan/plan.hpp"

namespace wamsplan {

enum class VarKind { kPmu, kDulr, kPdc, kAssign, kPmuInstalled, kDeviceHosted, kInterrupt, kObserved };

const char* VarKindName(VarKind kind);

struct Variable {
  std::string name;
  VarKind kind = VarKind::kPmu;
  // Bus indices (or substation index / bus-state pair) the variable refers to.
  std::size_t a = 0;
  std::size_t b = 0;
  double lower = 0.0;
  double upper = 1.0;
  // Constraint role that fixed the variable through its bounds, if any.
  std::string fixed_by;
};

struct LinearTerm {
  std::size_t var = 0;
  double coef = 0.0;
};

struct LinearExpr {
  std::vector<LinearTerm> terms;
  double constant = 0.0;

  double Value(const std::vector<double>& x) const;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::string role;
  // Identifier safe for LP files.
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

class MilpProblem {
 public:
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  // Construction cost in cents.
  LinearExpr cost;
  // Sum of p_s over unobservable bus-state pairs.
  LinearExpr unreliability;
  // Bit-hops per second.
  LinearExpr traffic;
  // Set when a constraint can be shown unsatisfiable while building.
  std::optional<std::string> infeasible_reason;

  std::size_t num_buses = 0;
  std::size_t num_substations = 0;
  std::vector<double> state_probability;

  std::size_t pmu(std::size_t i, std::size_t j) const { return i * num_buses + j; }
  std::size_t dulr(std::size_t i, std::size_t j) const { return n2() + i * num_buses + j; }
  std::size_t pdc(std::size_t i) const { return 2 * n2() + i; }
  std::size_t assign(std::size_t i, std::size_t j) const {
    return 2 * n2() + num_buses + i * num_buses + j;
  }
  std::size_t pmu_installed(std::size_t i) const { return 3 * n2() + num_buses + i; }
  std::size_t device_hosted(std::size_t i) const { return 3 * n2() + 2 * num_buses + i; }
  std::size_t interrupt(std::size_t k) const { return 3 * n2() + 3 * num_buses + k; }
  // Index of o_{i,s}, or nullopt when the state was below the probability floor.
  std::optional<std::size_t> observed(std::size_t i, std::size_t s) const;

  void AddConstraint(std::string role, std::string name, std::vector<LinearTerm> terms,
                     Sense sense, double rhs);

  // Appends "expr <= bound" (constant folded into the right-hand side).
  void AddObjectiveBound(const std::string& role, const std::string& name,
                         const LinearExpr& expr, double bound);

 private:
  friend MilpProblem BuildModel(const PowerNetwork&, const CaseParameters&,
                                const PlanningOptions&, const ContingencySet&);
  std::size_t n2() const { return num_buses * num_buses; }
  std::size_t observed_base_ = 0;
  std::vector<std::optional<std::size_t>> state_slot_;
};

MilpProblem BuildModel(const PowerNetwork& network, const CaseParameters& params,
                       const PlanningOptions& options, const ContingencySet& states);

struct ModelAudit {
  std::map<std::string, std::size_t> variables_by_kind;
  std::map<std::string, std::size_t> constraints_by_role;
  std::size_t fixed_variables = 0;
  std::size_t total_variables = 0;
  // Problems found: dangling references, bad bounds, misplaced o variables.
  std::vector<std::string> defects;
};

ModelAudit Audit(const MilpProblem& problem);

// Names every violated bound, integrality requirement and constraint.
std::vector<std::string> Verify(const MilpProblem& problem, const std::vector<double>& x,
                                double tolerance = 1e-6);

// Verifies the assignment, builds the plan and checks the indicator
// variables against indicators re-derived from the plan. Throws PlanError.
PlacementPlan ExtractPlan(const MilpProblem& problem, const std::vector<double>& x,
                          const PowerNetwork& network, const PlanningOptions& options);

// Full assignment for a plan; o variables are set from evaluated observability.
std::vector<double> AssignmentFromPlan(const MilpProblem& problem, const PlacementPlan& plan,
                                       const PowerNetwork& network,
                                       const PlanningOptions& options,
                                       const ContingencySet& states);

// CPLEX LP text with the given objective minimized.
void ExportLp(const MilpProblem& problem, const LinearExpr& objective, std::ostream& out,
              const std::string& title = "wamsplan");

struct ExternalSolution {
  // Status reported by the tool, e.g. "Optimal" or "Infeasible"; empty for
  // plain listings.
  std::string status;
  bool infeasible = false;
  std::vector<double> values;
};

// Reads a solution in HiGHS, CBC or plain "name value" form. Variables not
// mentioned are zero. Throws SolverError on unknown names or malformed input.
ExternalSolution ReadSolution(const MilpProblem& problem, std::istream& in);

}  // namespace wamsplan

#endif  // WAMSPLAN_MILP_MODEL_HPP_
