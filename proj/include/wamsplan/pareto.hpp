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

#ifndef WAMSPLAN_PARETO_HPP_
#define WAMSPLAN_PARETO_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wamsplan/contingency.hpp"
#include "wamsplan/milp_model.hpp"
#include "wamsplan/objectives.hpp"
#include "wamsplan/solver.hpp"

namespace wamsplan {

enum class Objective { kCost = 0, kUnreliability = 1, kTraffic = 2 };

const char* ObjectiveName(Objective objective);
// Accepts "cost", "unreliability" and "traffic".
Objective ParseObjective(const std::string& name);

// Scalarization that produced a frontier point.
struct Provenance {
  std::string method;  // "anchor", "epsilon" or "weighted"
  Objective primary = Objective::kCost;
  // Epsilon bounds or weights, indexed by Objective; unused entries are zero.
  std::array<double, 3> parameters{};
};

struct FrontierPoint {
  PlacementPlan plan;
  ObjectiveVector objectives;
  Provenance provenance;
};

struct ParetoFrontier {
  // Sorted by (cost, unreliability, traffic).
  std::vector<FrontierPoint> points;
  // Set when some scalarized solve hit its caps.
  bool partial = false;
  std::size_t solves = 0;
  std::size_t cells = 0;
  std::size_t infeasible_cells = 0;
  std::size_t reused_cells = 0;
  std::vector<std::string> notes;
};

// Solves one scalarized problem; the warm start may be null or infeasible.
using ScalarSolver =
    std::function<SolveResult(const MilpProblem&, const LinearExpr&, const std::vector<double>*)>;

ScalarSolver EmbeddedSolver(SolveLimits limits = {});
ScalarSolver DelegatedSolver(std::string command_template);

struct PlanningContext {
  const PowerNetwork& network;
  const CaseParameters& params;
  const PlanningOptions& options;
  const ContingencySet& states;
  ScalarSolver solver;
};

struct LexResult {
  SolveStatus status = SolveStatus::kInfeasible;
  PlacementPlan plan;
  ObjectiveVector objectives;
  std::vector<double> assignment;
  std::size_t solves = 0;
};

// An absent objective bound.
inline constexpr double kNoBound = std::numeric_limits<double>::infinity();

// `first` followed by the other two in cost, unreliability, traffic order.
std::array<Objective, 3> LexOrder(Objective first);

// Minimizes the objectives in the given order, each stage bounding the
// previous optimum; only the first `stages` objectives of `order` are
// solved. The extra bounds (indexed by Objective, infinite when
// absent) are imposed throughout. Cost bounds are in cents.
LexResult Lexicographic(const PlanningContext& context, const MilpProblem& model,
                        const std::array<Objective, 3>& order,
                        const std::array<double, 3>& bounds,
                        const std::vector<double>* warm_start = nullptr,
                        std::size_t stages = 3);

// The model expression of an objective; cost is in cents.
const LinearExpr& ObjectiveExpr(const MilpProblem& model, Objective objective);
// The evaluator value of an objective in model units.
double ObjectiveValue(const ObjectiveVector& v, Objective objective);

// Minimizes the primary objective under a uniform grid of upper bounds on
// the other two, each grid running over `resolution` levels between the
// ideal and nadir values of the three lexicographic anchors. Level r of R is
// ideal + (nadir - ideal) * r / R, so resolution 1 solves only at the nadir.
ParetoFrontier EpsilonScan(const PlanningContext& context, int resolution,
                           Objective primary = Objective::kCost);

// Minimizes normalized weighted sums over all weights (i, j, k) / grid with
// i + j + k = grid. Each objective is divided by its single-objective
// optimum, or by its nadir when that optimum is zero.
ParetoFrontier WeightedSumScan(const PlanningContext& context, int grid);

// True when a is no worse than b in every objective and better in one.
bool Dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Keeps the non-dominated points in their original order; points with equal
// objective vectors keep only the first.
std::vector<FrontierPoint> NonDominatedFilter(std::vector<FrontierPoint> points);

void WriteFrontierCsv(const ParetoFrontier& frontier, const PowerNetwork& network,
                      std::ostream& out);
nlohmann::json FrontierToJson(const ParetoFrontier& frontier, const PowerNetwork& network,
                              const PlanningOptions& options);
// Two-objective projection; the last column flags points that stay
// non-dominated in the projection.
void WriteProjectionCsv(const ParetoFrontier& frontier, Objective x, Objective y,
                        std::ostream& out);

}  // namespace wamsplan

#endif  // WAMSPLAN_PARETO_HPP_
