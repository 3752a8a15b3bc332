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

#ifndef WAMSPLAN_ORACLE_HPP_
#define WAMSPLAN_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "wamsplan/contingency.hpp"
#include "wamsplan/network.hpp"
#include "wamsplan/objectives.hpp"
#include "wamsplan/options.hpp"
#include "wamsplan/plan.hpp"

// Exhaustive reference implementations for tiny networks. They are written
// independently of the model builder and the solver so that agreement between
// the two is evidence of correctness.
namespace wamsplan {

// Nonnegative weights over (cost in cents, unreliability, traffic).
struct ScalarWeights {
  double cost = 1.0;
  double unreliability = 0.0;
  double traffic = 0.0;

  double Value(const ObjectiveVector& v) const;
};

struct OracleResult {
  PlacementPlan plan;
  ObjectiveVector objectives;
  double value = 0.0;
  std::uint64_t candidates = 0;
};

inline constexpr std::size_t kOracleMaxBuses = 6;
inline constexpr std::uint64_t kOracleMaxCandidates = std::uint64_t{1} << 24;

// Number of plans brute_force_plan would visit. Throws ModelError when the
// network has more than kOracleMaxBuses buses.
std::uint64_t OracleSearchSpace(const PowerNetwork& network, const CaseParameters& params,
                                const PlanningOptions& options, const ScalarWeights& weights);

// Exact optimum by enumeration of every device placement, PDC set and
// assignment. Feasibility comes from CheckPlan and values from Evaluate.
// Returns nullopt when no plan is feasible. Throws ModelError when the search
// space exceeds kOracleMaxCandidates or a weight is negative.
std::optional<OracleResult> BruteForcePlan(const PowerNetwork& network,
                                           const CaseParameters& params,
                                           const PlanningOptions& options,
                                           const ContingencySet& states,
                                           const ScalarWeights& weights);

inline constexpr std::size_t kOracleMaxFailable = 20;

// Unreliability over all 2^|failable| outage combinations. `failable` holds
// branch indices. Throws ModelError above kOracleMaxFailable branches.
double BruteForceUnreliability(const PlacementPlan& plan, const PowerNetwork& network,
                               const std::vector<std::size_t>& failable);

}  // namespace wamsplan

#endif  // WAMSPLAN_ORACLE_HPP_
