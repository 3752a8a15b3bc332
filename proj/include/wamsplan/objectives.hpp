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

#ifndef WAMSPLAN_OBJECTIVES_HPP_
#define WAMSPLAN_OBJECTIVES_HPP_

#include "wamsplan/contingency.hpp"
#include "wamsplan/money.hpp"
#include "wamsplan/network.hpp"
#include "wamsplan/options.hpp"
#include "wamsplan/plan.hpp"

namespace wamsplan {

struct ObjectiveVector {
  Money cost;
  double unreliability = 0.0;
  // Bit-hops per second.
  double traffic = 0.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// Indicators are re-derived from the device matrices; pre-installed PMUs and
// waived substations contribute nothing.
Money ConstructionCost(const PlacementPlan& plan, const PowerNetwork& network,
                       const CaseParameters& params, const PlanningOptions& options);

// Throws PlanError when a device-hosting bus is not assigned to exactly one
// PDC, or a bus reports to a bus without a PDC.
double DataTraffic(const PlacementPlan& plan, const PowerNetwork& network,
                   const CaseParameters& params);

ObjectiveVector Evaluate(const PlacementPlan& plan, const PowerNetwork& network,
                         const CaseParameters& params, const PlanningOptions& options,
                         const ContingencySet& states);

}  // namespace wamsplan

#endif  // WAMSPLAN_OBJECTIVES_HPP_
