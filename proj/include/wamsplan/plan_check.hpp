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

#ifndef WAMSPLAN_PLAN_CHECK_HPP_
#define WAMSPLAN_PLAN_CHECK_HPP_

#include <string>
#include <vector>

#include "wamsplan/contingency.hpp"
#include "wamsplan/network.hpp"
#include "wamsplan/options.hpp"
#include "wamsplan/plan.hpp"

namespace wamsplan {

// rule is one of the constraint role names shared with the MILP model, e.g.
// "channel-limit" or "device-assignment".
struct Violation {
  std::string rule;
  std::string detail;
};

// Checks every planning constraint directly on the plan matrices. The
// reliability cap is only checked when states are supplied.
std::vector<Violation> CheckPlan(const PlacementPlan& plan, const PowerNetwork& network,
                                 const CaseParameters& params, const PlanningOptions& options,
                                 const ContingencySet* states = nullptr);

}  // namespace wamsplan

#endif  // WAMSPLAN_PLAN_CHECK_HPP_
