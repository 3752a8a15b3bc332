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

#ifndef WAMSPLAN_TESTS_TOY_CASES_HPP_
#define WAMSPLAN_TESTS_TOY_CASES_HPP_

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wamsplan/case_io.hpp"
#include "wamsplan/contingency.hpp"
#include "wamsplan/network.hpp"
#include "wamsplan/plan.hpp"

namespace wamsplan::testing {

struct ToyBranch {
  int from;
  int to;
  bool transformer = false;
};

inline Case MakeCase(std::string name, int num_buses, std::vector<ToyBranch> branches,
                     int controller = 1) {
  PowerNetwork::Description d;
  for (int b = 1; b <= num_buses; ++b) d.bus_ids.push_back(b);
  for (const ToyBranch& b : branches) {
    Branch br;
    br.from = b.from;
    br.to = b.to;
    br.transformer = b.transformer;
    d.branches.push_back(br);
  }
  d.controller_bus = controller;
  return Case{std::move(name), PowerNetwork(std::move(d)), CaseParameters{}, PlanningOptions{}};
}

inline ContingencySet States(const Case& c) {
  return EnumerateStates(c.network, ResolveContingency(c.network, c.options.contingency));
}

inline Case Triangle() { return MakeCase("triangle", 3, {{1, 2}, {1, 3}, {2, 3}}); }
inline Case Path(int n) {
  std::vector<ToyBranch> b;
  for (int i = 1; i < n; ++i) b.push_back({i, i + 1});
  return MakeCase("path" + std::to_string(n), n, b);
}

// Reads a plan shipped under cases/plans.
inline PlacementPlan ShippedPlan(const std::string& file, const PowerNetwork& network) {
  std::ifstream in(std::string(WAMSPLAN_SOURCE_DIR) + "/cases/plans/" + file);
  return PlanFromJson(nlohmann::json::parse(in), network);
}

}  // namespace wamsplan::testing

#endif  // WAMSPLAN_TESTS_TOY_CASES_HPP_
