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


#ifndef WAMSPLAN_TESTS_ORACLE_FIXTURES_HPP_
#define WAMSPLAN_TESTS_ORACLE_FIXTURES_HPP_

#include <functional>
#include <string>
#include <vector>

#include "toy_cases.hpp"
#include "wamsplan/milp_model.hpp"
#include "wamsplan/oracle.hpp"

// Tiny cases with the scalarization each one is solved under.
namespace wamsplan::testing {

struct Fixture {
  std::string name;
  std::function<Case()> make;
  ScalarWeights weights;
};

inline ScalarWeights CostOnly() { return {1.0, 0.0, 0.0}; }

inline std::vector<Fixture> Fixtures() {
  return {
      {"single_bus", [] { return MakeCase("single", 1, {}); }, CostOnly()},
      {"two_bus_line", [] { return Path(2); }, CostOnly()},
      {"three_bus_path", [] { return Path(3); }, CostOnly()},
      {"triangle", [] { return Triangle(); }, CostOnly()},
      {"triangle_prohibited",
       [] {
         Case c = Triangle();
         c.options.prohibited_buses = {1};
         return c;
       },
       CostOnly()},
      {"triangle_redundant",
       [] {
         Case c = Triangle();
         c.options.redundancy_degree = {{2, 1}};
         return c;
       },
       CostOnly()},
      {"path_existing_pmu",
       [] {
         Case c = Path(3);
         c.options.existing_pmus = {{3, {2}}};
         return c;
       },
       CostOnly()},
      {"path_with_transformer",
       [] { return MakeCase("xf", 3, {{1, 2, true}, {2, 3}}, 3); }, CostOnly()},
      {"star_channel_limit",
       [] {
         Case c = MakeCase("star", 4, {{1, 2}, {1, 3}, {1, 4}});
         c.options.channel_limit = 1;
         return c;
       },
       CostOnly()},
      {"star_unreliability",
       [] { return MakeCase("star", 4, {{1, 2}, {1, 3}, {1, 4}}); }, {1.0, 1e8, 0.0}},
      {"two_bus_traffic", [] { return Path(2); }, {1.0, 0.0, 1.0}},
      {"path_traffic_far_controller", [] { return MakeCase("p3", 3, {{1, 2}, {2, 3}}, 3); },
       {1.0, 1e7, 0.5}},
      {"triangle_cheap_dulr",
       [] {
         Case c = Triangle();
         c.parameters.cost_dulr = Money::FromCents(100000);
         c.parameters.cost_interrupt = Money::FromCents(0);
         return c;
       },
       CostOnly()},
      {"triangle_budget_unreliability",
       [] {
         Case c = Triangle();
         c.options.budget = Money::FromCents(6000000);
         return c;
       },
       {0.0, 1.0, 0.0}},
  };
}

inline LinearExpr Combined(const MilpProblem& model, const ScalarWeights& w) {
  LinearExpr e;
  auto add = [&](const LinearExpr& part, double scale) {
    if (scale == 0.0) return;
    e.constant += scale * part.constant;
    for (const LinearTerm& t : part.terms) e.terms.push_back({t.var, scale * t.coef});
  };
  add(model.cost, w.cost);
  add(model.unreliability, w.unreliability);
  add(model.traffic, w.traffic);
  return e;
}

}  // namespace wamsplan::testing

#endif  // WAMSPLAN_TESTS_ORACLE_FIXTURES_HPP_
