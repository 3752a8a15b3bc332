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


#include "wamsplan/plan_check.hpp"

#include <set>
#include <string>

#include <gtest/gtest.h>

#include "toy_cases.hpp"

namespace wamsplan {
namespace {

std::set<std::string> Rules(const std::vector<Violation>& violations) {
  std::set<std::string> out;
  for (const Violation& v : violations) {
    EXPECT_FALSE(v.detail.empty());
    out.insert(v.rule);
  }
  return out;
}

class PlanCheck : public ::testing::Test {
 protected:
  PlanCheck()
      : c_(BuiltinCase("ieee9")),
        states_(testing::States(c_)),
        plan_(testing::ShippedPlan("ieee9_min_cost.json", c_.network)) {}

  std::size_t Ix(int bus) const { return c_.network.index_of(bus); }
  std::set<std::string> Check() const {
    return Rules(CheckPlan(plan_, c_.network, c_.parameters, c_.options, &states_));
  }

  Case c_;
  ContingencySet states_;
  PlacementPlan plan_;
};

using RuleSet = std::set<std::string>;

TEST_F(PlanCheck, ShippedPlansAreFeasible) {
  EXPECT_TRUE(Check().empty());
  for (const char* f : {"ieee9_min_cost_three_pdcs.json", "ieee9_zero_unreliability.json",
                        "ieee9_extra_pmus.json"}) {
    plan_ = testing::ShippedPlan(f, c_.network);
    EXPECT_TRUE(Check().empty()) << f;
  }
}

TEST_F(PlanCheck, Dimensions) {
  plan_ = PlacementPlan(3);
  EXPECT_EQ(Check(), RuleSet{"dimensions"});
}

TEST_F(PlanCheck, ChannelWithoutBranch) {
  plan_.pmu.set(Ix(1), Ix(2));
  EXPECT_TRUE(Check().contains("channel-on-branch"));
}

TEST_F(PlanCheck, DulrWithoutBranch) {
  plan_.dulr.set(Ix(5), Ix(9));
  EXPECT_TRUE(Check().contains("dulr-on-branch"));
}

TEST_F(PlanCheck, DulrOnOwnBus) {
  plan_.dulr.set(Ix(5), Ix(5));
  EXPECT_TRUE(Check().contains("dulr-on-branch"));
}

TEST_F(PlanCheck, TransformerMeasurement) {
  plan_.pmu.set(Ix(1), Ix(4));
  EXPECT_EQ(Check(), RuleSet{"transformer-measurement"});
  c_.options.transformer_measurements = true;
  EXPECT_TRUE(Check().empty());
}

TEST_F(PlanCheck, ChannelWithoutVoltage) {
  plan_.pmu.set(Ix(5), Ix(4));
  plan_.assign.set(Ix(5), Ix(9));
  EXPECT_EQ(Check(), RuleSet{"pmu-self-voltage"});
}

TEST_F(PlanCheck, ChannelLimit) {
  plan_.pmu.set(Ix(4), Ix(4));
  plan_.pmu.set(Ix(4), Ix(5));
  plan_.pmu.set(Ix(4), Ix(6));
  EXPECT_TRUE(Check().empty());
  c_.options.channel_limit = 1;
  EXPECT_EQ(Check(), RuleSet{"channel-limit"});
}

TEST_F(PlanCheck, ProhibitedBus) {
  c_.options.prohibited_buses = {7};
  EXPECT_EQ(Check(), RuleSet{"prohibited-bus"});
}

TEST_F(PlanCheck, DeviceAssignment) {
  plan_.assign.set(Ix(1), Ix(9), false);
  EXPECT_EQ(Check(), RuleSet{"device-assignment"});
  plan_.assign.set(Ix(1), Ix(9));
  plan_.assign.set(Ix(5), Ix(9));
  EXPECT_EQ(Check(), RuleSet{"device-assignment"});
}

TEST_F(PlanCheck, AssignmentToBusWithoutPdc) {
  plan_.assign.set(Ix(1), Ix(9), false);
  plan_.assign.set(Ix(1), Ix(1));
  EXPECT_EQ(Check(), RuleSet{"pdc-assignment"});
}

TEST_F(PlanCheck, ExistingPmu) {
  c_.options.existing_pmus = {{1, {}}};
  EXPECT_TRUE(Check().empty());
  c_.options.existing_pmus = {{2, {7}}};
  EXPECT_EQ(Check(), RuleSet{"existing-pmu"});
}

TEST_F(PlanCheck, Observability) {
  plan_.dulr.set(Ix(9), Ix(8), false);
  plan_.assign.set(Ix(9), Ix(9), false);
  EXPECT_EQ(Check(), RuleSet{"redundant-observability"});
}

TEST_F(PlanCheck, Redundancy) {
  c_.options.redundancy_degree = {{6, 1}};
  EXPECT_EQ(Check(), RuleSet{"redundant-observability"});
  plan_.dulr.set(Ix(6), Ix(4));
  plan_.assign.set(Ix(6), Ix(9));
  EXPECT_TRUE(Check().empty());
}

TEST_F(PlanCheck, TrafficCap) {
  c_.options.traffic_caps = {{1, 9, 1000.0}};
  EXPECT_EQ(Check(), RuleSet{"traffic-cap"});
  c_.options.traffic_caps = {{1, 2, 1000.0}};
  EXPECT_TRUE(Check().empty());
}

TEST_F(PlanCheck, BudgetCap) {
  c_.options.budget = Money::FromDollars(169648.99);
  EXPECT_TRUE(Check().empty());
  c_.options.budget = Money::FromDollars(169648.98);
  EXPECT_EQ(Check(), RuleSet{"budget-cap"});
}

TEST_F(PlanCheck, ReliabilityCapNeedsStates) {
  c_.options.max_unreliability = 0.01;
  EXPECT_EQ(Check(), RuleSet{"reliability-cap"});
  EXPECT_TRUE(CheckPlan(plan_, c_.network, c_.parameters, c_.options).empty());
  c_.options.max_unreliability = 2.852970150e-02;
  EXPECT_TRUE(Check().empty());
}

}  // namespace
}  // namespace wamsplan
