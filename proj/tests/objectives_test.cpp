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


#include "wamsplan/objectives.hpp"

#include <algorithm>
#include <limits>

#include <gtest/gtest.h>

#include "toy_cases.hpp"
#include "wamsplan/errors.hpp"

namespace wamsplan {
namespace {

using testing::MakeCase;
using testing::ShippedPlan;

class Ieee9Objectives : public ::testing::Test {
 protected:
  Ieee9Objectives() : c_(BuiltinCase("ieee9")), states_(testing::States(c_)) {}

  ObjectiveVector Eval(const PlacementPlan& plan) const {
    return Evaluate(plan, c_.network, c_.parameters, c_.options, states_);
  }
  PlacementPlan Plan(const char* file) const { return ShippedPlan(file, c_.network); }

  Case c_;
  ContingencySet states_;
};

TEST_F(Ieee9Objectives, MinCostPlan) {
  const ObjectiveVector v = Eval(Plan("ieee9_min_cost.json"));
  EXPECT_EQ(v.cost.ToString(), "169,648.99");
  EXPECT_NEAR(v.unreliability, 2.852970150e-02, 1e-11);
  EXPECT_NEAR(v.traffic, 636624.576, 1e-6);
}

TEST_F(Ieee9Objectives, CostMatchesHandCount) {
  // Three PMUs, three DULRs, one PDC and three interrupted substations.
  const CaseParameters& p = c_.parameters;
  const Money expected = 3 * p.cost_pmu + 3 * p.cost_dulr + p.cost_pdc + 3 * p.cost_interrupt;
  EXPECT_EQ(ConstructionCost(Plan("ieee9_min_cost.json"), c_.network, p, c_.options), expected);
}

TEST_F(Ieee9Objectives, ZeroUnreliabilityPlan) {
  const PlacementPlan plan = Plan("ieee9_zero_unreliability.json");
  const ObjectiveVector v = Eval(plan);
  EXPECT_EQ(v.cost.ToString(), "218,468.45");
  EXPECT_EQ(v.unreliability, 0.0);
  for (double u : Unreliability(plan, states_).per_bus) EXPECT_EQ(u, 0.0);
}

TEST_F(Ieee9Objectives, TrafficDependsOnlyOnHostingBusesAndAssignment) {
  const PlacementPlan a = Plan("ieee9_min_cost.json");
  const PlacementPlan b = Plan("ieee9_extra_pmus.json");
  ASSERT_NE(a.pmu, b.pmu);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.pmu.RowAny(i) || a.dulr.RowAny(i), b.pmu.RowAny(i) || b.dulr.RowAny(i));
  }
  ASSERT_EQ(a.assign, b.assign);
  EXPECT_EQ(Eval(a).traffic, Eval(b).traffic);
  EXPECT_LT(Eval(b).unreliability, Eval(a).unreliability);
}

TEST_F(Ieee9Objectives, ThreePdcsBeatAnySinglePdc) {
  const PlacementPlan three = Plan("ieee9_min_cost_three_pdcs.json");
  const double three_traffic = DataTraffic(three, c_.network, c_.parameters);
  double best_single = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < three.size(); ++p) {
    PlacementPlan single(three.size());
    single.pmu = three.pmu;
    single.dulr = three.dulr;
    single.pdc[p] = 1;
    for (std::size_t i = 0; i < three.size(); ++i) {
      if (three.pmu.RowAny(i) || three.dulr.RowAny(i)) single.assign.set(i, p);
    }
    best_single = std::min(best_single, DataTraffic(single, c_.network, c_.parameters));
  }
  EXPECT_LT(three_traffic, best_single);
  EXPECT_NEAR(three_traffic, 326785.536, 1e-6);
}

TEST(Objectives, TrafficByHand) {
  // Path 1-2-3 with the controller at bus 3; a PMU at bus 1 reports to a PDC
  // at bus 2. Bus 1 has one neighbour.
  Case c = MakeCase("p3", 3, {{1, 2}, {2, 3}}, 3);
  PlacementPlan plan(3);
  plan.pmu.set(0, 0);
  plan.pdc[1] = 1;
  plan.assign.set(0, 1);
  const CaseParameters& p = c.parameters;
  const double rate = p.message_rate_bps * 2.0;
  EXPECT_DOUBLE_EQ(DataTraffic(plan, c.network, p), rate * (1.0 + 1.0 * p.compression_ratio));
}

TEST(Objectives, ZeroHopTrafficAtController) {
  Case c = testing::Path(3);
  PlacementPlan plan(3);
  plan.pmu.set(0, 0);
  plan.pdc[0] = 1;
  plan.assign.set(0, 0);
  EXPECT_EQ(DataTraffic(plan, c.network, c.parameters), 0.0);
}

TEST(Objectives, TrafficRejectsBadAssignments) {
  Case c = testing::Path(2);
  PlacementPlan unassigned(2);
  unassigned.pmu.set(0, 0);
  unassigned.pdc[0] = 1;
  EXPECT_THROW(DataTraffic(unassigned, c.network, c.parameters), PlanError);

  PlacementPlan no_pdc = unassigned;
  no_pdc.assign.set(0, 1);
  EXPECT_THROW(DataTraffic(no_pdc, c.network, c.parameters), PlanError);

  PlacementPlan twice = unassigned;
  twice.pdc[1] = 1;
  twice.assign.set(0, 0);
  twice.assign.set(0, 1);
  EXPECT_THROW(DataTraffic(twice, c.network, c.parameters), PlanError);

  PlacementPlan idle(2);
  idle.pdc[0] = 1;
  idle.assign.set(1, 0);
  EXPECT_THROW(DataTraffic(idle, c.network, c.parameters), PlanError);
}

TEST(Objectives, ExistingPmuIsFreeAndWaivesInterruption) {
  Case c = testing::Path(2);
  c.options.existing_pmus = {{1, {2}}};
  PlacementPlan plan(2);
  plan.pmu.set(0, 0);
  plan.pmu.set(0, 1);
  plan.pdc[0] = 1;
  plan.assign.set(0, 0);
  EXPECT_EQ(ConstructionCost(plan, c.network, c.parameters, c.options), c.parameters.cost_pdc);

  c.options.waive_existing_interruption = false;
  EXPECT_EQ(ConstructionCost(plan, c.network, c.parameters, c.options),
            c.parameters.cost_pdc + c.parameters.cost_interrupt);
}

TEST(Objectives, PerDeviceCostOverrides) {
  Case c = testing::Path(2);
  c.parameters.pmu_cost_by_bus[1] = Money::FromCents(100);
  c.parameters.pdc_cost_by_bus[1] = Money::FromCents(10);
  c.parameters.dulr_cost_by_end[{2, 1}] = Money::FromCents(1);
  c.parameters.interrupt_cost_by_bus[2] = Money::FromCents(0);
  PlacementPlan plan(2);
  plan.pmu.set(0, 0);
  plan.dulr.set(1, 0);
  plan.pdc[0] = 1;
  plan.assign.set(0, 0);
  plan.assign.set(1, 0);
  EXPECT_EQ(ConstructionCost(plan, c.network, c.parameters, c.options),
            Money::FromCents(111) + c.parameters.cost_interrupt);
}

TEST(Objectives, EmptyPlanIsFullyUnobservable) {
  Case c = testing::Triangle();
  const ContingencySet states = testing::States(c);
  const ObjectiveVector v = Evaluate(PlacementPlan(3), c.network, c.parameters, c.options, states);
  EXPECT_EQ(v.cost, Money());
  EXPECT_EQ(v.traffic, 0.0);
  EXPECT_NEAR(v.unreliability, 3.0 * states.TotalProbability(), 1e-15);
}

}  // namespace
}  // namespace wamsplan
