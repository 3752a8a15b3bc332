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


#include "wamsplan/pareto.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <tuple>

#include <gtest/gtest.h>

#include "toy_cases.hpp"
#include "wamsplan/errors.hpp"
#include "wamsplan/oracle.hpp"
#include "wamsplan/plan_check.hpp"

namespace wamsplan {
namespace {

ObjectiveVector Vec(double dollars, double u, double d) {
  return {Money::FromDollars(dollars), u, d};
}

FrontierPoint Point(double dollars, double u, double d) {
  FrontierPoint p;
  p.objectives = Vec(dollars, u, d);
  return p;
}

TEST(Dominance, Basics) {
  EXPECT_TRUE(Dominates(Vec(1, 1, 1), Vec(2, 1, 1)));
  EXPECT_TRUE(Dominates(Vec(1, 0, 1), Vec(1, 1, 1)));
  EXPECT_FALSE(Dominates(Vec(1, 1, 1), Vec(1, 1, 1)));
  EXPECT_FALSE(Dominates(Vec(1, 2, 1), Vec(2, 1, 1)));
}

TEST(Dominance, FilterKeepsOrderAndFirstDuplicate) {
  std::vector<FrontierPoint> pts{Point(3, 1, 1), Point(1, 3, 1), Point(3, 2, 2), Point(1, 3, 1),
                                 Point(2, 2, 1)};
  pts[3].provenance.method = "second";
  const auto kept = NonDominatedFilter(pts);
  ASSERT_EQ(kept.size(), 3U);
  EXPECT_EQ(kept[0].objectives, Vec(3, 1, 1));
  EXPECT_EQ(kept[1].objectives, Vec(1, 3, 1));
  EXPECT_TRUE(kept[1].provenance.method.empty());
  EXPECT_EQ(kept[2].objectives, Vec(2, 2, 1));
}

TEST(Objectives, ParseAndName) {
  for (Objective o : {Objective::kCost, Objective::kUnreliability, Objective::kTraffic}) {
    EXPECT_EQ(ParseObjective(ObjectiveName(o)), o);
  }
  EXPECT_THROW(ParseObjective("latency"), ModelError);
  EXPECT_EQ(LexOrder(Objective::kTraffic),
            (std::array<Objective, 3>{Objective::kTraffic, Objective::kCost,
                                      Objective::kUnreliability}));
}

class Ieee9Pareto : public ::testing::Test {
 protected:
  Ieee9Pareto() : c_(BuiltinCase("ieee9")), states_(testing::States(c_)) {}

  PlanningContext Context() const {
    return {c_.network, c_.parameters, c_.options, states_, EmbeddedSolver()};
  }
  MilpProblem Model() const { return BuildModel(c_.network, c_.parameters, c_.options, states_); }

  void ExpectSound(const ParetoFrontier& f) const {
    ASSERT_FALSE(f.points.empty());
    EXPECT_FALSE(f.partial);
    for (std::size_t a = 0; a < f.points.size(); ++a) {
      const FrontierPoint& p = f.points[a];
      EXPECT_TRUE(CheckPlan(p.plan, c_.network, c_.parameters, c_.options, &states_).empty());
      EXPECT_EQ(Evaluate(p.plan, c_.network, c_.parameters, c_.options, states_), p.objectives);
      for (std::size_t b = 0; b < f.points.size(); ++b) {
        EXPECT_FALSE(Dominates(f.points[b].objectives, p.objectives)) << b << " over " << a;
      }
      if (a > 0) {
        const ObjectiveVector& prev = f.points[a - 1].objectives;
        EXPECT_TRUE(std::tie(prev.cost, prev.unreliability, prev.traffic) <
                    std::tie(p.objectives.cost, p.objectives.unreliability, p.objectives.traffic));
      }
    }
  }

  Case c_;
  ContingencySet states_;
};

TEST_F(Ieee9Pareto, LexicographicAnchors) {
  const MilpProblem model = Model();
  const PlanningContext ctx = Context();
  const std::array<double, 3> none{kNoBound, kNoBound, kNoBound};
  const LexResult cost = Lexicographic(ctx, model, LexOrder(Objective::kCost), none);
  ASSERT_EQ(cost.status, SolveStatus::kOptimal);
  EXPECT_EQ(cost.objectives.cost.ToString(), "169,648.99");
  const LexResult rel = Lexicographic(ctx, model, LexOrder(Objective::kUnreliability), none);
  ASSERT_EQ(rel.status, SolveStatus::kOptimal);
  EXPECT_EQ(rel.objectives.unreliability, 0.0);
  EXPECT_LT(cost.objectives.cost, rel.objectives.cost);

  // A cost bound below the optimum is infeasible.
  std::array<double, 3> tight = none;
  tight[0] = 16964898.0;
  EXPECT_EQ(Lexicographic(ctx, model, LexOrder(Objective::kUnreliability), tight, nullptr, 1)
                .status,
            SolveStatus::kInfeasible);
}

TEST_F(Ieee9Pareto, EpsilonScanIsSoundAndDeterministic) {
  const ParetoFrontier a = EpsilonScan(Context(), 4);
  ExpectSound(a);
  EXPECT_EQ(a.cells, 16U);
  EXPECT_EQ(a.points.front().objectives.cost.ToString(), "169,648.99");
  const ParetoFrontier b = EpsilonScan(Context(), 4);
  std::ostringstream ca, cb;
  WriteFrontierCsv(a, c_.network, ca);
  WriteFrontierCsv(b, c_.network, cb);
  EXPECT_EQ(ca.str(), cb.str());
  EXPECT_EQ(ca.str().substr(0, ca.str().find('\n')),
            "id,cost,unreliability,traffic,method,primary,param_cost,param_unreliability,"
            "param_traffic,pmus,dulrs,pdcs");
}

TEST_F(Ieee9Pareto, WeightedPointsAreNeverDominatedByEpsilonPoints) {
  const ParetoFrontier eps = EpsilonScan(Context(), 4);
  const ParetoFrontier ws = WeightedSumScan(Context(), 3);
  ExpectSound(ws);
  for (const FrontierPoint& w : ws.points) {
    for (const FrontierPoint& e : eps.points) {
      EXPECT_FALSE(Dominates(e.objectives, w.objectives));
      EXPECT_FALSE(Dominates(w.objectives, e.objectives));
    }
  }
}

TEST_F(Ieee9Pareto, ProhibitionNeverLowersTheIdeal) {
  const ParetoFrontier base = EpsilonScan(Context(), 1);
  c_.options.prohibited_buses = {6};
  const ParetoFrontier prohibited = EpsilonScan(Context(), 1);
  ExpectSound(prohibited);
  auto ideal = [](const ParetoFrontier& f, Objective o) {
    double best = kNoBound;
    for (const FrontierPoint& p : f.points) best = std::min(best, ObjectiveValue(p.objectives, o));
    return best;
  };
  for (Objective o : {Objective::kCost, Objective::kUnreliability, Objective::kTraffic}) {
    EXPECT_GE(ideal(prohibited, o), ideal(base, o)) << ObjectiveName(o);
  }
  for (const FrontierPoint& p : prohibited.points) {
    EXPECT_FALSE(p.plan.pmu.RowAny(c_.network.index_of(6)));
    EXPECT_FALSE(p.plan.dulr.RowAny(c_.network.index_of(6)));
  }
}

TEST_F(Ieee9Pareto, ProjectionFlagsNondominatedPoints) {
  ParetoFrontier f;
  f.points = {Point(1, 3, 0), Point(2, 1, 0), Point(3, 2, 0)};
  std::ostringstream out;
  WriteProjectionCsv(f, Objective::kCost, Objective::kUnreliability, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "id,cost,unreliability,nondominated");
  std::vector<std::string> flags;
  while (std::getline(in, line)) flags.push_back(line.substr(line.rfind(',') + 1));
  EXPECT_EQ(flags, (std::vector<std::string>{"1", "1", "0"}));
}

TEST_F(Ieee9Pareto, JsonCarriesEveryPoint) {
  const ParetoFrontier f = EpsilonScan(Context(), 2);
  const nlohmann::json doc = FrontierToJson(f, c_.network, c_.options);
  ASSERT_TRUE(doc.contains("points"));
  EXPECT_EQ(doc["points"].size(), f.points.size());
}

TEST(Pareto, TinyAnchorsMatchTheOracle) {
  const Case c = testing::Triangle();
  const ContingencySet states = testing::States(c);
  const MilpProblem model = BuildModel(c.network, c.parameters, c.options, states);
  const PlanningContext ctx{c.network, c.parameters, c.options, states, EmbeddedSolver()};
  const std::array<double, 3> none{kNoBound, kNoBound, kNoBound};
  const LexResult lex = Lexicographic(ctx, model, LexOrder(Objective::kCost), none, nullptr, 1);
  const auto oracle = BruteForcePlan(c.network, c.parameters, c.options, states, {});
  ASSERT_TRUE(oracle);
  EXPECT_EQ(lex.objectives.cost, oracle->objectives.cost);
}

}  // namespace
}  // namespace wamsplan
