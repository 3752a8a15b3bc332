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


// Prints one PASS/FAIL line per acceptance criterion. Criteria listed in
// kKnownFailures are expected to fail with the recorded value; the exit
// status is nonzero when any other criterion fails or a recorded value moves.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "oracle_fixtures.hpp"
#include "toy_cases.hpp"
#include "wamsplan/objectives.hpp"
#include "wamsplan/oracle.hpp"
#include "wamsplan/pareto.hpp"
#include "wamsplan/plan_check.hpp"
#include "wamsplan/solver.hpp"

namespace wamsplan {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

bool WithinRel(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Instance {
  Case c;
  ContingencySet states;
  MilpProblem model;

  explicit Instance(Case in)
      : c(std::move(in)),
        states(testing::States(c)),
        model(BuildModel(c.network, c.parameters, c.options, states)) {}

  PlanningContext Context(ScalarSolver solver) const {
    return {c.network, c.parameters, c.options, states, std::move(solver)};
  }
};

constexpr std::array<double, 3> kUnbounded{kNoBound, kNoBound, kNoBound};

// Minimum cost only; ties are not broken.
LexResult MinCost(const Instance& inst, ScalarSolver solver = EmbeddedSolver()) {
  return Lexicographic(inst.Context(std::move(solver)), inst.model, LexOrder(Objective::kCost),
                       kUnbounded, nullptr, 1);
}

Outcome CostAnchor() {
  const auto start = Clock::now();
  const Instance inst(BuiltinCase("ieee9"));
  const LexResult r = MinCost(inst);
  const double secs = Since(start);
  if (r.status != SolveStatus::kOptimal) return {false, StatusName(r.status)};
  const double cost = r.objectives.cost.dollars();
  return {WithinRel(cost, 169648.99, 0.005) && secs < 60.0,
          fmt::format("cost {} (target 169,648.99), {:.1f} s", r.objectives.cost.ToString(), secs)};
}

Outcome ReliabilityAnchor() {
  Case c = BuiltinCase("ieee9");
  c.options.max_unreliability = 0.0;
  const Instance inst(std::move(c));
  const LexResult r = MinCost(inst);
  if (r.status != SolveStatus::kOptimal) return {false, StatusName(r.status)};
  const double cost = r.objectives.cost.dollars();
  return {WithinRel(cost, 218468.45, 0.005),
          fmt::format("cost {} at U = {:.1e} (target 218,468.45)", r.objectives.cost.ToString(),
                      r.objectives.unreliability)};
}

Outcome ScenarioAnchors() {
  Case c = BuiltinCase("ieee9");
  c.options.prohibited_buses = {6};
  const LexResult prohibited = MinCost(Instance(c));
  c.options.existing_pmus = {{7, {5, 8}}};
  const LexResult existing = MinCost(Instance(c));
  if (prohibited.status != SolveStatus::kOptimal || existing.status != SolveStatus::kOptimal) {
    return {false, "solve did not finish"};
  }
  const bool ok = WithinRel(prohibited.objectives.cost.dollars(), 170000.0, 0.005) &&
                  WithinRel(existing.objectives.cost.dollars(), 125000.0, 0.005);
  return {ok, fmt::format("bus 6 prohibited {} (target 1.70E+05); plus PMU at 7 {} "
                          "(target 1.25E+05)",
                          prohibited.objectives.cost.ToString(),
                          existing.objectives.cost.ToString())};
}

ParetoFrontier DefaultFrontier() {
  const Instance inst(BuiltinCase("ieee9"));
  return EpsilonScan(inst.Context(EmbeddedSolver()), 32);
}

Outcome FrontierCardinality(const ParetoFrontier& f, std::size_t* count) {
  *count = f.points.size();
  return {f.points.size() == 7 && !f.partial,
          fmt::format("{} nondominated points at resolution 32 (target 7); the grid keeps every "
                      "distinct traffic level the solver proves optimal",
                      f.points.size())};
}

Outcome TrafficStructure() {
  const Case c = BuiltinCase("ieee9");
  const PlacementPlan one = testing::ShippedPlan("ieee9_min_cost.json", c.network);
  const PlacementPlan two = testing::ShippedPlan("ieee9_extra_pmus.json", c.network);
  const double d1 = DataTraffic(one, c.network, c.parameters);
  const double d2 = DataTraffic(two, c.network, c.parameters);

  // Optimal traffic for the min-cost device set with exactly k PDCs: every
  // device bus reports to its cheapest PDC, so enumerating PDC sets suffices.
  const std::size_t n = c.network.num_buses();
  const DistanceMatrix& q = c.network.hops();
  const std::size_t ctrl = c.network.controller();
  auto optimal = [&](int k) {
    double best = kNoBound;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
      if (std::popcount(mask) != k) continue;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!one.pmu.RowAny(i) && !one.dulr.RowAny(i)) continue;
        const double rate =
            c.parameters.message_rate_bps * static_cast<double>(c.network.neighbors(i).size() + 1);
        double leg = kNoBound;
        for (std::size_t j = 0; j < n; ++j) {
          if (mask >> j & 1U) {
            leg = std::min(leg, q(i, j) + q(j, ctrl) * c.parameters.compression_ratio);
          }
        }
        total += leg * rate;
      }
      best = std::min(best, total);
    }
    return best;
  };
  const double single = optimal(1);
  const double triple = optimal(3);
  return {d1 == d2 && triple < single,
          fmt::format("same hosting buses, extra PMUs: {:.3f} = {:.3f}; optimal with 1 PDC {:.3f} > 3 PDCs {:.3f}",
                      d1, d2, single, triple)};
}

Outcome OracleEquivalence() {
  const auto fixtures = testing::Fixtures();
  std::size_t matched = 0;
  std::string first_miss;
  for (const testing::Fixture& f : fixtures) {
    const Case c = f.make();
    const ContingencySet states = testing::States(c);
    const auto oracle = BruteForcePlan(c.network, c.parameters, c.options, states, f.weights);
    const MilpProblem model = BuildModel(c.network, c.parameters, c.options, states);
    const SolveResult r = Solve(model, testing::Combined(model, f.weights));
    bool ok = oracle.has_value() && r.status == SolveStatus::kOptimal && c.network.num_buses() <= 5;
    if (ok) {
      const PlacementPlan plan = ExtractPlan(model, r.assignment, c.network, c.options);
      const ObjectiveVector v = Evaluate(plan, c.network, c.parameters, c.options, states);
      ok = std::abs(f.weights.Value(v) - oracle->value) <= 1e-9 * std::max(1.0, oracle->value);
    }
    if (ok) ++matched;
    else if (first_miss.empty()) first_miss = f.name;
  }

  std::size_t exact = 0;
  const Case ieee9 = BuiltinCase("ieee9");
  ContingencySpec spec;
  spec.max_order = 1000;
  const ContingencySet full =
      EnumerateStates(ieee9.network, ResolveContingency(ieee9.network, spec));
  std::mt19937 rng(1);
  std::bernoulli_distribution coin(0.3);
  const int plans = 25;
  for (int t = 0; t < plans; ++t) {
    PlacementPlan plan(ieee9.network.num_buses());
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (coin(rng)) plan.pmu.set(i, i);
      for (std::size_t j : ieee9.network.neighbors(i)) {
        if (coin(rng)) plan.dulr.set(i, j);
      }
    }
    if (Unreliability(plan, full).total ==
        BruteForceUnreliability(plan, ieee9.network, full.config().failable_branches)) {
      ++exact;
    }
  }
  const bool ok = matched == fixtures.size() && fixtures.size() >= 10 && exact == plans;
  return {ok, fmt::format("{}/{} fixtures match the exhaustive optimum{}; {}/{} full-order "
                          "unreliability values bitwise equal",
                          matched, fixtures.size(), first_miss.empty() ? "" : " (first miss " + first_miss + ")",
                          exact, plans)};
}

Outcome Invariants(const ParetoFrontier& frontier) {
  std::vector<std::string> failed;
  const Case c = BuiltinCase("ieee9");
  ContingencySpec spec;
  spec.max_order = 1000;
  const ContingencySet full = EnumerateStates(c.network, ResolveContingency(c.network, spec));
  if (std::abs(full.TotalProbability() - 1.0) > 1e-12) failed.push_back("normalization");

  std::mt19937 rng(2);
  std::bernoulli_distribution coin(0.25);
  bool monotone = true;
  for (int t = 0; t < 50 && monotone; ++t) {
    PlacementPlan plan(c.network.num_buses());
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (coin(rng)) plan.dulr.set(i, c.network.neighbors(i).front());
    }
    PlacementPlan more = plan;
    const std::size_t b = rng() % plan.size();
    more.pmu.set(b, b);
    more.pmu.set(b, c.network.neighbors(b).back());
    for (std::size_t s = 0; s < full.size() && monotone; ++s) {
      const auto before = Observability(plan, full, s);
      const auto after = Observability(more, full, s);
      for (std::size_t i = 0; i < before.size(); ++i) monotone = monotone && after[i] >= before[i];
    }
  }
  if (!monotone) failed.push_back("observability monotonicity");

  for (const FrontierPoint& a : frontier.points) {
    for (const FrontierPoint& b : frontier.points) {
      if (Dominates(a.objectives, b.objectives)) {
        failed.push_back("dominance-free frontier");
        break;
      }
    }
  }

  const Instance inst(BuiltinCase("ieee9"));
  double worst = 0.0;
  for (const LinearExpr* obj : {&inst.model.cost, &inst.model.unreliability, &inst.model.traffic}) {
    const SolveResult r = Solve(inst.model, *obj);
    const PlacementPlan plan = ExtractPlan(inst.model, r.assignment, inst.c.network, inst.c.options);
    const ObjectiveVector v =
        Evaluate(plan, inst.c.network, inst.c.parameters, inst.c.options, inst.states);
    const double evaluated = obj == &inst.model.cost            ? static_cast<double>(v.cost.cents())
                             : obj == &inst.model.unreliability ? v.unreliability
                                                                : v.traffic;
    worst = std::max(worst, std::abs(r.objective - evaluated) / std::max(1.0, std::abs(evaluated)));
  }
  if (worst > 1e-6) failed.push_back("solver-evaluator agreement");

  auto csv = [&] {
    std::ostringstream out;
    WriteFrontierCsv(EpsilonScan(inst.Context(EmbeddedSolver()), 4), inst.c.network, out);
    return out.str();
  };
  if (csv() != csv()) failed.push_back("deterministic reruns");

  std::string detail = failed.empty() ? "all five suites hold" : "broken:";
  for (const std::string& f : failed) detail += " " + f;
  return {failed.empty(), fmt::format("{}; worst solver-evaluator gap {:.1e}", detail, worst)};
}

bool HighsAvailable() {
  return std::system("python3 -c 'import highspy' > /dev/null 2>&1") == 0;
}

Outcome ScaleCheck() {
  const auto start = Clock::now();
  const Instance inst(BuiltinCase("ieee57"));
  std::string how;
  LexResult r;
  if (HighsAvailable()) {
    how = "HiGHS via delegation";
    r = MinCost(inst, DelegatedSolver("python3 " + std::string(WAMSPLAN_SOURCE_DIR) +
                                      "/tools/highs_solve.py {lp} {sol}"));
  } else {
    how = "embedded solver";
    r = MinCost(inst, EmbeddedSolver({.max_nodes = 100'000'000, .max_seconds = 600.0}));
  }
  const double secs = Since(start);
  if (r.status != SolveStatus::kOptimal) {
    return {false, fmt::format("{}: {} after {:.0f} s", how, StatusName(r.status), secs)};
  }
  const auto violations =
      CheckPlan(r.plan, inst.c.network, inst.c.parameters, inst.c.options, &inst.states);
  int channels = 0;
  for (std::size_t i = 0; i < r.plan.size(); ++i) {
    if (r.plan.pmu(i, i)) channels = std::max(channels, r.plan.pmu.RowCount(i) - 1);
  }
  return {violations.empty() && channels <= 2,
          fmt::format("{}: cost {}, {} violations, at most {} channels per PMU, {:.0f} s", how,
                      r.objectives.cost.ToString(), violations.size(), channels, secs)};
}

int Run() {
  // Criterion, recorded value check; empty check means the criterion must pass.
  struct Known {
    int id;
    std::function<bool()> unchanged;
    const char* why;
  };
  int status = 0;
  auto report = [&](int id, const char* name, const Outcome& o, const Known* known) {
    const char* tag = o.pass ? "PASS" : (known ? (id == 4 ? "FAIL (soft)" : "FAIL (known)") : "FAIL");
    fmt::print("criterion {} {:<22} {}: {}\n", id, name, tag, o.detail);
    if (known && !o.pass) fmt::print("    {}\n", known->why);
    if (!o.pass && !known) status = 1;
    if (known && !known->unchanged()) {
      fmt::print("    recorded value changed; update the decisions ledger\n");
      status = 1;
    }
  };

  const Outcome c2 = ReliabilityAnchor();
  const Known known2{2, [&] { return c2.detail.starts_with("cost 180,666.76"); },
                     "the evaluator finds a cheaper zero-unreliability plan; the 218,468.45 plan "
                     "is feasible but not minimal"};
  std::size_t points = 0;
  const ParetoFrontier frontier = DefaultFrontier();
  const Outcome c4 = FrontierCardinality(frontier, &points);
  const Known known4{4, [&] { return points == 25; },
                     "4 unreliability levels times 6 traffic levels plus the traffic anchor; the "
                     "reference grid is unstated"};

  report(1, "cost anchor", CostAnchor(), nullptr);
  report(2, "reliability anchor", c2, &known2);
  report(3, "scenario anchors", ScenarioAnchors(), nullptr);
  report(4, "frontier cardinality", c4, &known4);
  report(5, "traffic structure", TrafficStructure(), nullptr);
  report(6, "oracle equivalence", OracleEquivalence(), nullptr);
  report(7, "invariants", Invariants(frontier), nullptr);
  report(8, "scale check", ScaleCheck(), nullptr);
  return status;
}

}  // namespace
}  // namespace wamsplan

int main() {
  try {
    return wamsplan::Run();
  } catch (const std::exception& e) {
    fmt::print(stderr, "acceptance: {}\n", e.what());
    return 1;
  }
}
