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
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<Objective, 3> kAll{Objective::kCost, Objective::kUnreliability,
                                        Objective::kTraffic};

std::size_t Slot(Objective o) { return static_cast<std::size_t>(o); }

// Room added to an attained optimum when it becomes a bound for later stages.
double Slack(Objective o, double value) {
  if (o == Objective::kCost) return 0.5;
  return 1e-9 * std::max(1.0, std::abs(value)) + 1e-12;
}

bool Within(double value, double bound, Objective o) {
  return value <= bound + Slack(o, bound);
}

bool Close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

bool SameVector(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.cost == b.cost && Close(a.unreliability, b.unreliability) && Close(a.traffic, b.traffic);
}

bool LexLess(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.unreliability != b.unreliability) return a.unreliability < b.unreliability;
  return a.traffic < b.traffic;
}

void Finish(ParetoFrontier& frontier, std::vector<FrontierPoint> points) {
  std::stable_sort(points.begin(), points.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    return LexLess(a.objectives, b.objectives);
  });
  frontier.points = NonDominatedFilter(std::move(points));
}

}  // namespace

const char* ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kCost:
      return "cost";
    case Objective::kUnreliability:
      return "unreliability";
    case Objective::kTraffic:
      return "traffic";
  }
  return "?";
}

Objective ParseObjective(const std::string& name) {
  for (Objective o : kAll) {
    if (name == ObjectiveName(o)) return o;
  }
  throw ModelError(fmt::format("unknown objective \"{}\" (expected cost, unreliability or traffic)", name));
}

const LinearExpr& ObjectiveExpr(const MilpProblem& model, Objective objective) {
  switch (objective) {
    case Objective::kCost:
      return model.cost;
    case Objective::kUnreliability:
      return model.unreliability;
    case Objective::kTraffic:
      return model.traffic;
  }
  return model.cost;
}

double ObjectiveValue(const ObjectiveVector& v, Objective objective) {
  switch (objective) {
    case Objective::kCost:
      return static_cast<double>(v.cost.cents());
    case Objective::kUnreliability:
      return v.unreliability;
    case Objective::kTraffic:
      return v.traffic;
  }
  return 0.0;
}

ScalarSolver EmbeddedSolver(SolveLimits limits) {
  return [limits](const MilpProblem& problem, const LinearExpr& objective,
                  const std::vector<double>* warm) { return Solve(problem, objective, limits, warm); };
}

ScalarSolver DelegatedSolver(std::string command_template) {
  return [command = std::move(command_template)](const MilpProblem& problem,
                                                  const LinearExpr& objective,
                                                  const std::vector<double>*) {
    return Delegate(problem, objective, command);
  };
}

std::array<Objective, 3> LexOrder(Objective first) {
  std::array<Objective, 3> order{first, first, first};
  std::size_t k = 1;
  for (Objective o : kAll) {
    if (o != first) order[k++] = o;
  }
  return order;
}

LexResult Lexicographic(const PlanningContext& context, const MilpProblem& model,
                        const std::array<Objective, 3>& order, const std::array<double, 3>& bounds,
                        const std::vector<double>* warm_start, std::size_t stages) {
  MilpProblem problem = model;
  for (Objective o : kAll) {
    const double bound = bounds[Slot(o)];
    if (std::isfinite(bound)) {
      problem.AddObjectiveBound(std::string("epsilon-") + ObjectiveName(o),
                                std::string("epsilon_") + ObjectiveName(o), ObjectiveExpr(problem, o),
                                bound + Slack(o, bound));
    }
  }
  LexResult out;
  out.status = SolveStatus::kOptimal;
  std::vector<double> incumbent;
  const std::vector<double>* warm = warm_start;
  const std::size_t last = std::min(stages, order.size());
  for (std::size_t stage = 0; stage < last; ++stage) {
    const Objective o = order[stage];
    const LinearExpr& expr = ObjectiveExpr(problem, o);
    SolveResult r = context.solver(problem, expr, warm);
    ++out.solves;
    if (!r.has_assignment()) {
      if (stage == 0 || r.status == SolveStatus::kCapExceeded) {
        out.status = r.status;
        if (stage == 0) return out;
        break;
      }
      throw SolverError("lexicographic stage lost the previous stage's solution");
    }
    incumbent = std::move(r.assignment);
    warm = &incumbent;
    // A capped stage has no proven value to pass on as a bound.
    if (r.status == SolveStatus::kCapExceeded) {
      out.status = SolveStatus::kCapExceeded;
      break;
    }
    if (stage + 1 < last) {
      problem.AddObjectiveBound(std::string("lexicographic-") + ObjectiveName(o),
                                std::string("lexicographic_") + ObjectiveName(o), expr,
                                r.objective + Slack(o, r.objective));
    }
  }
  out.plan = ExtractPlan(problem, incumbent, context.network, context.options);
  out.objectives = Evaluate(out.plan, context.network, context.params, context.options, context.states);
  out.assignment = std::move(incumbent);
  return out;
}

namespace {

struct Anchors {
  bool ok = true;
  std::vector<FrontierPoint> points;
  std::array<double, 3> ideal{};
  std::array<double, 3> nadir{};
  std::vector<double> primary_assignment;
};

Anchors SolveAnchors(const PlanningContext& context, const MilpProblem& model,
                     ParetoFrontier& frontier, Objective primary) {
  Anchors a;
  a.ideal.fill(kInf);
  a.nadir.fill(-kInf);
  for (Objective o : kAll) {
    const LexResult r = Lexicographic(context, model, LexOrder(o), {kInf, kInf, kInf});
    frontier.solves += r.solves;
    if (r.status == SolveStatus::kCapExceeded) frontier.partial = true;
    if (r.assignment.empty()) {
      a.ok = false;
      frontier.notes.push_back(fmt::format("{} anchor: {}", ObjectiveName(o), StatusName(r.status)));
      return a;
    }
    Provenance prov{"anchor", o, {}};
    a.points.push_back(FrontierPoint{r.plan, r.objectives, prov});
    if (o == primary) a.primary_assignment = r.assignment;
    for (Objective k : kAll) {
      const double v = ObjectiveValue(r.objectives, k);
      a.ideal[Slot(k)] = std::min(a.ideal[Slot(k)], v);
      a.nadir[Slot(k)] = std::max(a.nadir[Slot(k)], v);
    }
  }
  return a;
}

}  // namespace

ParetoFrontier EpsilonScan(const PlanningContext& context, int resolution, Objective primary) {
  if (resolution < 1) throw ModelError("epsilon resolution must be at least 1");
  ParetoFrontier frontier;
  const MilpProblem model = BuildModel(context.network, context.params, context.options, context.states);
  if (model.infeasible_reason) {
    frontier.notes.push_back("model infeasible: " + *model.infeasible_reason);
    return frontier;
  }
  Anchors anchors = SolveAnchors(context, model, frontier, primary);
  if (!anchors.ok) return frontier;

  const std::array<Objective, 3> order = LexOrder(primary);
  const Objective oa = order[1];
  const Objective ob = order[2];
  auto levels = [&](Objective o) {
    std::vector<double> out;
    const double lo = anchors.ideal[Slot(o)];
    const double hi = anchors.nadir[Slot(o)];
    if (!(hi > lo)) return std::vector<double>{hi};
    for (int r = 1; r <= resolution; ++r) {
      out.push_back(lo + (hi - lo) * static_cast<double>(r) / static_cast<double>(resolution));
    }
    out.back() = hi;
    return out;
  };
  const std::vector<double> la = levels(oa);
  const std::vector<double> lb = levels(ob);

  struct Solved {
    double ea;
    double eb;
    ObjectiveVector objectives;
    std::size_t point;
  };
  std::vector<Solved> solved;
  std::vector<std::pair<double, double>> infeasible;
  std::vector<FrontierPoint> points = anchors.points;
  // The primary anchor is the loosest cell's answer.
  for (std::size_t k = 0; k < anchors.points.size(); ++k) {
    if (anchors.points[k].provenance.primary == primary) {
      solved.push_back({kInf, kInf, anchors.points[k].objectives, k});
    }
  }
  std::vector<double> warm = anchors.primary_assignment;

  for (std::size_t ia = la.size(); ia-- > 0;) {
    for (std::size_t ib = lb.size(); ib-- > 0;) {
      const double ea = la[ia];
      const double eb = lb[ib];
      ++frontier.cells;
      const bool known_infeasible = std::any_of(infeasible.begin(), infeasible.end(), [&](const auto& c) {
        return c.first >= ea && c.second >= eb;
      });
      if (known_infeasible) {
        ++frontier.infeasible_cells;
        continue;
      }
      const bool reused = std::any_of(solved.begin(), solved.end(), [&](const Solved& s) {
        return s.ea >= ea && s.eb >= eb && Within(ObjectiveValue(s.objectives, oa), ea, oa) &&
               Within(ObjectiveValue(s.objectives, ob), eb, ob);
      });
      if (reused) {
        ++frontier.reused_cells;
        continue;
      }
      std::array<double, 3> bounds{kInf, kInf, kInf};
      bounds[Slot(oa)] = ea;
      bounds[Slot(ob)] = eb;
      const LexResult r = Lexicographic(context, model, order, bounds, warm.empty() ? nullptr : &warm);
      frontier.solves += r.solves;
      if (r.status == SolveStatus::kCapExceeded) frontier.partial = true;
      if (r.assignment.empty()) {
        if (r.status == SolveStatus::kInfeasible) {
          ++frontier.infeasible_cells;
          infeasible.emplace_back(ea, eb);
        }
        continue;
      }
      Provenance prov{"epsilon", primary, {}};
      prov.parameters[Slot(oa)] = ea;
      prov.parameters[Slot(ob)] = eb;
      points.push_back(FrontierPoint{r.plan, r.objectives, prov});
      solved.push_back({ea, eb, r.objectives, points.size() - 1});
      warm = r.assignment;
    }
  }
  if (frontier.partial) frontier.notes.push_back("some scalarized solves hit their caps");
  Finish(frontier, std::move(points));
  return frontier;
}

ParetoFrontier WeightedSumScan(const PlanningContext& context, int grid) {
  if (grid < 1) throw ModelError("weight grid must be at least 1");
  ParetoFrontier frontier;
  const MilpProblem model = BuildModel(context.network, context.params, context.options, context.states);
  if (model.infeasible_reason) {
    frontier.notes.push_back("model infeasible: " + *model.infeasible_reason);
    return frontier;
  }
  Anchors anchors = SolveAnchors(context, model, frontier, Objective::kCost);
  if (!anchors.ok) return frontier;
  std::array<double, 3> norm{};
  for (Objective o : kAll) {
    const double ideal = anchors.ideal[Slot(o)];
    const double nadir = anchors.nadir[Slot(o)];
    norm[Slot(o)] = ideal > 0.0 ? ideal : (nadir > 0.0 ? nadir : 1.0);
  }

  std::vector<FrontierPoint> points;
  for (int i = grid; i >= 0; --i) {
    for (int j = grid - i; j >= 0; --j) {
      const int k = grid - i - j;
      const std::array<double, 3> w{static_cast<double>(i) / grid, static_cast<double>(j) / grid,
                                    static_cast<double>(k) / grid};
      ++frontier.cells;
      LinearExpr combined;
      for (Objective o : kAll) {
        const double scale = w[Slot(o)] / norm[Slot(o)];
        if (scale == 0.0) continue;
        const LinearExpr& e = ObjectiveExpr(model, o);
        combined.constant += scale * e.constant;
        for (const LinearTerm& t : e.terms) combined.terms.push_back({t.var, scale * t.coef});
      }
      MilpProblem problem = model;
      SolveResult r = context.solver(problem, combined, nullptr);
      ++frontier.solves;
      if (r.status == SolveStatus::kCapExceeded) frontier.partial = true;
      if (!r.has_assignment()) {
        if (r.status == SolveStatus::kInfeasible) ++frontier.infeasible_cells;
        continue;
      }
      // Zero weights leave ties; break them lexicographically.
      std::vector<double> x = std::move(r.assignment);
      bool first_bound = true;
      for (Objective o : kAll) {
        if (w[Slot(o)] != 0.0) continue;
        if (first_bound) {
          problem.AddObjectiveBound("weighted-sum", "weighted_sum", combined,
                                    r.objective + 1e-9 * std::max(1.0, std::abs(r.objective)));
          first_bound = false;
        }
        SolveResult s = context.solver(problem, ObjectiveExpr(problem, o), &x);
        ++frontier.solves;
        if (s.status == SolveStatus::kCapExceeded) frontier.partial = true;
        if (!s.has_assignment()) break;
        x = std::move(s.assignment);
        problem.AddObjectiveBound(std::string("lexicographic-") + ObjectiveName(o),
                                  std::string("lexicographic_") + ObjectiveName(o),
                                  ObjectiveExpr(problem, o), s.objective + Slack(o, s.objective));
      }
      PlacementPlan plan = ExtractPlan(problem, x, context.network, context.options);
      ObjectiveVector v = Evaluate(plan, context.network, context.params, context.options, context.states);
      points.push_back(FrontierPoint{std::move(plan), v, Provenance{"weighted", Objective::kCost, w}});
    }
  }
  if (frontier.partial) frontier.notes.push_back("some scalarized solves hit their caps");
  Finish(frontier, std::move(points));
  return frontier;
}

bool Dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const bool no_worse = a.cost <= b.cost && (a.unreliability <= b.unreliability || Close(a.unreliability, b.unreliability)) &&
                        (a.traffic <= b.traffic || Close(a.traffic, b.traffic));
  if (!no_worse) return false;
  return a.cost < b.cost || (a.unreliability < b.unreliability && !Close(a.unreliability, b.unreliability)) ||
         (a.traffic < b.traffic && !Close(a.traffic, b.traffic));
}

std::vector<FrontierPoint> NonDominatedFilter(std::vector<FrontierPoint> points) {
  std::vector<FrontierPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (j == i) continue;
      if (Dominates(points[j].objectives, points[i].objectives)) keep = false;
      if (j < i && SameVector(points[j].objectives, points[i].objectives)) keep = false;
    }
    if (keep) out.push_back(std::move(points[i]));
  }
  return out;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string FormatValue(double v, Objective o) {
  switch (o) {
    case Objective::kCost:
      return fmt::format("{:.2f}", v / 100.0);
    case Objective::kUnreliability:
      return fmt::format("{:.9e}", v);
    case Objective::kTraffic:
      return fmt::format("{:.6f}", v);
  }
  return "";
}

}  // namespace

void WriteFrontierCsv(const ParetoFrontier& frontier, const PowerNetwork& network,
                      std::ostream& out) {
  out << "id,cost,unreliability,traffic,method,primary,param_cost,param_unreliability,"
         "param_traffic,pmus,dulrs,pdcs\n";
  for (std::size_t k = 0; k < frontier.points.size(); ++k) {
    const FrontierPoint& p = frontier.points[k];
    const PlanNotation n = FormatPlan(p.plan, network);
    out << fmt::format("{},{},{},{},{},{},{:.17g},{:.17g},{:.17g},{},{},{}\n", k + 1,
                       FormatValue(ObjectiveValue(p.objectives, Objective::kCost), Objective::kCost),
                       FormatValue(p.objectives.unreliability, Objective::kUnreliability),
                       FormatValue(p.objectives.traffic, Objective::kTraffic), p.provenance.method,
                       ObjectiveName(p.provenance.primary), p.provenance.parameters[0],
                       p.provenance.parameters[1], p.provenance.parameters[2], CsvField(n.pmus),
                       CsvField(n.dulrs), CsvField(n.pdcs));
  }
}

nlohmann::json FrontierToJson(const ParetoFrontier& frontier, const PowerNetwork& network,
                              const PlanningOptions& options) {
  nlohmann::json doc;
  doc["partial"] = frontier.partial;
  doc["solves"] = frontier.solves;
  doc["cells"] = frontier.cells;
  doc["infeasible_cells"] = frontier.infeasible_cells;
  doc["reused_cells"] = frontier.reused_cells;
  doc["notes"] = frontier.notes;
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t k = 0; k < frontier.points.size(); ++k) {
    const FrontierPoint& p = frontier.points[k];
    nlohmann::json params = nlohmann::json::object();
    for (Objective o : kAll) {
      if (p.provenance.parameters[Slot(o)] != 0.0) params[ObjectiveName(o)] = p.provenance.parameters[Slot(o)];
    }
    points.push_back({{"id", k + 1},
                      {"objectives",
                       {{"cost", p.objectives.cost.dollars()},
                        {"unreliability", p.objectives.unreliability},
                        {"traffic", p.objectives.traffic}}},
                      {"provenance",
                       {{"method", p.provenance.method},
                        {"primary", ObjectiveName(p.provenance.primary)},
                        {"parameters", params}}},
                      {"plan", PlanToJson(p.plan, network, options)}});
  }
  doc["points"] = points;
  return doc;
}

void WriteProjectionCsv(const ParetoFrontier& frontier, Objective x, Objective y,
                        std::ostream& out) {
  out << fmt::format("id,{},{},nondominated\n", ObjectiveName(x), ObjectiveName(y));
  const auto& pts = frontier.points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double xk = ObjectiveValue(pts[k].objectives, x);
    const double yk = ObjectiveValue(pts[k].objectives, y);
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      const double xj = ObjectiveValue(pts[j].objectives, x);
      const double yj = ObjectiveValue(pts[j].objectives, y);
      const bool no_worse = (xj <= xk || Close(xj, xk)) && (yj <= yk || Close(yj, yk));
      const bool better = (xj < xk && !Close(xj, xk)) || (yj < yk && !Close(yj, yk));
      const bool equal_earlier = j < k && Close(xj, xk) && Close(yj, yk);
      dominated = j != k && no_worse && (better || equal_earlier);
    }
    out << fmt::format("{},{},{},{}\n", k + 1, FormatValue(xk, x), FormatValue(yk, y), dominated ? 0 : 1);
  }
}

}  // namespace wamsplan
