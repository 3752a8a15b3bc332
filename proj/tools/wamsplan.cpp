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

// wamsplan: plan WAMS device placements from the command line.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 infeasible or violating
// plan, 3 solver caps hit (partial result written).

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "wamsplan/case_io.hpp"
#include "wamsplan/contingency.hpp"
#include "wamsplan/errors.hpp"
#include "wamsplan/milp_model.hpp"
#include "wamsplan/objectives.hpp"
#include "wamsplan/oracle.hpp"
#include "wamsplan/pareto.hpp"
#include "wamsplan/plan.hpp"
#include "wamsplan/plan_check.hpp"
#include "wamsplan/solver.hpp"

namespace {

using namespace wamsplan;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCapped = 3;

// Flags that adjust the case's planning options.
struct OptionFlags {
  std::vector<int> prohibit;
  std::vector<std::string> existing;
  std::optional<double> max_budget;
  std::optional<double> max_unreliability;
  std::optional<int> channel_limit;
  std::optional<int> max_order;
  bool transformer_measurements = false;

  void Register(CLI::App& cmd) {
    cmd.add_option("--prohibit-bus", prohibit, "Forbid PMUs and DULRs at this bus (repeatable)");
    cmd.add_option("--existing-pmu", existing,
                   "Pre-installed PMU as BUS:OBS,OBS,... (repeatable)");
    cmd.add_option("--max-budget", max_budget, "Construction budget in dollars");
    cmd.add_option("--max-unreliability", max_unreliability, "Upper bound on unreliability");
    cmd.add_option("--channel-limit", channel_limit, "Current channels per PMU");
    cmd.add_option("--max-order", max_order, "Simultaneous outages per contingency state");
    cmd.add_flag("--transformer-measurements", transformer_measurements,
                 "Allow channels and DULRs on transformer branches");
  }

  void Apply(Case& c) const {
    PlanningOptions& o = c.options;
    o.prohibited_buses.insert(prohibit.begin(), prohibit.end());
    for (const std::string& spec : existing) {
      const auto colon = spec.find(':');
      ExistingPmu e;
      try {
        e.bus = std::stoi(spec.substr(0, colon));
        if (colon != std::string::npos) {
          std::stringstream list(spec.substr(colon + 1));
          for (std::string item; std::getline(list, item, ',');) {
            if (!item.empty()) e.observes.push_back(std::stoi(item));
          }
        }
      } catch (const std::exception&) {
        throw CLI::ValidationError("--existing-pmu", "expected BUS:OBS,OBS,... got " + spec);
      }
      std::erase(e.observes, e.bus);
      std::sort(e.observes.begin(), e.observes.end());
      e.observes.erase(std::unique(e.observes.begin(), e.observes.end()), e.observes.end());
      o.existing_pmus.push_back(e);
    }
    std::sort(o.existing_pmus.begin(), o.existing_pmus.end(),
              [](const ExistingPmu& a, const ExistingPmu& b) { return a.bus < b.bus; });
    if (max_budget) o.budget = Money::FromDollars(*max_budget);
    if (max_unreliability) o.max_unreliability = *max_unreliability;
    if (channel_limit) o.channel_limit = *channel_limit;
    if (max_order) o.contingency.max_order = *max_order;
    if (transformer_measurements) o.transformer_measurements = true;
    o.Validate(c.network, c.parameters);
  }
};

struct SolverFlags {
  std::string delegate;
  std::size_t max_nodes = SolveLimits{}.max_nodes;
  double time_limit = SolveLimits{}.max_seconds;

  void Register(CLI::App& cmd) {
    cmd.add_option("--delegate", delegate,
                   "External solver command with {lp} and {sol} placeholders")
        ->envname("WAMSPLAN_DELEGATE");
    cmd.add_option("--max-nodes", max_nodes, "Branch-and-bound node cap per solve");
    cmd.add_option("--time-limit", time_limit, "Seconds per embedded solve");
  }

  ScalarSolver Make() const {
    if (!delegate.empty()) return DelegatedSolver(delegate);
    return EmbeddedSolver(SolveLimits{max_nodes, time_limit});
  }
};

struct Loaded {
  Case c;
  ContingencySet states;
};

Loaded Load(const std::string& name, const OptionFlags& flags) {
  Case c = LoadCaseOrBuiltin(name);
  flags.Apply(c);
  ContingencySet states =
      EnumerateStates(c.network, ResolveContingency(c.network, c.options.contingency));
  return Loaded{std::move(c), std::move(states)};
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void PrintObjectives(const ObjectiveVector& v) {
  fmt::print("cost           {}\n", v.cost.ToString());
  fmt::print("unreliability  {:.9e}\n", v.unreliability);
  fmt::print("traffic        {:.3f} bit-hops/s\n", v.traffic);
}

void PrintPlan(const PlacementPlan& plan, const PowerNetwork& network) {
  const PlanNotation n = FormatPlan(plan, network);
  fmt::print("PMUs   {}\n", n.pmus);
  fmt::print("DULRs  {}\n", n.dulrs);
  fmt::print("PDCs   {}\n", n.pdcs);
}

int RunPlan(const std::string& case_name, const std::string& objective, bool refine,
            const std::string& out, const OptionFlags& flags, const SolverFlags& solver) {
  const Loaded in = Load(case_name, flags);
  const PlanningContext context{in.c.network, in.c.parameters, in.c.options, in.states,
                                solver.Make()};
  const MilpProblem model = BuildModel(in.c.network, in.c.parameters, in.c.options, in.states);
  if (model.infeasible_reason) {
    fmt::print(stderr, "infeasible: {}\n", *model.infeasible_reason);
    return kExitInfeasible;
  }
  const std::array<double, 3> none{kNoBound, kNoBound, kNoBound};
  const LexResult r = Lexicographic(context, model, LexOrder(ParseObjective(objective)), none,
                                    nullptr, refine ? 3 : 1);
  if (r.assignment.empty()) {
    if (r.status == SolveStatus::kCapExceeded) {
      fmt::print(stderr, "solver caps reached before any feasible plan was found\n");
      return kExitCapped;
    }
    fmt::print(stderr, "infeasible: no plan satisfies the constraints\n");
    return kExitInfeasible;
  }
  fmt::print("case {} ({} buses), objective {}\n", in.c.name, in.c.network.num_buses(), objective);
  PrintPlan(r.plan, in.c.network);
  PrintObjectives(r.objectives);
  const auto violations = CheckPlan(r.plan, in.c.network, in.c.parameters, in.c.options, &in.states);
  fmt::print("checker        {}\n", violations.empty() ? "all constraints satisfied"
                                                       : fmt::format("{} violations", violations.size()));
  if (!out.empty()) WriteFile(out, PlanToJson(r.plan, in.c.network, in.c.options).dump(2) + "\n");
  if (r.status == SolveStatus::kCapExceeded) {
    fmt::print(stderr, "warning: solver caps reached; plan is the best found, not proven optimal\n");
    return kExitCapped;
  }
  return violations.empty() ? kExitOk : kExitInfeasible;
}

int RunFrontier(const std::string& case_name, const std::string& method, int resolution, int grid,
                const std::string& primary, const std::string& out_dir, const OptionFlags& flags,
                const SolverFlags& solver) {
  const Loaded in = Load(case_name, flags);
  const PlanningContext context{in.c.network, in.c.parameters, in.c.options, in.states,
                                solver.Make()};
  const ParetoFrontier f = method == "weighted"
                               ? WeightedSumScan(context, grid)
                               : EpsilonScan(context, resolution, ParseObjective(primary));
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  WriteFrontierCsv(f, in.c.network, csv);
  WriteFile(dir / "frontier.csv", csv.str());
  WriteFile(dir / "frontier.json", FrontierToJson(f, in.c.network, in.c.options).dump(2) + "\n");
  const std::array<std::pair<Objective, Objective>, 3> views{
      std::pair{Objective::kCost, Objective::kUnreliability},
      std::pair{Objective::kCost, Objective::kTraffic},
      std::pair{Objective::kUnreliability, Objective::kTraffic}};
  for (const auto& [x, y] : views) {
    std::ostringstream proj;
    WriteProjectionCsv(f, x, y, proj);
    WriteFile(dir / fmt::format("{}_{}.csv", ObjectiveName(x), ObjectiveName(y)), proj.str());
  }
  fmt::print("case {}: {} nondominated points ({} cells, {} reused, {} infeasible, {} solves)\n",
             in.c.name, f.points.size(), f.cells, f.reused_cells, f.infeasible_cells, f.solves);
  fmt::print("{:>3}  {:>14}  {:>15}  {:>14}  {}\n", "id", "cost", "unreliability", "traffic", "PDCs");
  for (std::size_t k = 0; k < f.points.size(); ++k) {
    const FrontierPoint& p = f.points[k];
    fmt::print("{:>3}  {:>14}  {:>15.6e}  {:>14.3f}  {}\n", k + 1, p.objectives.cost.ToString(),
               p.objectives.unreliability, p.objectives.traffic,
               FormatPlan(p.plan, in.c.network).pdcs);
  }
  for (const std::string& note : f.notes) fmt::print(stderr, "note: {}\n", note);
  if (f.partial) {
    fmt::print(stderr, "warning: frontier is partial; some solves hit their caps\n");
    return kExitCapped;
  }
  return f.points.empty() ? kExitInfeasible : kExitOk;
}

int RunEvaluate(const std::string& case_name, const std::string& plan_path,
                const OptionFlags& flags) {
  const Loaded in = Load(case_name, flags);
  const nlohmann::json doc = nlohmann::json::parse(ReadFile(plan_path), nullptr, true);
  if (doc.is_discarded()) throw PlanError("plan: invalid JSON");
  const PlacementPlan plan = PlanFromJson(doc, in.c.network);
  const auto violations = CheckPlan(plan, in.c.network, in.c.parameters, in.c.options, &in.states);
  PrintPlan(plan, in.c.network);
  for (const Violation& v : violations) fmt::print("violation {}: {}\n", v.rule, v.detail);
  if (!violations.empty()) return kExitInfeasible;
  PrintObjectives(Evaluate(plan, in.c.network, in.c.parameters, in.c.options, in.states));
  const UnreliabilityReport u = Unreliability(plan, in.states);
  fmt::print("{:>5}  {:>15}\n", "bus", "U_i");
  for (std::size_t i = 0; i < u.per_bus.size(); ++i) {
    fmt::print("{:>5}  {:>15.6e}\n", in.c.network.bus_id(i), u.per_bus[i]);
  }
  return kExitOk;
}

LinearExpr Scalarized(const MilpProblem& model, const std::string& objective) {
  return ObjectiveExpr(model, ParseObjective(objective));
}

int RunExportLp(const std::string& case_name, const std::string& objective, const std::string& out,
                const OptionFlags& flags) {
  const Loaded in = Load(case_name, flags);
  const MilpProblem model = BuildModel(in.c.network, in.c.parameters, in.c.options, in.states);
  std::ostringstream lp;
  ExportLp(model, Scalarized(model, objective), lp, fmt::format("{} minimize {}", in.c.name, objective));
  if (out.empty() || out == "-") {
    std::cout << lp.str();
  } else {
    WriteFile(out, lp.str());
  }
  const ModelAudit audit = Audit(model);
  fmt::print(stderr, "{} variables ({} fixed), {} constraints\n", audit.total_variables,
             audit.fixed_variables, model.constraints.size());
  return kExitOk;
}

int RunShowCase(const std::string& case_name, bool as_json, const OptionFlags& flags) {
  Case c = LoadCaseOrBuiltin(case_name);
  flags.Apply(c);
  if (as_json) {
    std::cout << SerializeCase(c).dump(2) << "\n";
    return kExitOk;
  }
  const PowerNetwork& net = c.network;
  std::size_t transformers = 0;
  for (const Branch& b : net.branches()) transformers += b.transformer ? 1 : 0;
  fmt::print("case {}: {} buses, {} branches ({} transformers), {} substations, controller {}\n",
             c.name, net.num_buses(), net.num_branches(), transformers, net.num_substations(),
             net.bus_id(net.controller()));
  const ContingencyConfig config = ResolveContingency(net, c.options.contingency);
  fmt::print("contingency: {} failable branches, order {}\n", config.failable_branches.size(),
             config.max_order);
  for (std::size_t k = 0; k < net.num_substations(); ++k) {
    if (net.substations()[k].size() < 2) continue;
    std::vector<int> ids;
    for (std::size_t i : net.substations()[k]) ids.push_back(net.bus_id(i));
    fmt::print("substation {}: buses {}\n", k + 1, fmt::join(ids, ","));
  }
  return kExitOk;
}

int RunOracle(const std::string& case_name, const std::string& objective, const OptionFlags& flags) {
  const Loaded in = Load(case_name, flags);
  ScalarWeights w{0.0, 0.0, 0.0};
  switch (ParseObjective(objective)) {
    case Objective::kCost:
      w.cost = 1.0;
      break;
    case Objective::kUnreliability:
      w.unreliability = 1.0;
      break;
    case Objective::kTraffic:
      w.traffic = 1.0;
      break;
  }
  const auto r = BruteForcePlan(in.c.network, in.c.parameters, in.c.options, in.states, w);
  if (!r) {
    fmt::print("infeasible\n");
    return kExitInfeasible;
  }
  nlohmann::json doc{{"objective", objective},
                     {"value", r->value},
                     {"cost", r->objectives.cost.dollars()},
                     {"unreliability", r->objectives.unreliability},
                     {"traffic", r->objectives.traffic},
                     {"candidates", r->candidates},
                     {"plan", PlanToJson(r->plan, in.c.network, in.c.options)}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan wide-area measurement systems: PMUs, DULRs and PDCs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wamsplan 1.0.0");

  std::string case_name;
  std::string objective = "cost";
  std::string out;
  OptionFlags flags;
  SolverFlags solver;

  CLI::App* plan = app.add_subcommand("plan", "Solve for one objective, ties broken by the others");
  plan->add_option("case", case_name, "Case file or built-in name (ieee9, ieee57)")->required();
  plan->add_option("--objective", objective, "cost, unreliability or traffic")
      ->check(CLI::IsMember({"cost", "unreliability", "traffic"}));
  plan->add_option("--out", out, "Write the plan as JSON");
  bool no_refine = false;
  plan->add_flag("--no-refine", no_refine, "Skip the tie-breaking solves on the other objectives");
  flags.Register(*plan);
  solver.Register(*plan);

  std::string method = "epsilon";
  int resolution = 32;
  int grid = 5;
  std::string primary = "cost";
  std::string out_dir = "frontier";
  CLI::App* frontier = app.add_subcommand("frontier", "Sweep the three-objective Pareto frontier");
  frontier->add_option("case", case_name, "Case file or built-in name")->required();
  frontier->add_option("--method", method, "epsilon or weighted")
      ->check(CLI::IsMember({"epsilon", "weighted"}));
  frontier->add_option("--resolution", resolution, "Epsilon levels per bounded objective")
      ->check(CLI::PositiveNumber);
  frontier->add_option("--grid", grid, "Weighted-sum grid divisions")->check(CLI::PositiveNumber);
  frontier->add_option("--primary", primary, "Objective minimized in each epsilon cell")
      ->check(CLI::IsMember({"cost", "unreliability", "traffic"}));
  frontier->add_option("--out-dir", out_dir, "Directory for CSV and JSON output");
  flags.Register(*frontier);
  solver.Register(*frontier);

  std::string plan_path;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Check a plan file and report its objectives");
  evaluate->add_option("case", case_name, "Case file or built-in name")->required();
  evaluate->add_option("plan", plan_path, "Plan JSON file")->required();
  flags.Register(*evaluate);

  CLI::App* export_lp = app.add_subcommand("export-lp", "Write the model in LP format");
  export_lp->add_option("case", case_name, "Case file or built-in name")->required();
  export_lp->add_option("--objective", objective, "cost, unreliability or traffic")
      ->check(CLI::IsMember({"cost", "unreliability", "traffic"}));
  export_lp->add_option("--out", out, "Output path, - for stdout");
  flags.Register(*export_lp);

  bool as_json = false;
  CLI::App* show = app.add_subcommand("show-case", "Summarize a case");
  show->add_option("case", case_name, "Case file or built-in name")->required();
  show->add_flag("--json", as_json, "Print the full case document");
  flags.Register(*show);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive search on tiny cases");
  oracle->group("");
  oracle->add_option("case", case_name, "Case file")->required();
  oracle->add_option("--objective", objective, "cost, unreliability or traffic")
      ->check(CLI::IsMember({"cost", "unreliability", "traffic"}));
  flags.Register(*oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan) return RunPlan(case_name, objective, !no_refine, out, flags, solver);
    if (*frontier) {
      return RunFrontier(case_name, method, resolution, grid, primary, out_dir, flags, solver);
    }
    if (*evaluate) return RunEvaluate(case_name, plan_path, flags);
    if (*export_lp) return RunExportLp(case_name, objective, out, flags);
    if (*show) return RunShowCase(case_name, as_json, flags);
    if (*oracle) return RunOracle(case_name, objective, flags);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
