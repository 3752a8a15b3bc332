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

#include "wamsplan/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

const char* VarKindName(VarKind kind) {
  switch (kind) {
    case VarKind::kPmu:
      return "m";
    case VarKind::kDulr:
      return "d";
    case VarKind::kPdc:
      return "p";
    case VarKind::kAssign:
      return "l";
    case VarKind::kPmuInstalled:
      return "mp";
    case VarKind::kDeviceHosted:
      return "dp";
    case VarKind::kInterrupt:
      return "u";
    case VarKind::kObserved:
      return "o";
  }
  return "?";
}

double LinearExpr::Value(const std::vector<double>& x) const {
  double total = constant;
  for (const LinearTerm& t : terms) total += t.coef * x[t.var];
  return total;
}

std::optional<std::size_t> MilpProblem::observed(std::size_t i, std::size_t s) const {
  if (s >= state_slot_.size() || !state_slot_[s]) return std::nullopt;
  return observed_base_ + *state_slot_[s] * num_buses + i;
}

namespace {

std::vector<LinearTerm> Normalize(std::vector<LinearTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  std::vector<LinearTerm> out;
  for (const LinearTerm& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const LinearTerm& t) { return t.coef == 0.0; });
  return out;
}

bool Satisfied(double activity, Sense sense, double rhs, double tolerance) {
  const double slack = tolerance * (1.0 + std::abs(rhs));
  switch (sense) {
    case Sense::kLessEqual:
      return activity <= rhs + slack;
    case Sense::kGreaterEqual:
      return activity >= rhs - slack;
    case Sense::kEqual:
      return std::abs(activity - rhs) <= slack;
  }
  return false;
}

const char* SenseText(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "?";
}

}  // namespace

void MilpProblem::AddConstraint(std::string role, std::string name, std::vector<LinearTerm> terms,
                                Sense sense, double rhs) {
  // Variables fixed at zero never contribute.
  std::erase_if(terms, [&](const LinearTerm& t) {
    return variables[t.var].lower == 0.0 && variables[t.var].upper == 0.0;
  });
  terms = Normalize(std::move(terms));
  if (terms.empty()) {
    if (!Satisfied(0.0, sense, rhs, 0.0) && !infeasible_reason) {
      infeasible_reason = fmt::format("constraint {} ({}) cannot be satisfied", name, role);
    }
    return;
  }
  constraints.push_back(Constraint{std::move(role), std::move(name), std::move(terms), sense, rhs});
}

void MilpProblem::AddObjectiveBound(const std::string& role, const std::string& name,
                                    const LinearExpr& expr, double bound) {
  AddConstraint(role, name, expr.terms, Sense::kLessEqual, bound - expr.constant);
}

MilpProblem BuildModel(const PowerNetwork& network, const CaseParameters& params,
                       const PlanningOptions& options, const ContingencySet& states) {
  options.Validate(network, params);
  const std::size_t n = network.num_buses();
  if (n == 0) throw ModelError("network has no buses");
  const std::size_t K = network.num_substations();
  auto id = [&](std::size_t i) { return network.bus_id(i); };

  MilpProblem pb;
  pb.num_buses = n;
  pb.num_substations = K;
  pb.variables.resize(3 * n * n + 3 * n + K);
  for (std::size_t s = 0; s < states.size(); ++s) pb.state_probability.push_back(states[s].probability);

  auto declare = [&](std::size_t v, VarKind kind, std::size_t a, std::size_t b, std::string name) {
    Variable& var = pb.variables[v];
    var.kind = kind;
    var.a = a;
    var.b = b;
    var.name = std::move(name);
  };
  auto fix = [&](std::size_t v, double value, const char* role) {
    Variable& var = pb.variables[v];
    if (!var.fixed_by.empty()) return;
    var.lower = var.upper = value;
    var.fixed_by = role;
  };

  std::vector<const ExistingPmu*> existing(n, nullptr);
  std::vector<bool> prohibited(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    existing[i] = options.FindExisting(id(i));
    prohibited[i] = options.prohibited_buses.contains(id(i));
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      declare(pb.pmu(i, j), VarKind::kPmu, i, j, fmt::format("m_{}_{}", id(i), id(j)));
      declare(pb.dulr(i, j), VarKind::kDulr, i, j, fmt::format("d_{}_{}", id(i), id(j)));
      declare(pb.assign(i, j), VarKind::kAssign, i, j, fmt::format("l_{}_{}", id(i), id(j)));
      if (existing[i] != nullptr) {
        const auto& obs = existing[i]->observes;
        const bool on = i == j || std::find(obs.begin(), obs.end(), id(j)) != obs.end();
        fix(pb.pmu(i, j), on ? 1.0 : 0.0, "existing-pmu");
      }
      if (i == j) {
        fix(pb.dulr(i, j), 0.0, "dulr-on-branch");
      } else if (const auto b = network.branch_between(i, j); !b) {
        fix(pb.pmu(i, j), 0.0, "channel-on-branch");
        fix(pb.dulr(i, j), 0.0, "dulr-on-branch");
      } else if (!options.Measurable(network, *b)) {
        fix(pb.pmu(i, j), 0.0, "transformer-measurement");
        fix(pb.dulr(i, j), 0.0, "transformer-measurement");
      }
      if (prohibited[i]) {
        fix(pb.pmu(i, j), 0.0, "prohibited-bus");
        fix(pb.dulr(i, j), 0.0, "prohibited-bus");
      }
    }
    declare(pb.pdc(i), VarKind::kPdc, i, 0, fmt::format("p_{}", id(i)));
    declare(pb.pmu_installed(i), VarKind::kPmuInstalled, i, 0, fmt::format("mp_{}", id(i)));
    declare(pb.device_hosted(i), VarKind::kDeviceHosted, i, 0, fmt::format("dp_{}", id(i)));
    if (existing[i] != nullptr) fix(pb.pmu_installed(i), 0.0, "existing-pmu");
    if (prohibited[i]) {
      fix(pb.pmu_installed(i), 0.0, "prohibited-bus");
      fix(pb.device_hosted(i), 0.0, "prohibited-bus");
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    declare(pb.interrupt(k), VarKind::kInterrupt, k, 0, fmt::format("u_{}", k + 1));
  }

  pb.observed_base_ = pb.variables.size();
  pb.state_slot_.assign(states.size(), std::nullopt);
  std::size_t slot = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!(states[s].probability > options.contingency.probability_floor)) continue;
    pb.state_slot_[s] = slot++;
    for (std::size_t i = 0; i < n; ++i) {
      Variable var;
      var.kind = VarKind::kObserved;
      var.a = i;
      var.b = s;
      var.name = fmt::format("o_{}_{}", id(i), s);
      pb.variables.push_back(std::move(var));
    }
  }

  auto live = [&](std::size_t v) { return pb.variables[v].upper > 0.0; };
  const int limit = options.ChannelLimit(params);

  for (std::size_t i = 0; i < n; ++i) {
    const int bus = id(i);
    if (existing[i] == nullptr) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !live(pb.pmu(i, j))) continue;
        pb.AddConstraint("pmu-self-voltage", fmt::format("pmu_self_voltage_{}_{}", bus, id(j)),
                         {{pb.pmu(i, i), 1.0}, {pb.pmu(i, j), -1.0}}, Sense::kGreaterEqual, 0.0);
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!live(pb.pmu(i, j))) continue;
        pb.AddConstraint("pmu-indicator", fmt::format("pmu_indicator_{}_{}", bus, id(j)),
                         {{pb.pmu_installed(i), 1.0}, {pb.pmu(i, j), -1.0}}, Sense::kGreaterEqual,
                         0.0);
      }
      pb.AddConstraint("pmu-indicator", fmt::format("pmu_indicator_{}", bus),
                       {{pb.pmu_installed(i), 1.0}, {pb.pmu(i, i), -1.0}}, Sense::kLessEqual, 0.0);
    }

    std::vector<LinearTerm> hosted{{pb.device_hosted(i), 1.0}};
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t v : {pb.pmu(i, j), pb.dulr(i, j)}) {
        if (!live(v)) continue;
        pb.AddConstraint("device-indicator",
                         fmt::format("device_indicator_{}", pb.variables[v].name),
                         {{pb.device_hosted(i), 1.0}, {v, -1.0}}, Sense::kGreaterEqual, 0.0);
      }
      if (live(pb.dulr(i, j))) hosted.push_back({pb.dulr(i, j), -1.0});
    }
    hosted.push_back({pb.pmu(i, i), -1.0});
    pb.AddConstraint("device-indicator", fmt::format("device_indicator_{}", bus), hosted,
                     Sense::kLessEqual, 0.0);

    std::vector<LinearTerm> rows{{pb.device_hosted(i), -1.0}};
    for (std::size_t j = 0; j < n; ++j) {
      pb.AddConstraint("pdc-assignment", fmt::format("pdc_assignment_{}_{}", bus, id(j)),
                       {{pb.assign(i, j), 1.0}, {pb.pdc(j), -1.0}}, Sense::kLessEqual, 0.0);
      rows.push_back({pb.assign(i, j), 1.0});
    }
    pb.AddConstraint("device-assignment", fmt::format("device_assignment_{}", bus), rows,
                     Sense::kEqual, 0.0);

    std::vector<LinearTerm> channels;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && live(pb.pmu(i, j))) channels.push_back({pb.pmu(i, j), 1.0});
    }
    if (static_cast<int>(channels.size()) > limit) {
      pb.AddConstraint("channel-limit", fmt::format("channel_limit_{}", bus), channels,
                       Sense::kLessEqual, limit);
    }
  }

  for (std::size_t k = 0; k < K; ++k) {
    std::vector<LinearTerm> hosts{{pb.interrupt(k), 1.0}};
    for (std::size_t i : network.substations()[k]) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t v : {pb.pmu(i, j), pb.dulr(i, j)}) {
          if (!live(v)) continue;
          pb.AddConstraint("substation-interruption",
                           fmt::format("substation_interruption_{}_{}", k + 1, pb.variables[v].name),
                           {{pb.interrupt(k), 1.0}, {v, -1.0}}, Sense::kGreaterEqual, 0.0);
        }
      }
      hosts.push_back({pb.device_hosted(i), -1.0});
    }
    pb.AddConstraint("substation-interruption", fmt::format("substation_interruption_{}", k + 1),
                     hosts, Sense::kLessEqual, 0.0);
  }

  // Observation terms of bus i when the listed buses are connected to it.
  auto observers = [&](std::size_t i, const std::vector<std::size_t>& connected) {
    std::vector<LinearTerm> terms{{pb.pmu(i, i), 1.0}};
    for (std::size_t j : connected) {
      terms.push_back({pb.pmu(j, i), 1.0});
      terms.push_back({pb.dulr(j, i), 1.0});
    }
    for (std::size_t j = 0; j < n; ++j) terms.push_back({pb.dulr(i, j), 1.0});
    return terms;
  };

  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!pb.state_slot_[s]) continue;
    const std::vector<BusSet> rows = states.AdjacencyRows(s);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> connected;
      for (std::size_t j : network.neighbors(i)) {
        if (rows[i].test(j)) connected.push_back(j);
      }
      std::vector<LinearTerm> terms = observers(i, connected);
      for (LinearTerm& t : terms) t.coef = -t.coef;
      terms.push_back({*pb.observed(i, s), 1.0});
      pb.AddConstraint("observability", fmt::format("observability_{}_{}", id(i), s),
                       std::move(terms), Sense::kLessEqual, 0.0);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const int need = options.RedundancyOf(id(i)) + 1;
    std::vector<LinearTerm> terms = observers(i, network.neighbors(i));
    const auto available = std::count_if(terms.begin(), terms.end(),
                                         [&](const LinearTerm& t) { return live(t.var); });
    if (available < need && !pb.infeasible_reason) {
      pb.infeasible_reason = fmt::format(
          "bus {} needs {} observations but only {} devices can observe it", id(i), need, available);
    }
    pb.AddConstraint("redundant-observability", fmt::format("redundant_observability_{}", id(i)),
                     std::move(terms), Sense::kGreaterEqual, need);
  }

  for (const TrafficCap& cap : options.traffic_caps) {
    const std::size_t i = network.index_of(cap.from);
    const std::size_t j = network.index_of(cap.to);
    const double rate = params.message_rate_bps * static_cast<double>(network.neighbors(i).size() + 1);
    pb.AddConstraint("traffic-cap", fmt::format("traffic_cap_{}_{}", cap.from, cap.to),
                     {{pb.assign(i, j), rate}}, Sense::kLessEqual, cap.max_bps);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (existing[i] == nullptr) {
      pb.cost.terms.push_back({pb.pmu_installed(i), static_cast<double>(params.PmuCost(id(i)).cents())});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (live(pb.dulr(i, j))) {
        pb.cost.terms.push_back(
            {pb.dulr(i, j), static_cast<double>(params.DulrCost(id(i), id(j)).cents())});
      }
    }
    pb.cost.terms.push_back({pb.pdc(i), static_cast<double>(params.PdcCost(id(i)).cents())});
  }
  for (std::size_t k = 0; k < K; ++k) {
    pb.cost.terms.push_back(
        {pb.interrupt(k), static_cast<double>(options.InterruptCost(network, params, k).cents())});
  }
  pb.cost.terms = Normalize(pb.cost.terms);

  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!pb.state_slot_[s]) continue;
    const double p = states[s].probability;
    pb.unreliability.constant += p * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) pb.unreliability.terms.push_back({*pb.observed(i, s), -p});
  }

  const std::size_t c = network.controller();
  const DistanceMatrix& q = network.hops();
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = params.message_rate_bps * static_cast<double>(network.neighbors(i).size() + 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double coef = (q(i, j) + q(j, c) * params.compression_ratio) * rate;
      pb.traffic.terms.push_back({pb.assign(i, j), coef});
    }
  }
  pb.traffic.terms = Normalize(pb.traffic.terms);

  if (options.budget) {
    pb.AddObjectiveBound("budget-cap", "budget_cap", pb.cost,
                         static_cast<double>(options.budget->cents()));
  }
  if (options.max_unreliability) {
    pb.AddObjectiveBound("reliability-cap", "reliability_cap", pb.unreliability,
                         *options.max_unreliability);
  }
  return pb;
}

ModelAudit Audit(const MilpProblem& problem) {
  ModelAudit audit;
  audit.total_variables = problem.variables.size();
  std::set<std::string> names;
  for (std::size_t v = 0; v < problem.variables.size(); ++v) {
    const Variable& var = problem.variables[v];
    ++audit.variables_by_kind[VarKindName(var.kind)];
    if (var.lower == var.upper) ++audit.fixed_variables;
    if (!(var.lower <= var.upper) || var.lower < 0.0 || var.upper > 1.0) {
      audit.defects.push_back(fmt::format("variable {} has bounds [{}, {}]", var.name, var.lower, var.upper));
    }
    if (!names.insert(var.name).second) audit.defects.push_back("duplicate variable name " + var.name);
    if (var.kind == VarKind::kObserved) {
      const bool valid = var.b < problem.state_probability.size() && var.a < problem.num_buses &&
                         problem.observed(var.a, var.b) == v;
      if (!valid) audit.defects.push_back(fmt::format("variable {} is not tied to a state", var.name));
    }
  }
  std::set<std::string> row_names;
  auto check_terms = [&](const std::vector<LinearTerm>& terms, const std::string& where) {
    for (const LinearTerm& t : terms) {
      if (t.var >= problem.variables.size()) {
        audit.defects.push_back(fmt::format("{} references undeclared variable {}", where, t.var));
      }
    }
  };
  for (const Constraint& c : problem.constraints) {
    ++audit.constraints_by_role[c.role];
    if (!row_names.insert(c.name).second) audit.defects.push_back("duplicate constraint name " + c.name);
    check_terms(c.terms, "constraint " + c.name);
  }
  check_terms(problem.cost.terms, "cost objective");
  check_terms(problem.unreliability.terms, "unreliability objective");
  check_terms(problem.traffic.terms, "traffic objective");
  return audit;
}

std::vector<std::string> Verify(const MilpProblem& problem, const std::vector<double>& x,
                                double tolerance) {
  std::vector<std::string> out;
  if (x.size() != problem.variables.size()) {
    out.push_back(fmt::format("assignment has {} values, model has {} variables", x.size(),
                              problem.variables.size()));
    return out;
  }
  for (std::size_t v = 0; v < x.size(); ++v) {
    const Variable& var = problem.variables[v];
    if (x[v] < var.lower - tolerance || x[v] > var.upper + tolerance) {
      out.push_back(fmt::format("{} = {} outside [{}, {}]{}", var.name, x[v], var.lower, var.upper,
                                var.fixed_by.empty() ? "" : " (" + var.fixed_by + ")"));
    } else if (std::abs(x[v] - std::round(x[v])) > tolerance) {
      out.push_back(fmt::format("{} = {} is not binary", var.name, x[v]));
    }
  }
  for (const Constraint& c : problem.constraints) {
    double activity = 0.0;
    for (const LinearTerm& t : c.terms) activity += t.coef * x[t.var];
    if (!Satisfied(activity, c.sense, c.rhs, tolerance)) {
      out.push_back(fmt::format("{} violated ({}): {} {} {}", c.name, c.role, activity,
                                SenseText(c.sense), c.rhs));
    }
  }
  return out;
}

PlacementPlan ExtractPlan(const MilpProblem& problem, const std::vector<double>& x,
                          const PowerNetwork& network, const PlanningOptions& options) {
  const std::vector<std::string> violations = Verify(problem, x);
  if (!violations.empty()) {
    std::string message = "assignment rejected: " + violations.front();
    if (violations.size() > 1) message += fmt::format(" (and {} more)", violations.size() - 1);
    throw PlanError(message);
  }
  const std::size_t n = problem.num_buses;
  PlacementPlan plan(n);
  auto on = [&](std::size_t v) { return x[v] > 0.5; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      plan.pmu.set(i, j, on(problem.pmu(i, j)));
      plan.dulr.set(i, j, on(problem.dulr(i, j)));
      plan.assign.set(i, j, on(problem.assign(i, j)));
    }
    plan.pdc[i] = on(problem.pdc(i));
  }
  const DerivedIndicators derived = Derive(plan, network, options);
  for (std::size_t i = 0; i < n; ++i) {
    if (on(problem.pmu_installed(i)) != static_cast<bool>(derived.new_pmu[i])) {
      throw PlanError(fmt::format("indicator mp_{} disagrees with the PMU matrix", network.bus_id(i)));
    }
    if (on(problem.device_hosted(i)) != static_cast<bool>(derived.device[i])) {
      throw PlanError(fmt::format("indicator dp_{} disagrees with the device matrices", network.bus_id(i)));
    }
  }
  for (std::size_t k = 0; k < problem.num_substations; ++k) {
    if (on(problem.interrupt(k)) != static_cast<bool>(derived.interrupted[k])) {
      throw PlanError(fmt::format("indicator u_{} disagrees with the device matrices", k + 1));
    }
  }
  return plan;
}

std::vector<double> AssignmentFromPlan(const MilpProblem& problem, const PlacementPlan& plan,
                                       const PowerNetwork& network,
                                       const PlanningOptions& options,
                                       const ContingencySet& states) {
  const std::size_t n = problem.num_buses;
  if (plan.size() != n) throw PlanError("plan size does not match the model");
  std::vector<double> x(problem.variables.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      x[problem.pmu(i, j)] = plan.pmu(i, j);
      x[problem.dulr(i, j)] = plan.dulr(i, j);
      x[problem.assign(i, j)] = plan.assign(i, j);
    }
    x[problem.pdc(i)] = plan.pdc[i];
  }
  const DerivedIndicators derived = Derive(plan, network, options);
  for (std::size_t i = 0; i < n; ++i) {
    x[problem.pmu_installed(i)] = derived.new_pmu[i];
    x[problem.device_hosted(i)] = derived.device[i];
  }
  for (std::size_t k = 0; k < problem.num_substations; ++k) x[problem.interrupt(k)] = derived.interrupted[k];
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!problem.observed(0, s)) continue;
    const std::vector<std::uint8_t> o = Observability(plan, states, s);
    for (std::size_t i = 0; i < n; ++i) x[*problem.observed(i, s)] = o[i];
  }
  return x;
}

namespace {

// Writes "name: terms sense rhs" wrapped at roughly 80 columns.
class LpWriter {
 public:
  explicit LpWriter(std::ostream& out) : out_(out) {}

  void Begin(const std::string& head) {
    line_ = " " + head;
  }
  void Token(const std::string& token) {
    if (line_.size() + token.size() + 1 > 80) {
      out_ << line_ << '\n';
      line_ = "   ";
    }
    line_ += ' ';
    line_ += token;
  }
  void End() {
    out_ << line_ << '\n';
    line_.clear();
  }
  void Terms(const MilpProblem& problem, const std::vector<LinearTerm>& terms) {
    bool first = true;
    for (const LinearTerm& t : terms) {
      const double magnitude = std::abs(t.coef);
      std::string token;
      if (!first || t.coef < 0) token = t.coef < 0 ? "- " : "+ ";
      if (magnitude != 1.0) token += fmt::format("{:.17g} ", magnitude);
      token += problem.variables[t.var].name;
      Token(token);
      first = false;
    }
    if (terms.empty()) Token("0 " + problem.variables.front().name);
  }

 private:
  std::ostream& out_;
  std::string line_;
};

}  // namespace

void ExportLp(const MilpProblem& problem, const LinearExpr& objective, std::ostream& out,
              const std::string& title) {
  if (problem.variables.empty()) throw ModelError("cannot export an empty model");
  out << "\\ " << title << '\n';
  out << fmt::format("\\ objective constant: {:.17g}\n", objective.constant);
  out << "Minimize\n";
  LpWriter w(out);
  w.Begin("obj:");
  w.Terms(problem, Normalize(objective.terms));
  w.End();
  out << "Subject To\n";
  for (const Constraint& c : problem.constraints) {
    w.Begin(c.name + ":");
    w.Terms(problem, c.terms);
    w.Token(fmt::format("{} {:.17g}", SenseText(c.sense), c.rhs));
    w.End();
  }
  out << "Bounds\n";
  for (const Variable& var : problem.variables) {
    if (var.lower == var.upper) {
      out << fmt::format(" {} = {:.17g}\n", var.name, var.lower);
    } else {
      out << fmt::format(" {:.17g} <= {} <= {:.17g}\n", var.lower, var.name, var.upper);
    }
  }
  out << "Binaries\n";
  for (const Variable& var : problem.variables) {
    w.Begin("");
    w.Token(var.name);
    w.End();
  }
  out << "End\n";
}

ExternalSolution ReadSolution(const MilpProblem& problem, std::istream& in) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t v = 0; v < problem.variables.size(); ++v) index.emplace(problem.variables[v].name, v);

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  ExternalSolution out;
  out.values.assign(problem.variables.size(), 0.0);

  auto assign = [&](const std::string& name, const std::string& value, std::size_t line_no) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw SolverError(fmt::format("solution line {}: unknown variable \"{}\"", line_no + 1, name));
    }
    try {
      std::size_t used = 0;
      out.values[it->second] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw SolverError(fmt::format("solution line {}: bad value \"{}\"", line_no + 1, value));
    }
  };
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };

  auto columns = std::find_if(lines.begin(), lines.end(),
                              [](const std::string& l) { return l.rfind("# Columns", 0) == 0; });
  if (!lines.empty() && lines.front() == "Model status") {
    out.status = lines.size() > 1 ? lines[1] : "";
    out.infeasible = lower(out.status).find("infeasible") != std::string::npos;
    if (columns == lines.end()) {
      if (out.infeasible) return out;
      throw SolverError("HiGHS solution has no primal column values");
    }
    std::size_t count = 0;
    std::istringstream(columns->substr(9)) >> count;
    std::size_t at = static_cast<std::size_t>(columns - lines.begin()) + 1;
    for (std::size_t c = 0; c < count; ++c, ++at) {
      if (at >= lines.size()) throw SolverError("HiGHS solution ends before all columns are listed");
      std::istringstream fields(lines[at]);
      std::string name, value;
      if (!(fields >> name >> value)) throw SolverError(fmt::format("solution line {}: malformed", at + 1));
      assign(name, value, at);
    }
    return out;
  }

  std::size_t first = 0;
  if (!lines.empty() && lower(lines.front()).find("objective value") != std::string::npos) {
    // CBC: "<status> - objective value X" followed by "index name value reduced".
    out.status = lines.front().substr(0, lines.front().find(" - "));
    out.infeasible = lower(out.status).find("infeasible") != std::string::npos;
    for (std::size_t at = 1; at < lines.size(); ++at) {
      std::istringstream fields(lines[at]);
      std::vector<std::string> tok;
      for (std::string t; fields >> t;) tok.push_back(t);
      if (!tok.empty() && tok.front() == "**") tok.erase(tok.begin());
      if (tok.empty()) continue;
      if (tok.size() < 3) throw SolverError(fmt::format("solution line {}: malformed", at + 1));
      assign(tok[1], tok[2], at);
    }
    return out;
  }

  for (std::size_t at = first; at < lines.size(); ++at) {
    const std::string& line = lines[at];
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string name, value;
    if (!(fields >> name >> value)) throw SolverError(fmt::format("solution line {}: malformed", at + 1));
    assign(name, value, at);
  }
  return out;
}

}  // namespace wamsplan
