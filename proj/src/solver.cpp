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

#include "wamsplan/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <queue>

#include <fmt/format.h>

#include "wamsplan/dual_simplex.hpp"
#include "wamsplan/errors.hpp"

namespace wamsplan {

const char* StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kCapExceeded:
      return "cap-exceeded";
  }
  return "?";
}

double SolveResult::gap() const {
  if (!has_assignment()) return std::numeric_limits<double>::infinity();
  return std::max(0.0, objective - bound) / std::max(1.0, std::abs(objective));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
  const std::vector<LinearTerm>* terms;
  double lower;
  double upper;
  const std::string* name;
};

std::vector<Row> Rows(const MilpProblem& problem) {
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size());
  for (const Constraint& c : problem.constraints) {
    const double lo = c.sense == Sense::kLessEqual ? -kInf : c.rhs;
    const double hi = c.sense == Sense::kGreaterEqual ? kInf : c.rhs;
    rows.push_back(Row{&c.terms, lo, hi, &c.name});
  }
  return rows;
}

double Tolerance(double lo, double hi) {
  double scale = 1.0;
  if (std::isfinite(lo)) scale = std::max(scale, std::abs(lo));
  if (std::isfinite(hi)) scale = std::max(scale, std::abs(hi));
  return 1e-9 * scale;
}

// Fixes binaries whose value is forced by a single row given the bounds of
// the other variables. Returns the name of a row shown infeasible, if any.
std::optional<std::string> Propagate(const std::vector<Row>& rows, std::vector<double>& lo,
                                     std::vector<double>& hi) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const Row& row : rows) {
      double min_act = 0.0;
      double max_act = 0.0;
      for (const LinearTerm& t : *row.terms) {
        min_act += t.coef > 0 ? t.coef * lo[t.var] : t.coef * hi[t.var];
        max_act += t.coef > 0 ? t.coef * hi[t.var] : t.coef * lo[t.var];
      }
      const double tol = Tolerance(row.lower, row.upper);
      if (min_act > row.upper + tol || max_act < row.lower - tol) return *row.name;
      for (const LinearTerm& t : *row.terms) {
        const std::size_t v = t.var;
        if (lo[v] == hi[v]) continue;
        const double a = t.coef;
        if (std::isfinite(row.upper)) {
          const double room = row.upper - (min_act - (a > 0 ? a * lo[v] : a * hi[v]));
          if (a > 0 && a > room + tol) {
            hi[v] = 0.0;
            changed = true;
          } else if (a < 0 && 0.0 > room + tol) {
            lo[v] = 1.0;
            changed = true;
          }
        }
        if (lo[v] == hi[v]) continue;
        if (std::isfinite(row.lower)) {
          const double room = row.lower - (max_act - (a > 0 ? a * hi[v] : a * lo[v]));
          if (a > 0 && 0.0 < room - tol) {
            lo[v] = 1.0;
            changed = true;
          } else if (a < 0 && a < room - tol) {
            hi[v] = 0.0;
            changed = true;
          }
        }
      }
    }
  }
  return std::nullopt;
}

// The LP handed to the simplex: free variables only, rows scaled to unit
// largest coefficient, objective scaled to unit largest coefficient.
struct ReducedLp {
  std::optional<std::string> infeasible;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> var_of_column;
  std::vector<SparseVector> columns;
  std::vector<double> cost;
  double cost_scale = 1.0;
  double constant = 0.0;
  std::vector<double> row_lower;
  std::vector<double> row_upper;
  bool integral_objective = false;
};

ReducedLp Reduce(const MilpProblem& problem, const LinearExpr& objective, bool propagate) {
  ReducedLp red;
  const std::size_t nv = problem.variables.size();
  red.lower.resize(nv);
  red.upper.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    red.lower[v] = problem.variables[v].lower;
    red.upper[v] = problem.variables[v].upper;
  }
  const std::vector<Row> rows = Rows(problem);
  if (propagate) {
    red.infeasible = Propagate(rows, red.lower, red.upper);
    if (red.infeasible) return red;
  }

  std::vector<long> column_of(nv, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    if (red.lower[v] < red.upper[v]) {
      column_of[v] = static_cast<long>(red.var_of_column.size());
      red.var_of_column.push_back(v);
    }
  }
  red.columns.resize(red.var_of_column.size());

  for (const Row& row : rows) {
    double fixed = 0.0;
    double min_act = 0.0;
    double max_act = 0.0;
    double scale = 0.0;
    for (const LinearTerm& t : *row.terms) {
      if (column_of[t.var] < 0) {
        fixed += t.coef * red.lower[t.var];
      } else {
        min_act += std::min(t.coef * red.lower[t.var], t.coef * red.upper[t.var]);
        max_act += std::max(t.coef * red.lower[t.var], t.coef * red.upper[t.var]);
        scale = std::max(scale, std::abs(t.coef));
      }
    }
    const double lo = row.lower - fixed;
    const double hi = row.upper - fixed;
    const double tol = Tolerance(row.lower, row.upper);
    if (min_act > hi + tol || max_act < lo - tol) {
      red.infeasible = *row.name;
      return red;
    }
    if (scale == 0.0 || (min_act >= lo - tol && max_act <= hi + tol)) continue;
    const std::size_t r = red.row_lower.size();
    double row_lo = std::max(lo, min_act) / scale;
    double row_hi = std::min(hi, max_act) / scale;
    if (row_lo > row_hi) row_lo = row_hi = 0.5 * (row_lo + row_hi);
    red.row_lower.push_back(row_lo);
    red.row_upper.push_back(row_hi);
    for (const LinearTerm& t : *row.terms) {
      if (column_of[t.var] < 0) continue;
      SparseVector& col = red.columns[static_cast<std::size_t>(column_of[t.var])];
      col.index.push_back(static_cast<int>(r));
      col.value.push_back(t.coef / scale);
    }
  }

  red.cost.assign(red.var_of_column.size(), 0.0);
  red.constant = objective.constant;
  red.integral_objective = std::round(objective.constant) == objective.constant;
  for (const LinearTerm& t : objective.terms) {
    if (column_of[t.var] < 0) {
      red.constant += t.coef * red.lower[t.var];
    } else {
      red.cost[static_cast<std::size_t>(column_of[t.var])] += t.coef;
    }
    if (std::round(t.coef) != t.coef) red.integral_objective = false;
  }
  double largest = 0.0;
  for (double c : red.cost) largest = std::max(largest, std::abs(c));
  red.cost_scale = largest > 0.0 ? largest : 1.0;
  for (double& c : red.cost) c /= red.cost_scale;
  return red;
}

std::unique_ptr<DualSimplex> MakeEngine(const ReducedLp& red) {
  std::vector<double> lo, hi;
  for (std::size_t v : red.var_of_column) {
    lo.push_back(red.lower[v]);
    hi.push_back(red.upper[v]);
  }
  return std::make_unique<DualSimplex>(red.columns, red.row_lower.size(), red.cost, lo, hi,
                                       red.row_lower, red.row_upper);
}

// Row-wise view of the reduced LP for bound propagation inside the search.
class RowView {
 public:
  explicit RowView(const ReducedLp& red)
      : lower_(red.row_lower), upper_(red.row_upper), rows_(red.row_lower.size()),
        rows_of_column_(red.columns.size()) {
    for (std::size_t c = 0; c < red.columns.size(); ++c) {
      const SparseVector& col = red.columns[c];
      for (std::size_t k = 0; k < col.index.size(); ++k) {
        const auto r = static_cast<std::size_t>(col.index[k]);
        rows_[r].emplace_back(c, col.value[k]);
        rows_of_column_[c].push_back(r);
      }
    }
  }

  // Tightens binary column bounds implied by single rows. Returns false when
  // some row cannot be satisfied.
  bool Propagate(std::vector<double>& lo, std::vector<double>& hi) const {
    std::vector<std::size_t> queue(rows_.size());
    std::vector<char> queued(rows_.size(), 1);
    for (std::size_t r = 0; r < rows_.size(); ++r) queue[r] = r;
    while (!queue.empty()) {
      const std::size_t r = queue.back();
      queue.pop_back();
      queued[r] = 0;
      double min_act = 0.0;
      double max_act = 0.0;
      for (const auto& [c, a] : rows_[r]) {
        min_act += a > 0 ? a * lo[c] : a * hi[c];
        max_act += a > 0 ? a * hi[c] : a * lo[c];
      }
      const double tol = Tolerance(lower_[r], upper_[r]);
      if (min_act > upper_[r] + tol || max_act < lower_[r] - tol) return false;
      for (const auto& [c, a] : rows_[r]) {
        if (lo[c] == hi[c]) continue;
        const double up_room = upper_[r] - (min_act - (a > 0 ? a * lo[c] : a * hi[c]));
        const double down_room = lower_[r] - (max_act - (a > 0 ? a * hi[c] : a * lo[c]));
        double fixed = -1.0;
        if (a > 0 ? a > up_room + tol : 0.0 > up_room + tol) fixed = a > 0 ? 0.0 : 1.0;
        if (a > 0 ? 0.0 < down_room - tol : a < down_room - tol) fixed = a > 0 ? 1.0 : 0.0;
        if (fixed < 0.0) continue;
        // Activities change, so the row is revisited with fresh sums.
        lo[c] = hi[c] = fixed;
        for (std::size_t r2 : rows_of_column_[c]) {
          if (!queued[r2]) {
            queued[r2] = 1;
            queue.push_back(r2);
          }
        }
      }
    }
    return true;
  }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows_;
  std::vector<std::vector<std::size_t>> rows_of_column_;
};

// Branching considers classes in this order and the most fractional variable
// within the first class that has one: device indicators decide where
// hardware goes and move the bound the most.
constexpr int kNoRank = 99;
int BranchRank(VarKind kind) {
  switch (kind) {
    case VarKind::kDeviceHosted:
      return 0;
    case VarKind::kPmuInstalled:
      return 1;
    case VarKind::kPdc:
      return 2;
    case VarKind::kInterrupt:
      return 3;
    default:
      return 4;
  }
}

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

}  // namespace

SolveResult Solve(const MilpProblem& problem, const LinearExpr& objective,
                  const SolveLimits& limits, const std::vector<double>* warm_start) {
  const auto start = Clock::now();
  SolveResult res;
  auto finish = [&](SolveStatus status) {
    res.status = status;
    if (status == SolveStatus::kOptimal) res.bound = res.objective;
    res.seconds = Seconds(start);
    return res;
  };
  if (problem.infeasible_reason) return finish(SolveStatus::kInfeasible);

  if (warm_start != nullptr && Verify(problem, *warm_start).empty()) {
    res.assignment = *warm_start;
    for (double& v : res.assignment) v = std::round(v);
    res.objective = objective.Value(res.assignment);
  }

  const ReducedLp red = Reduce(problem, objective, true);
  if (red.infeasible) return finish(SolveStatus::kInfeasible);

  auto assignment_of = [&](const std::vector<double>& column_values) {
    std::vector<double> x(problem.variables.size());
    for (std::size_t v = 0; v < x.size(); ++v) x[v] = red.lower[v];
    for (std::size_t c = 0; c < red.var_of_column.size(); ++c) {
      x[red.var_of_column[c]] = std::round(column_values[c]);
    }
    return x;
  };
  auto offer = [&](const std::vector<double>& x) {
    if (!Verify(problem, x).empty()) return;
    const double value = objective.Value(x);
    if (!res.has_assignment() || value < res.objective) {
      res.assignment = x;
      res.objective = value;
    }
  };

  if (red.var_of_column.empty()) {
    offer(assignment_of({}));
    res.root_bound = res.objective;
    return finish(res.has_assignment() ? SolveStatus::kOptimal : SolveStatus::kInfeasible);
  }

  // An improving plan must beat the incumbent by a full cent when the
  // objective is integral, otherwise by a relative 1e-9.
  auto pruned = [&](double bound) {
    if (!res.has_assignment()) return false;
    if (red.integral_objective) return bound > res.objective - 0.5;
    return bound >= res.objective - 1e-9 * std::max(1.0, std::abs(res.objective));
  };

  std::unique_ptr<DualSimplex> lp = MakeEngine(red);
  const std::size_t ncols = red.var_of_column.size();
  const RowView rows(red);
  std::vector<int> rank_of(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    rank_of[c] = BranchRank(problem.variables[red.var_of_column[c]].kind);
  }
  std::vector<double> root_lo(ncols), root_hi(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    root_lo[c] = red.lower[red.var_of_column[c]];
    root_hi[c] = red.upper[red.var_of_column[c]];
  }
  std::vector<double> cur_lo = root_lo, cur_hi = root_hi;
  auto apply_bounds = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (lo[c] != cur_lo[c] || hi[c] != cur_hi[c]) {
        lp->SetColumnBounds(c, lo[c], hi[c]);
        cur_lo[c] = lo[c];
        cur_hi[c] = hi[c];
      }
    }
  };
  auto out_of_time = [&] { return Seconds(start) > limits.max_seconds; };

  // Reduced costs of the root LP, kept for global fixing whenever the
  // incumbent improves.
  double root_value = 0.0;
  std::vector<double> root_x, root_d;
  auto reduced_cost_fix = [&](double value, const std::vector<double>& x,
                              const std::vector<double>& d, std::vector<double>& lo,
                              std::vector<double>& hi) {
    if (!res.has_assignment()) return;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (lo[c] == hi[c]) continue;
      const double gain = std::abs(d[c]) * red.cost_scale;
      if (gain == 0.0 || !pruned(value + gain)) continue;
      if (x[c] <= lo[c] + 1e-9 && d[c] > 0.0) {
        hi[c] = lo[c];
      } else if (x[c] >= hi[c] - 1e-9 && d[c] < 0.0) {
        lo[c] = hi[c];
      }
    }
  };
  auto offer_columns = [&](const std::vector<double>& x) {
    const double before = res.has_assignment() ? res.objective : kInf;
    offer(assignment_of(x));
    if (res.objective < before && !root_d.empty()) {
      reduced_cost_fix(root_value, root_x, root_d, root_lo, root_hi);
    }
  };

  struct Node {
    double bound;
    std::size_t depth;
    std::size_t id;
    std::size_t parent;
    std::vector<std::pair<std::size_t, double>> fixes;
    std::shared_ptr<const DualSimplex::Basis> basis;
  };
  auto later = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  };
  // Diving: repeatedly round the least fractional variable of the current LP
  // optimum and re-solve, trying the other value once when a rounding is
  // infeasible. Restores the node bounds afterwards.
  auto dive = [&](std::vector<double> x) {
    const std::vector<double> node_lo = cur_lo, node_hi = cur_hi;
    std::vector<double> lo = cur_lo, hi = cur_hi;
    for (std::size_t step = 0; step < ncols && !out_of_time(); ++step) {
      std::size_t pick = ncols;
      double closest = 0.5 + 1e-9;
      for (std::size_t c = 0; c < ncols; ++c) {
        const double frac = std::min(x[c] - std::floor(x[c]), std::ceil(x[c]) - x[c]);
        if (frac > 1e-6 && frac < closest) {
          closest = frac;
          pick = c;
        }
      }
      if (pick == ncols) {
        offer_columns(x);
        break;
      }
      const double rounded = std::round(x[pick]);
      bool solved = false;
      for (double v : {rounded, 1.0 - rounded}) {
        std::vector<double> try_lo = lo, try_hi = hi;
        try_lo[pick] = try_hi[pick] = v;
        if (!rows.Propagate(try_lo, try_hi)) continue;
        apply_bounds(try_lo, try_hi);
        const std::size_t before = lp->iterations();
        const DualSimplex::Status status = lp->Solve();
        res.lp_iterations += lp->iterations() - before;
        if (status == DualSimplex::Status::kOptimal) {
          lo = std::move(try_lo);
          hi = std::move(try_hi);
          solved = true;
          break;
        }
      }
      if (!solved || pruned(lp->objective() * red.cost_scale + red.constant)) break;
      x = lp->primal();
    }
    apply_bounds(node_lo, node_hi);
  };

  std::priority_queue<Node, std::vector<Node>, decltype(later)> open(later);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  open.push(Node{-kInf, 0, 0, kNone, {}, nullptr});
  std::size_t next_id = 1;
  std::size_t last_solved = kNone;
  bool capped = false;

  while (!open.empty()) {
    if (res.nodes >= limits.max_nodes || out_of_time()) {
      capped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (pruned(node.bound)) continue;
    ++res.nodes;

    std::vector<double> lo = root_lo, hi = root_hi;
    bool conflict = false;
    for (const auto& [c, value] : node.fixes) {
      // A globally fixed column contradicting the node's fix prunes it.
      if (lo[c] == hi[c] && lo[c] != value) conflict = true;
      lo[c] = hi[c] = value;
    }
    if (conflict || !rows.Propagate(lo, hi)) continue;
    apply_bounds(lo, hi);
    if (node.basis && node.parent != last_solved) lp->SetBasis(*node.basis);
    const std::size_t before = lp->iterations();
    DualSimplex::Status status = lp->Solve();
    if (status == DualSimplex::Status::kIterationLimit) {
      lp->SetBasis({});
      status = lp->Solve();
      if (status == DualSimplex::Status::kIterationLimit) {
        throw SolverError(fmt::format("LP iteration limit reached at node {}", node.id));
      }
    }
    res.lp_iterations += lp->iterations() - before;
    last_solved = node.id;
    if (status == DualSimplex::Status::kInfeasible) continue;

    const double value = lp->objective() * red.cost_scale + red.constant;
    if (pruned(value)) continue;

    const std::vector<double> x = lp->primal();
    const std::vector<double> d = lp->reduced_costs();
    if (node.id == 0) {
      res.root_bound = value;
      root_value = value;
      root_x = x;
      root_d = d;
      reduced_cost_fix(root_value, root_x, root_d, root_lo, root_hi);
    }
    std::size_t branch = ncols;
    double best = 1e-6;
    int best_rank = kNoRank;
    for (std::size_t c = 0; c < ncols; ++c) {
      const double frac = std::min(x[c] - std::floor(x[c]), std::ceil(x[c]) - x[c]);
      if (frac <= 1e-6) continue;
      const int rank = rank_of[c];
      if (rank < best_rank || (rank == best_rank && frac > best + 1e-12)) {
        best_rank = rank;
        best = frac;
        branch = c;
      }
    }
    if (branch == ncols) {
      offer_columns(x);
      continue;
    }

    auto basis = std::make_shared<const DualSimplex::Basis>(lp->GetBasis());
    const std::size_t period = res.has_assignment() ? 1000 : 100;
    if (node.id == 0 || res.nodes % period == 0) {
      dive(x);
      last_solved = kNone;
      if (pruned(value)) continue;
    }
    reduced_cost_fix(value, x, d, lo, hi);
    std::vector<std::pair<std::size_t, double>> fixes;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (lo[c] == hi[c] && root_lo[c] != root_hi[c]) fixes.emplace_back(c, lo[c]);
    }
    const double first = x[branch] >= 0.5 ? 1.0 : 0.0;
    for (double v : {first, 1.0 - first}) {
      Node child{value, node.depth + 1, next_id++, node.id, fixes, basis};
      child.fixes.emplace_back(branch, v);
      open.push(std::move(child));
    }
  }

  if (capped) {
    double bound = res.has_assignment() ? res.objective : kInf;
    while (!open.empty()) {
      if (!pruned(open.top().bound)) bound = std::min(bound, open.top().bound);
      open.pop();
    }
    res.bound = bound;
    return finish(SolveStatus::kCapExceeded);
  }
  return finish(res.has_assignment() ? SolveStatus::kOptimal : SolveStatus::kInfeasible);
}

LpRelaxation LpRelax(const MilpProblem& problem, const LinearExpr& objective) {
  LpRelaxation out;
  if (problem.infeasible_reason) return out;
  const ReducedLp red = Reduce(problem, objective, false);
  if (red.infeasible) return out;
  out.values.resize(problem.variables.size());
  for (std::size_t v = 0; v < out.values.size(); ++v) out.values[v] = red.lower[v];
  if (red.var_of_column.empty()) {
    out.feasible = true;
    out.objective = objective.Value(out.values);
    return out;
  }
  std::unique_ptr<DualSimplex> lp = MakeEngine(red);
  const DualSimplex::Status status = lp->Solve();
  if (status == DualSimplex::Status::kIterationLimit) throw SolverError("LP iteration limit reached");
  out.iterations = lp->iterations();
  if (status == DualSimplex::Status::kInfeasible) return out;
  out.feasible = true;
  const std::vector<double> x = lp->primal();
  for (std::size_t c = 0; c < x.size(); ++c) out.values[red.var_of_column[c]] = x[c];
  out.objective = lp->objective() * red.cost_scale + red.constant;
  return out;
}

namespace {

std::string Substitute(std::string text, const std::string& key, const std::string& value) {
  for (std::size_t at = text.find(key); at != std::string::npos; at = text.find(key, at + value.size())) {
    text.replace(at, key.size(), value);
  }
  return text;
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

SolveResult Delegate(const MilpProblem& problem, const LinearExpr& objective,
                     const std::string& command_template) {
  namespace fs = std::filesystem;
  const auto start = Clock::now();
  if (command_template.find("{lp}") == std::string::npos ||
      command_template.find("{sol}") == std::string::npos) {
    throw SolverError("external solver template must contain {lp} and {sol}");
  }
  SolveResult res;
  if (problem.infeasible_reason) {
    res.status = SolveStatus::kInfeasible;
    return res;
  }

  std::string dir_template = (fs::temp_directory_path() / "wamsplan-XXXXXX").string();
  if (mkdtemp(dir_template.data()) == nullptr) throw SolverError("cannot create a temporary directory");
  const fs::path dir(dir_template);
  struct Cleanup {
    fs::path path;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(path, ec);
    }
  } cleanup{dir};

  const fs::path lp_path = dir / "model.lp";
  const fs::path sol_path = dir / "model.sol";
  {
    std::ofstream out(lp_path);
    ExportLp(problem, objective, out);
    if (!out) throw SolverError("cannot write " + lp_path.string());
  }
  std::string command = Substitute(command_template, "{lp}", ShellQuote(lp_path.string()));
  command = Substitute(command, "{sol}", ShellQuote(sol_path.string()));
  command += " > " + ShellQuote((dir / "solver.log").string()) + " 2>&1";
  const int rc = std::system(command.c_str());
  if (rc != 0) {
    std::string log;
    std::ifstream in(dir / "solver.log");
    for (std::string line; std::getline(in, line);) log += "\n  " + line;
    throw SolverError(fmt::format("external solver failed with status {}: {}{}", rc,
                                  command_template, log));
  }
  std::ifstream in(sol_path);
  if (!in) throw SolverError("external solver wrote no solution file");
  const ExternalSolution sol = ReadSolution(problem, in);
  res.seconds = Seconds(start);
  if (sol.infeasible) {
    res.status = SolveStatus::kInfeasible;
    return res;
  }
  std::vector<double> x = sol.values;
  for (double& v : x) v = std::round(v);
  const std::vector<std::string> violations = Verify(problem, x);
  if (!violations.empty()) {
    throw SolverError(fmt::format("external solution rejected: {}{}", violations.front(),
                                  violations.size() > 1
                                      ? fmt::format(" (and {} more)", violations.size() - 1)
                                      : std::string()));
  }
  res.assignment = std::move(x);
  res.objective = objective.Value(res.assignment);
  std::string status = sol.status;
  std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::tolower(c); });
  if (status.empty() || status.find("optimal") != std::string::npos) {
    res.status = SolveStatus::kOptimal;
    res.bound = res.objective;
  } else {
    res.status = SolveStatus::kCapExceeded;
  }
  return res;
}

}  // namespace wamsplan
