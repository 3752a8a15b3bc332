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

#include "wamsplan/dual_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "wamsplan/errors.hpp"

namespace wamsplan {

// LU factors of a reference basis followed by a product-form eta file.
class DualSimplex::Factor {
 public:
  bool Factorize(std::size_t m, const std::vector<SparseVector>& basis_columns) {
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t k = 0; k < basis_columns.size(); ++k) {
      const SparseVector& col = basis_columns[k];
      for (std::size_t t = 0; t < col.index.size(); ++t) {
        triplets.emplace_back(col.index[t], static_cast<int>(k), col.value[t]);
      }
    }
    Eigen::SparseMatrix<double> b(static_cast<int>(m), static_cast<int>(m));
    b.setFromTriplets(triplets.begin(), triplets.end());
    b.makeCompressed();
    etas_.clear();
    m_ = m;
    if (m == 0) return true;
    lu_.analyzePattern(b);
    lu_.factorize(b);
    if (lu_.info() != Eigen::Success) return false;
    // Reject numerically singular factors.
    const double det = lu_.logAbsDeterminant();
    return std::isfinite(det);
  }

  void Ftran(std::vector<double>& v) const {
    if (m_ == 0) return;
    Eigen::Map<Eigen::VectorXd> rhs(v.data(), static_cast<Eigen::Index>(m_));
    Eigen::VectorXd sol = lu_.solve(rhs);
    rhs = sol;
    for (const Eta& e : etas_) {
      const double vr = v[e.r] / e.pivot;
      v[e.r] = vr;
      if (vr == 0.0) continue;
      for (std::size_t t = 0; t < e.index.size(); ++t) v[e.index[t]] -= e.value[t] * vr;
    }
  }

  void Btran(std::vector<double>& v) {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double sum = v[it->r];
      for (std::size_t t = 0; t < it->index.size(); ++t) sum -= it->value[t] * v[it->index[t]];
      v[it->r] = sum / it->pivot;
    }
    Eigen::Map<Eigen::VectorXd> rhs(v.data(), static_cast<Eigen::Index>(m_));
    Eigen::VectorXd sol = lu_.transpose().solve(rhs);
    rhs = sol;
  }

  void Update(std::size_t r, const std::vector<double>& alpha) {
    Eta e;
    e.r = r;
    e.pivot = alpha[r];
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i != r && alpha[i] != 0.0) {
        e.index.push_back(static_cast<int>(i));
        e.value.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(e));
  }

  std::size_t updates() const { return etas_.size(); }

 private:
  struct Eta {
    std::size_t r = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };
  std::size_t m_ = 0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

DualSimplex::DualSimplex(std::vector<SparseVector> columns, std::size_t num_rows,
                         std::vector<double> cost, std::vector<double> col_lower,
                         std::vector<double> col_upper, std::vector<double> row_lower,
                         std::vector<double> row_upper)
    : DualSimplex(std::move(columns), num_rows, std::move(cost), std::move(col_lower),
                  std::move(col_upper), std::move(row_lower), std::move(row_upper), Options{}) {}

DualSimplex::DualSimplex(std::vector<SparseVector> columns, std::size_t num_rows,
                         std::vector<double> cost, std::vector<double> col_lower,
                         std::vector<double> col_upper, std::vector<double> row_lower,
                         std::vector<double> row_upper, Options options)
    : m_(num_rows),
      n_(columns.size()),
      options_(options),
      columns_(std::move(columns)),
      rows_(num_rows),
      cost_(std::move(cost)),
      factor_(std::make_unique<Factor>()) {
  if (cost_.size() != n_ || col_lower.size() != n_ || col_upper.size() != n_ ||
      row_lower.size() != m_ || row_upper.size() != m_) {
    throw SolverError("dual simplex: inconsistent dimensions");
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const SparseVector& col = columns_[j];
    for (std::size_t t = 0; t < col.index.size(); ++t) {
      rows_[col.index[t]].index.push_back(static_cast<int>(j));
      rows_[col.index[t]].value.push_back(col.value[t]);
    }
  }
  lower_ = std::move(col_lower);
  upper_ = std::move(col_upper);
  lower_.insert(lower_.end(), row_lower.begin(), row_lower.end());
  upper_.insert(upper_.end(), row_upper.begin(), row_upper.end());
  for (std::size_t v = 0; v < n_ + m_; ++v) {
    if (!std::isfinite(lower_[v]) || !std::isfinite(upper_[v])) {
      throw SolverError("dual simplex: every bound must be finite");
    }
  }
  if (options_.iteration_limit == 0) options_.iteration_limit = 50 * (m_ + n_) + 10000;
  ResetToSlackBasis();
}

DualSimplex::~DualSimplex() = default;

void DualSimplex::ResetToSlackBasis() {
  status_.assign(n_ + m_, kAtLower);
  head_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    status_[n_ + i] = kBasic;
  }
  for (std::size_t j = 0; j < n_; ++j) status_[j] = cost_[j] < 0.0 ? kAtUpper : kAtLower;
  x_.assign(n_ + m_, 0.0);
  fresh_ = false;
}

void DualSimplex::SetColumnBounds(std::size_t j, double lower, double upper) {
  lower_[j] = lower;
  upper_[j] = upper;
  bounds_dirty_ = true;
}

void DualSimplex::SetBasis(const Basis& basis) {
  if (basis.size() != n_ + m_ ||
      static_cast<std::size_t>(std::count(basis.begin(), basis.end(), kBasic)) != m_) {
    ResetToSlackBasis();
    return;
  }
  status_ = basis;
  head_.clear();
  for (std::size_t v = 0; v < n_ + m_; ++v) {
    if (status_[v] == kBasic) head_.push_back(v);
  }
  fresh_ = false;
}

void DualSimplex::ColumnInto(std::size_t j, double scale, std::vector<double>& dense) const {
  if (j < n_) {
    const SparseVector& col = columns_[j];
    for (std::size_t t = 0; t < col.index.size(); ++t) dense[col.index[t]] += scale * col.value[t];
  } else {
    dense[j - n_] -= scale;
  }
}

double DualSimplex::Dot(const std::vector<double>& rho, std::size_t j) const {
  if (j >= n_) return -rho[j - n_];
  const SparseVector& col = columns_[j];
  double sum = 0.0;
  for (std::size_t t = 0; t < col.index.size(); ++t) sum += rho[col.index[t]] * col.value[t];
  return sum;
}

void DualSimplex::Refactor() {
  auto factorize = [&] {
    std::vector<SparseVector> basis(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t j = head_[k];
      if (j < n_) {
        basis[k] = columns_[j];
      } else {
        basis[k].index = {static_cast<int>(j - n_)};
        basis[k].value = {-1.0};
      }
    }
    return factor_->Factorize(m_, basis);
  };
  if (!factorize()) {
    ResetToSlackBasis();
    if (!factorize()) throw SolverError("dual simplex: slack basis factorization failed");
  }
  ComputeDuals();
  MakeDualFeasible();
  ComputePrimal();
  fresh_ = true;
}

void DualSimplex::ComputePrimal() {
  std::vector<double> rhs(m_, 0.0);
  for (std::size_t v = 0; v < n_ + m_; ++v) {
    if (status_[v] == kBasic) continue;
    x_[v] = status_[v] == kAtUpper ? upper_[v] : lower_[v];
    if (x_[v] != 0.0) ColumnInto(v, -x_[v], rhs);
  }
  factor_->Ftran(rhs);
  for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] = rhs[k];
}

void DualSimplex::ComputeDuals() {
  std::vector<double> y(m_, 0.0);
  for (std::size_t k = 0; k < m_; ++k) y[k] = head_[k] < n_ ? cost_[head_[k]] : 0.0;
  factor_->Btran(y);
  d_.assign(n_ + m_, 0.0);
  for (std::size_t v = 0; v < n_ + m_; ++v) {
    if (status_[v] == kBasic) continue;
    d_[v] = (v < n_ ? cost_[v] : 0.0) - Dot(y, v);
  }
}

bool DualSimplex::MakeDualFeasible() {
  bool flipped = false;
  for (std::size_t v = 0; v < n_ + m_; ++v) {
    if (status_[v] == kBasic) continue;
    if (lower_[v] == upper_[v]) {
      status_[v] = kAtLower;
      continue;
    }
    if (status_[v] == kAtLower && d_[v] < -options_.dual_tolerance) {
      status_[v] = kAtUpper;
      flipped = true;
    } else if (status_[v] == kAtUpper && d_[v] > options_.dual_tolerance) {
      status_[v] = kAtLower;
      flipped = true;
    }
  }
  return flipped;
}

DualSimplex::Status DualSimplex::Solve() {
  if (!fresh_) {
    Refactor();
  } else if (bounds_dirty_) {
    MakeDualFeasible();
    ComputePrimal();
  }
  bounds_dirty_ = false;
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  const std::size_t total = n_ + m_;
  std::vector<double> rho(m_);
  std::vector<double> alpha_row(total, 0.0);
  std::vector<double> alpha_col(m_);
  std::vector<double> flip_col(m_);
  struct Candidate {
    std::size_t j;
    double t;
    double magnitude;
  };
  std::vector<Candidate> candidates;
  int degenerate = 0;
  bool bland = false;
  std::size_t stable_checks = 0;

  for (std::size_t local = 0;; ++local) {
    if (local > options_.iteration_limit) return Status::kIterationLimit;
    if (factor_->updates() >= static_cast<std::size_t>(options_.refactor_interval)) Refactor();

    // Leaving row: largest bound violation, or lowest variable index under Bland.
    std::size_t r = m_;
    double worst = ptol;
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t v = head_[k];
      const double lo = lower_[v] - x_[v];
      const double hi = x_[v] - upper_[v];
      const double scale = 1.0 + std::max(std::abs(lower_[v]), std::abs(upper_[v]));
      const double infeasibility = std::max(lo, hi) / scale;
      if (infeasibility <= ptol) continue;
      if (bland) {
        if (r == m_ || v < head_[r]) r = k;
      } else if (infeasibility > worst) {
        worst = infeasibility;
        r = k;
      }
    }
    if (r == m_) {
      // Confirm on fresh factors before declaring optimality.
      if (factor_->updates() > 0 && stable_checks < 3) {
        ++stable_checks;
        Refactor();
        continue;
      }
      return Status::kOptimal;
    }

    const std::size_t leaving = head_[r];
    const bool below = x_[leaving] < lower_[leaving];
    const double sgn = below ? -1.0 : 1.0;
    const double target = below ? lower_[leaving] : upper_[leaving];

    std::fill(rho.begin(), rho.end(), 0.0);
    rho[r] = 1.0;
    factor_->Btran(rho);
    std::fill(alpha_row.begin(), alpha_row.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (rho[i] == 0.0) continue;
      const SparseVector& row = rows_[i];
      for (std::size_t t = 0; t < row.index.size(); ++t) alpha_row[row.index[t]] += rho[i] * row.value[t];
      alpha_row[n_ + i] = -rho[i];
    }

    candidates.clear();
    double max_alpha = 0.0;
    for (std::size_t v = 0; v < total; ++v) {
      if (status_[v] == kBasic || lower_[v] == upper_[v]) continue;
      max_alpha = std::max(max_alpha, std::abs(alpha_row[v]));
    }
    const double pivot_floor = options_.pivot_tolerance * std::max(1.0, max_alpha);
    for (std::size_t v = 0; v < total; ++v) {
      if (status_[v] == kBasic || lower_[v] == upper_[v]) continue;
      const double a = sgn * alpha_row[v];
      const bool eligible = status_[v] == kAtLower ? a > pivot_floor : a < -pivot_floor;
      if (!eligible) continue;
      candidates.push_back({v, std::max(0.0, d_[v] / a), std::abs(alpha_row[v])});
    }
    if (candidates.empty()) return Status::kInfeasible;
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.t != b.t ? a.t < b.t : a.j < b.j;
    });

    // Bound-flipping ratio test: pass breakpoints while the dual slope stays positive.
    double slope = std::abs(x_[leaving] - target);
    const double slope_tol = ptol * (1.0 + slope);
    std::size_t brk = candidates.size();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const Candidate& c = candidates[k];
      slope -= c.magnitude * (upper_[c.j] - lower_[c.j]);
      if (slope <= slope_tol) {
        brk = k;
        break;
      }
    }
    if (brk == candidates.size()) return Status::kInfeasible;

    std::size_t pick = brk;
    if (!bland) {
      const double limit = candidates[brk].t;
      for (std::size_t k = brk + 1; k < candidates.size(); ++k) {
        const Candidate& c = candidates[k];
        if (c.t > limit + dtol / c.magnitude) break;
        if (c.magnitude > candidates[pick].magnitude) pick = k;
      }
    }
    const std::size_t q = candidates[pick].j;

    if (brk > 0) {
      std::fill(flip_col.begin(), flip_col.end(), 0.0);
      for (std::size_t k = 0; k < brk; ++k) {
        const std::size_t v = candidates[k].j;
        const double from = x_[v];
        status_[v] = status_[v] == kAtLower ? kAtUpper : kAtLower;
        x_[v] = status_[v] == kAtUpper ? upper_[v] : lower_[v];
        ColumnInto(v, x_[v] - from, flip_col);
      }
      factor_->Ftran(flip_col);
      for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] -= flip_col[k];
    }

    std::fill(alpha_col.begin(), alpha_col.end(), 0.0);
    ColumnInto(q, 1.0, alpha_col);
    factor_->Ftran(alpha_col);
    const double pivot = alpha_col[r];
    const double row_pivot = alpha_row[q];
    if (std::abs(pivot - row_pivot) > 1e-7 * (1.0 + std::abs(pivot)) ||
        std::abs(pivot) < options_.pivot_tolerance) {
      if (factor_->updates() == 0) throw SolverError("dual simplex: unstable pivot on fresh factors");
      Refactor();
      continue;
    }

    const double delta = x_[leaving] - target;
    const double theta_p = delta / pivot;
    for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] -= theta_p * alpha_col[k];
    x_[q] += theta_p;
    x_[leaving] = target;

    const double theta_d = d_[q] / row_pivot;
    for (std::size_t v = 0; v < total; ++v) {
      if (status_[v] != kBasic && alpha_row[v] != 0.0) d_[v] -= theta_d * alpha_row[v];
    }
    d_[q] = 0.0;
    d_[leaving] = -theta_d;

    status_[leaving] = below ? kAtLower : kAtUpper;
    status_[q] = kBasic;
    head_[r] = q;
    factor_->Update(r, alpha_col);
    ++iterations_;
    stable_checks = 0;

    if (std::abs(theta_d) <= dtol) {
      if (++degenerate > options_.degenerate_limit && !bland) {
        bland = true;
        used_bland_ = true;
      }
    } else {
      degenerate = 0;
    }
  }
}

double DualSimplex::objective() const {
  double total = 0.0;
  for (std::size_t j = 0; j < n_; ++j) total += cost_[j] * x_[j];
  return total;
}

std::vector<double> DualSimplex::primal() const {
  return std::vector<double>(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
}

std::vector<double> DualSimplex::reduced_costs() const {
  return std::vector<double>(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(n_));
}

}  // namespace wamsplan
