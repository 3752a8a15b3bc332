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

#ifndef WAMSPLAN_DUAL_SIMPLEX_HPP_
#define WAMSPLAN_DUAL_SIMPLEX_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace wamsplan {

struct SparseVector {
  std::vector<int> index;
  std::vector<double> value;
};

// Bounded dual simplex for
//   min c'x  s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper
// where every bound is finite. Each row r carries a logical variable
// s_r = A_r x, so the basis is always square and every variable is boxed;
// any basis can be made dual feasible by moving nonbasic variables to the
// bound matching the sign of their reduced cost.
class DualSimplex {
 public:
  struct Options {
    double primal_tolerance = 1e-9;
    double dual_tolerance = 1e-9;
    double pivot_tolerance = 1e-9;
    int refactor_interval = 100;
    // Degenerate iterations tolerated before falling back to Bland's rule.
    int degenerate_limit = 200;
    std::size_t iteration_limit = 0;  // 0 picks a limit from the problem size
  };

  enum class Status { kOptimal, kInfeasible, kIterationLimit };

  enum VarStatus : std::uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

  // Variable statuses for structurals followed by logicals.
  using Basis = std::vector<std::uint8_t>;

  DualSimplex(std::vector<SparseVector> columns, std::size_t num_rows, std::vector<double> cost,
              std::vector<double> col_lower, std::vector<double> col_upper,
              std::vector<double> row_lower, std::vector<double> row_upper, Options options);
  DualSimplex(std::vector<SparseVector> columns, std::size_t num_rows, std::vector<double> cost,
              std::vector<double> col_lower, std::vector<double> col_upper,
              std::vector<double> row_lower, std::vector<double> row_upper);
  ~DualSimplex();
  DualSimplex(const DualSimplex&) = delete;
  DualSimplex& operator=(const DualSimplex&) = delete;

  std::size_t num_rows() const { return m_; }
  std::size_t num_cols() const { return n_; }

  void SetColumnBounds(std::size_t j, double lower, double upper);
  double column_lower(std::size_t j) const { return lower_[j]; }
  double column_upper(std::size_t j) const { return upper_[j]; }

  Status Solve();

  double objective() const;
  // Structural values.
  std::vector<double> primal() const;
  // Structural reduced costs at the last solve.
  std::vector<double> reduced_costs() const;
  std::size_t iterations() const { return iterations_; }
  bool used_bland() const { return used_bland_; }

  Basis GetBasis() const { return status_; }
  void SetBasis(const Basis& basis);

 private:
  class Factor;

  void Refactor();
  void ComputePrimal();
  void ComputeDuals();
  bool MakeDualFeasible();
  void ResetToSlackBasis();
  void ColumnInto(std::size_t j, double scale, std::vector<double>& dense) const;
  double Dot(const std::vector<double>& rho, std::size_t j) const;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  Options options_;
  std::vector<SparseVector> columns_;
  // Row-wise copy of A for pivot-row computation.
  std::vector<SparseVector> rows_;
  std::vector<double> cost_;
  // Bounds for all n + m variables.
  std::vector<double> lower_;
  std::vector<double> upper_;

  std::vector<std::uint8_t> status_;
  std::vector<std::size_t> head_;
  std::vector<double> x_;
  std::vector<double> d_;
  std::unique_ptr<Factor> factor_;
  bool fresh_ = false;
  bool bounds_dirty_ = false;
  std::size_t iterations_ = 0;
  bool used_bland_ = false;
};

}  // namespace wamsplan

#endif  // WAMSPLAN_DUAL_SIMPLEX_HPP_
