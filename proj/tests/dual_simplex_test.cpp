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
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace wamsplan {
namespace {

constexpr double kFree = 1e6;

// Dense helper: rows of A with lower and upper bounds.
struct Lp {
  std::vector<std::vector<double>> a;
  std::vector<double> row_lower, row_upper, cost, col_lower, col_upper;

  DualSimplex Make() const {
    const std::size_t n = cost.size();
    std::vector<SparseVector> cols(n);
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        if (a[r][j] != 0.0) {
          cols[j].index.push_back(static_cast<int>(r));
          cols[j].value.push_back(a[r][j]);
        }
      }
    }
    return DualSimplex(cols, a.size(), cost, col_lower, col_upper, row_lower, row_upper);
  }

  bool Feasible(const std::vector<double>& x, double tol) const {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < col_lower[j] - tol || x[j] > col_upper[j] + tol) return false;
    }
    for (std::size_t r = 0; r < a.size(); ++r) {
      double act = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) act += a[r][j] * x[j];
      if (act < row_lower[r] - tol || act > row_upper[r] + tol) return false;
    }
    return true;
  }

  // Optimum of a two-variable LP by enumerating vertices of the arrangement.
  double VertexOptimum() const {
    std::vector<std::array<double, 3>> lines;  // a x + b y = c
    for (std::size_t r = 0; r < a.size(); ++r) {
      lines.push_back({a[r][0], a[r][1], row_lower[r]});
      lines.push_back({a[r][0], a[r][1], row_upper[r]});
    }
    for (int j = 0; j < 2; ++j) {
      lines.push_back({j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, col_lower[j]});
      lines.push_back({j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, col_upper[j]});
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < lines.size(); ++p) {
      for (std::size_t q = p + 1; q < lines.size(); ++q) {
        const auto& l1 = lines[p];
        const auto& l2 = lines[q];
        const double det = l1[0] * l2[1] - l1[1] * l2[0];
        if (std::abs(det) < 1e-12) continue;
        const std::vector<double> x{(l1[2] * l2[1] - l1[1] * l2[2]) / det,
                                    (l1[0] * l2[2] - l1[2] * l2[0]) / det};
        if (Feasible(x, 1e-9)) best = std::min(best, cost[0] * x[0] + cost[1] * x[1]);
      }
    }
    return best;
  }
};

TEST(DualSimplex, SmallKnownOptimum) {
  // min -x - 2y  s.t.  x + y <= 4,  x + 3y <= 6,  0 <= x, y <= 10.
  Lp lp{{{1, 1}, {1, 3}}, {-kFree, -kFree}, {4, 6}, {-1, -2}, {0, 0}, {10, 10}};
  DualSimplex s = lp.Make();
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  EXPECT_NEAR(s.objective(), -5.0, 1e-9);
  const std::vector<double> x = s.primal();
  EXPECT_NEAR(x[0], 3.0, 1e-9);
  EXPECT_NEAR(x[1], 1.0, 1e-9);
}

TEST(DualSimplex, DetectsInfeasibility) {
  Lp lp{{{1, 1}}, {5}, {kFree}, {1, 1}, {0, 0}, {2, 2}};
  DualSimplex s = lp.Make();
  EXPECT_EQ(s.Solve(), DualSimplex::Status::kInfeasible);
}

TEST(DualSimplex, EqualityRow) {
  Lp lp{{{1, 2}}, {3}, {3}, {1, 1}, {0, 0}, {5, 5}};
  DualSimplex s = lp.Make();
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  EXPECT_NEAR(s.objective(), 1.5, 1e-9);
}

TEST(DualSimplex, ReducedCostsAgreeWithBounds) {
  Lp lp{{{1, 1}, {1, 3}}, {-kFree, -kFree}, {4, 6}, {-1, -2}, {0, 0}, {10, 10}};
  DualSimplex s = lp.Make();
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  const std::vector<double> d = s.reduced_costs();
  const std::vector<double> x = s.primal();
  ASSERT_EQ(d.size(), 2U);
  for (std::size_t j = 0; j < 2; ++j) {
    if (x[j] <= lp.col_lower[j] + 1e-9) EXPECT_GE(d[j], -1e-9);
    else if (x[j] >= lp.col_upper[j] - 1e-9) EXPECT_LE(d[j], 1e-9);
    else EXPECT_NEAR(d[j], 0.0, 1e-9);
  }
}

TEST(DualSimplex, RandomTwoVariableLpsMatchVertexEnumeration) {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> rhs(-3.0, 8.0);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Lp lp;
    const int rows = 1 + trial % 4;
    for (int r = 0; r < rows; ++r) {
      lp.a.push_back({coef(rng), coef(rng)});
      const double lo = rhs(rng);
      lp.row_lower.push_back(trial % 3 == 0 ? lo : -kFree);
      lp.row_upper.push_back(lo + 4.0);
    }
    lp.cost = {coef(rng), coef(rng)};
    lp.col_lower = {-2.0, 0.0};
    lp.col_upper = {3.0, 4.0};
    DualSimplex s = lp.Make();
    const DualSimplex::Status status = s.Solve();
    const double reference = lp.VertexOptimum();
    if (std::isinf(reference)) {
      EXPECT_EQ(status, DualSimplex::Status::kInfeasible) << trial;
      continue;
    }
    ASSERT_EQ(status, DualSimplex::Status::kOptimal) << trial;
    EXPECT_NEAR(s.objective(), reference, 1e-7 * (1.0 + std::abs(reference))) << trial;
    EXPECT_TRUE(lp.Feasible(s.primal(), 1e-7)) << trial;
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
}

TEST(DualSimplex, WarmStartAfterBoundChange) {
  Lp lp{{{1, 1}, {1, 3}}, {-kFree, -kFree}, {4, 6}, {-1, -2}, {0, 0}, {10, 10}};
  DualSimplex s = lp.Make();
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  const DualSimplex::Basis basis = s.GetBasis();
  s.SetColumnBounds(0, 0.0, 2.0);
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  EXPECT_NEAR(s.objective(), -2.0 - 2.0 * 4.0 / 3.0, 1e-9);
  s.SetColumnBounds(0, 0.0, 10.0);
  s.SetBasis(basis);
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  EXPECT_NEAR(s.objective(), -5.0, 1e-9);
  EXPECT_EQ(s.column_upper(0), 10.0);
}

TEST(DualSimplex, DegenerateAssignmentLp) {
  // A 6x6 assignment LP is highly degenerate; its optimum is integral.
  const int n = 6;
  Lp lp;
  lp.cost.resize(n * n);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(1, 9);
  for (double& v : lp.cost) v = c(rng);
  for (int r = 0; r < 2 * n; ++r) {
    std::vector<double> row(n * n, 0.0);
    for (int k = 0; k < n; ++k) row[r < n ? r * n + k : k * n + (r - n)] = 1.0;
    lp.a.push_back(row);
    lp.row_lower.push_back(1.0);
    lp.row_upper.push_back(1.0);
  }
  lp.col_lower.assign(n * n, 0.0);
  lp.col_upper.assign(n * n, 1.0);
  DualSimplex s = lp.Make();
  ASSERT_EQ(s.Solve(), DualSimplex::Status::kOptimal);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  double best = std::numeric_limits<double>::infinity();
  do {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += lp.cost[i * n + perm[i]];
    best = std::min(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_NEAR(s.objective(), best, 1e-9);
}

}  // namespace
}  // namespace wamsplan
