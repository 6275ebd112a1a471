// Copyright 2026 The commgame Authors
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

#include "commgame/lp.hpp"

#include <sstream>
#include <stdexcept>

namespace commgame {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("lp: " + what);
}

// Equality-form working problem: rows A x = b with x >= 0, where x collects
// the original variables followed by slack/surplus columns. Artificial
// columns live past n_real and never appear in certificates.
struct Tableau {
  std::size_t n_real = 0;                 // original + slack/surplus columns
  std::vector<std::vector<Rational>> a;   // m x n_total
  std::vector<Rational> b;                // m
  std::vector<std::size_t> basis;         // m basic column indices
  std::vector<int> row_of_constraint;     // -1 when dropped as redundant
  std::vector<bool> flipped;              // rhs sign normalization per constraint

  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= factor * a[row][c];
      b[r] -= factor * b[row];
    }
    basis[row] = col;
  }
};

// Bland's rule: entering column is the lowest improving index; the leaving
// row is the minimum ratio, ties resolved toward the lowest basic variable
// index. Returns false when no entering column exists (optimal).
enum class StepResult { optimal_reached, stepped, unbounded };

StepResult simplex_step(Tableau& t, const std::vector<Rational>& cost,
                        std::size_t max_enter_col) {
  // Reduced costs via the basic cost multipliers.
  std::vector<Rational> y(t.a.size(), 0);
  // cost of basic variable i is cost[basis[i]] after elimination; compute
  // reduced cost directly per column: c_j - sum_i cost[basis[i]] * a[i][j].
  std::size_t enter = max_enter_col;
  for (std::size_t j = 0; j < max_enter_col; ++j) {
    Rational reduced = cost[j];
    for (std::size_t i = 0; i < t.a.size(); ++i) {
      if (cost[t.basis[i]] == 0 || t.a[i][j] == 0) continue;
      reduced -= cost[t.basis[i]] * t.a[i][j];
    }
    bool basic = false;
    for (const std::size_t bcol : t.basis) basic = basic || bcol == j;
    if (!basic && reduced > 0) {
      enter = j;
      break;
    }
  }
  if (enter == max_enter_col) return StepResult::optimal_reached;

  std::size_t leave_row = t.a.size();
  Rational best_ratio;
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    if (t.a[i][enter] <= 0) continue;
    const Rational ratio = t.b[i] / t.a[i][enter];
    if (leave_row == t.a.size() || ratio < best_ratio ||
        (ratio == best_ratio && t.basis[i] < t.basis[leave_row])) {
      leave_row = i;
      best_ratio = ratio;
    }
  }
  if (leave_row == t.a.size()) return StepResult::unbounded;
  t.pivot(leave_row, enter);
  return StepResult::stepped;
}

LpStatus run_simplex(Tableau& t, const std::vector<Rational>& cost,
                     std::size_t max_enter_col) {
  while (true) {
    switch (simplex_step(t, cost, max_enter_col)) {
      case StepResult::optimal_reached: return LpStatus::optimal;
      case StepResult::unbounded: return LpStatus::unbounded;
      case StepResult::stepped: break;
    }
  }
}

// Solve y^T B = c_B by Gaussian elimination on the basis columns of the
// equality-form matrix; used for an independent duality certificate.
std::vector<Rational> dual_from_basis(const std::vector<std::vector<Rational>>& matrix,
                                      const std::vector<Rational>& cost,
                                      const std::vector<std::size_t>& basis) {
  const std::size_t m = matrix.size();
  // Build the transposed system: columns of B become rows: B^T y = c_B.
  std::vector<std::vector<Rational>> sys(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < m; ++r) sys[i][r] = matrix[r][basis[i]];
    sys[i][m] = cost[basis[i]];
  }
  for (std::size_t col = 0, row = 0; col < m && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && sys[piv][col] == 0) ++piv;
    if (piv == m) fail("singular basis while extracting duals");
    std::swap(sys[piv], sys[row]);
    const Rational inv = 1 / sys[row][col];
    for (auto& v : sys[row]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || sys[r][col] == 0) continue;
      const Rational factor = sys[r][col];
      for (std::size_t c = 0; c <= m; ++c) sys[r][c] -= factor * sys[row][c];
    }
    ++row;
  }
  std::vector<Rational> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = sys[i][m];
  return y;
}

}  // namespace

LpSolution solve_max(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  for (const LpConstraint& c : lp.constraints)
    if (c.coeffs.size() != n) fail("constraint width mismatch");

  // Normalize rows to nonnegative rhs and lay out slack/surplus columns.
  const std::size_t m0 = lp.constraints.size();
  std::vector<std::vector<Rational>> rows(m0, std::vector<Rational>(n));
  std::vector<Rational> rhs(m0);
  std::vector<Relation> rel(m0);
  std::vector<bool> flipped(m0, false);
  for (std::size_t i = 0; i < m0; ++i) {
    rows[i] = lp.constraints[i].coeffs;
    rhs[i] = lp.constraints[i].rhs;
    rel[i] = lp.constraints[i].rel;
    if (rhs[i] < 0) {
      flipped[i] = true;
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (rel[i] == Relation::le) rel[i] = Relation::ge;
      else if (rel[i] == Relation::ge) rel[i] = Relation::le;
    }
  }
  std::size_t n_slack = 0;
  for (const Relation r : rel)
    if (r != Relation::eq) ++n_slack;
  const std::size_t n_real = n + n_slack;

  Tableau t;
  t.n_real = n_real;
  t.flipped = flipped;
  t.row_of_constraint.assign(m0, -1);
  std::vector<std::size_t> slack_col(m0, 0);
  {
    std::size_t next = n;
    for (std::size_t i = 0; i < m0; ++i)
      if (rel[i] != Relation::eq) slack_col[i] = next++;
  }
  std::size_t n_art = 0;
  std::vector<std::size_t> art_col(m0, 0);
  for (std::size_t i = 0; i < m0; ++i)
    if (rel[i] != Relation::le) art_col[i] = n_real + n_art++;
  const std::size_t n_total = n_real + n_art;

  t.a.assign(m0, std::vector<Rational>(n_total, 0));
  t.b = rhs;
  t.basis.assign(m0, 0);
  for (std::size_t i = 0; i < m0; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = rows[i][j];
    t.row_of_constraint[i] = static_cast<int>(i);
    switch (rel[i]) {
      case Relation::le:
        t.a[i][slack_col[i]] = 1;
        t.basis[i] = slack_col[i];
        break;
      case Relation::ge:
        t.a[i][slack_col[i]] = -1;
        t.a[i][art_col[i]] = 1;
        t.basis[i] = art_col[i];
        break;
      case Relation::eq:
        t.a[i][art_col[i]] = 1;
        t.basis[i] = art_col[i];
        break;
    }
  }

  LpSolution out;
  if (n_art > 0) {
    // Phase 1: drive the artificial variables to zero.
    std::vector<Rational> phase1(n_total, 0);
    for (std::size_t j = n_real; j < n_total; ++j) phase1[j] = -1;
    run_simplex(t, phase1, n_total);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < t.a.size(); ++i)
      if (t.basis[i] >= n_real) infeasibility += t.b[i];
    if (infeasibility != 0) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Pivot remaining zero-valued artificials out; drop redundant rows.
    for (std::size_t i = t.a.size(); i-- > 0;) {
      if (t.basis[i] < n_real) continue;
      std::size_t col = n_real;
      for (std::size_t j = 0; j < n_real; ++j)
        if (t.a[i][j] != 0) {
          col = j;
          break;
        }
      if (col < n_real) {
        t.pivot(i, col);
      } else {
        for (auto& rc : t.row_of_constraint)
          if (rc > static_cast<int>(i)) --rc;
          else if (rc == static_cast<int>(i)) rc = -1;
        t.a.erase(t.a.begin() + i);
        t.b.erase(t.b.begin() + i);
        t.basis.erase(t.basis.begin() + i);
      }
    }
    for (auto& row : t.a) row.resize(n_real);
  }

  std::vector<Rational> cost(n_real, 0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  if (run_simplex(t, cost, n_real) == LpStatus::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;
  out.point.assign(n, 0);
  for (std::size_t i = 0; i < t.a.size(); ++i)
    if (t.basis[i] < n) out.point[t.basis[i]] = t.b[i];
  out.value = 0;
  for (std::size_t j = 0; j < n; ++j) out.value += lp.objective[j] * out.point[j];
  out.basis = t.basis;

  // Exact feasibility re-check against the caller's constraints.
  for (std::size_t i = 0; i < m0; ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.constraints[i].coeffs[j] * out.point[j];
    const bool ok = lp.constraints[i].rel == Relation::le ? lhs <= lp.constraints[i].rhs
                    : lp.constraints[i].rel == Relation::ge
                        ? lhs >= lp.constraints[i].rhs
                        : lhs == lp.constraints[i].rhs;
    if (!ok) fail("optimal point violates a constraint");
  }
  for (const Rational& x : out.point)
    if (x < 0) fail("optimal point violates nonnegativity");

  // Strong duality certificate: y solves y^T B = c_B; check dual
  // feasibility on every column and value equality exactly.
  {
    // Rebuild the (possibly row-reduced) equality-form matrix.
    std::vector<std::vector<Rational>> matrix(t.a.size(),
                                              std::vector<Rational>(n_real, 0));
    std::vector<Rational> beq(t.a.size());
    for (std::size_t i0 = 0; i0 < m0; ++i0) {
      const int r = t.row_of_constraint[i0];
      if (r < 0) continue;
      for (std::size_t j = 0; j < n; ++j) matrix[r][j] = rows[i0][j];
      if (rel[i0] != Relation::eq)
        matrix[r][slack_col[i0]] = rel[i0] == Relation::le ? 1 : -1;
      beq[r] = rhs[i0];
    }
    const std::vector<Rational> y = dual_from_basis(matrix, cost, t.basis);
    Rational dual_value = 0;
    for (std::size_t i = 0; i < y.size(); ++i) dual_value += y[i] * beq[i];
    if (dual_value != out.value) fail("strong duality check failed");
    for (std::size_t j = 0; j < n_real; ++j) {
      Rational lhs = 0;
      for (std::size_t i = 0; i < y.size(); ++i) lhs += y[i] * matrix[i][j];
      if (lhs < cost[j]) fail("dual feasibility check failed");
    }
    out.dual.assign(m0, 0);
    for (std::size_t i0 = 0; i0 < m0; ++i0) {
      const int r = t.row_of_constraint[i0];
      if (r < 0) continue;
      out.dual[i0] = flipped[i0] ? -y[r] : y[r];
    }
  }
  return out;
}

LpSolution lex_solve(const std::vector<Rational>& primary,
                     const std::vector<Rational>& secondary,
                     const std::vector<LpConstraint>& constraints) {
  LinearProgram stage1{primary, constraints};
  const LpSolution first = solve_max(stage1);
  if (first.status != LpStatus::optimal) return first;

  LinearProgram stage2{secondary, constraints};
  stage2.constraints.push_back(LpConstraint{primary, Relation::eq, first.value});
  LpSolution second = solve_max(stage2);
  if (second.status != LpStatus::optimal)
    fail("lexicographic stage 2 lost feasibility");
  return second;
}

std::string lp_debug_dump(const LinearProgram& lp) {
  std::ostringstream os;
  os << "max ";
  for (std::size_t j = 0; j < lp.objective.size(); ++j)
    os << (j ? " + " : "") << to_string(lp.objective[j]) << "*x" << j;
  os << "\n";
  for (const LpConstraint& c : lp.constraints) {
    os << "  ";
    for (std::size_t j = 0; j < c.coeffs.size(); ++j)
      os << (j ? " + " : "") << to_string(c.coeffs[j]) << "*x" << j;
    os << (c.rel == Relation::le ? " <= " : c.rel == Relation::ge ? " >= " : " == ")
       << to_string(c.rhs) << "\n";
  }
  return os.str();
}

}  // namespace commgame
