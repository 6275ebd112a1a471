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

#ifndef COMMGAME_TESTS_TEST_UTIL_HPP_
#define COMMGAME_TESTS_TEST_UTIL_HPP_

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "commgame/games.hpp"
#include "commgame/hull.hpp"
#include "commgame/lp.hpp"
#include "commgame/surface.hpp"

namespace commgame::testutil {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long long num_lo, long long num_hi,
                                long long den_hi = 12) {
  std::uniform_int_distribution<long long> num(num_lo, num_hi);
  std::uniform_int_distribution<long long> den(1, den_hi);
  return rat(num(rng), den(rng));
}

// A rational strictly inside (0,1) with denominator at most den_hi.
inline Rational random_interior(Rng& rng, long long den_hi = 12) {
  std::uniform_int_distribution<long long> den(2, den_hi);
  const long long d = den(rng);
  std::uniform_int_distribution<long long> num(1, d - 1);
  return rat(num(rng), d);
}

inline std::vector<Rational> random_cuts(Rng& rng, int max_interior) {
  std::set<Rational> interior;
  std::uniform_int_distribution<int> count(0, max_interior);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) interior.insert(random_interior(rng));
  std::vector<Rational> cuts{0};
  cuts.insert(cuts.end(), interior.begin(), interior.end());
  cuts.push_back(1);
  return cuts;
}

// Continuous surface interpolating random vertex values: each cell is the
// unique bilinear through its four corners, so adjacent cells agree on
// shared edges and every cut function equals both one-sided limits.
inline Surface random_continuous_surface(Rng& rng, int max_interior = 2) {
  Surface s;
  s.grid.p_cuts = random_cuts(rng, max_interior);
  s.grid.q_cuts = random_cuts(rng, max_interior);
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  s.vertex_vals.assign(np, std::vector<Rational>(nq));
  for (auto& row : s.vertex_vals)
    for (auto& v : row) v = random_rational(rng, -6, 6);

  s.cells.assign(np - 1, std::vector<Bilinear>(nq - 1));
  for (std::size_t i = 0; i + 1 < np; ++i) {
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      const Rational& x0 = s.grid.p_cuts[i];
      const Rational& x1 = s.grid.p_cuts[i + 1];
      const Rational& y0 = s.grid.q_cuts[j];
      const Rational& y1 = s.grid.q_cuts[j + 1];
      const Rational& v00 = s.vertex_vals[i][j];
      const Rational& v01 = s.vertex_vals[i][j + 1];
      const Rational& v10 = s.vertex_vals[i + 1][j];
      const Rational& v11 = s.vertex_vals[i + 1][j + 1];
      const Rational dx = x1 - x0, dy = y1 - y0;
      // Solve for a + b p + c q + d p q through the four corners.
      const Rational d = (v00 - v01 - v10 + v11) / (dx * dy);
      const Rational b = (v10 - v00) / dx - d * y0;
      const Rational c = (v01 - v00) / dy - d * x0;
      const Rational a = v00 - b * x0 - c * y0 - d * x0 * y0;
      s.cells[i][j] = Bilinear{a, b, c, d};
    }
  }
  s.p_cut_fns.assign(np, std::vector<LinearFn>(nq - 1));
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j + 1 < nq; ++j)
      s.p_cut_fns[i][j] =
          s.cells[i == np - 1 ? i - 1 : i][j].restrict_p(s.grid.p_cuts[i]);
  s.q_cut_fns.assign(np - 1, std::vector<LinearFn>(nq));
  for (std::size_t i = 0; i + 1 < np; ++i)
    for (std::size_t j = 0; j < nq; ++j)
      s.q_cut_fns[i][j] =
          s.cells[i][j == nq - 1 ? j - 1 : j].restrict_q(s.grid.q_cuts[j]);
  return s;
}

// Adds step(q) to every point with p > p_cuts[cut] (or p < it when
// lift_right is false); the cut line itself takes the lifted side, which is
// the pointwise maximum. step must be nonnegative on [0,1].
inline void lift_across_p_cut(Surface& s, std::size_t cut, bool lift_right,
                              const LinearFn& step) {
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  auto strip_lifted = [&](std::size_t i) {
    return lift_right ? i >= cut : i < cut;
  };
  auto line_lifted = [&](std::size_t i) {
    return lift_right ? i >= cut : i <= cut;
  };
  for (std::size_t i = 0; i + 1 < np; ++i) {
    if (!strip_lifted(i)) continue;
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      s.cells[i][j].a += step.a;
      s.cells[i][j].c += step.b;
    }
    for (std::size_t j = 0; j < nq; ++j)
      s.q_cut_fns[i][j].a += step.at(s.grid.q_cuts[j]);
  }
  for (std::size_t i = 0; i < np; ++i) {
    if (!line_lifted(i)) continue;
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      s.p_cut_fns[i][j].a += step.a;
      s.p_cut_fns[i][j].b += step.b;
    }
    for (std::size_t j = 0; j < nq; ++j)
      s.vertex_vals[i][j] += step.at(s.grid.q_cuts[j]);
  }
}

inline LinearFn random_nonneg_step(Rng& rng) {
  std::uniform_int_distribution<long long> num(0, 4);
  const Rational e0 = rat(num(rng), 2);
  const Rational e1 = rat(num(rng), 2);
  return LinearFn{e0, e1 - e0};
}

// Piecewise-bilinear surface with genuine one-sided jumps at random cut
// lines. Satisfies the full invariant set (validate + one-sided values).
inline Surface random_usc_surface(Rng& rng, int max_interior = 2) {
  Surface s = random_continuous_surface(rng, max_interior);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t i = 1; i + 1 < s.grid.p_cuts.size(); ++i)
    if (flip(rng)) lift_across_p_cut(s, i, flip(rng), random_nonneg_step(rng));
  Surface t = transposed(s);
  for (std::size_t j = 1; j + 1 < t.grid.p_cuts.size(); ++j)
    if (flip(rng)) lift_across_p_cut(t, j, flip(rng), random_nonneg_step(rng));
  return transposed(t);
}

// The spy game: types are the country each player serves; Sally cooperates
// with or exposes Bob. Friends play a coordination game, enemies a zero-sum
// one.
inline MatrixGame make_spy() {
  MatrixGame g;
  g.actions = {"C", "E"};
  g.u_S = {{{{{rat(1), rat(-2)}}, {{rat(-2), rat(1)}}}},
           {{{{rat(-1), rat(2)}}, {{rat(2), rat(-1)}}}}};
  g.u_B = {{{{{rat(1), rat(2)}}, {{rat(2), rat(1)}}}},
           {{{{rat(-1), rat(-2)}}, {{rat(-2), rat(-1)}}}}};
  return g;
}

// Brute-force convexity oracle along one axis: chord inequality over all
// triples of an (n+1)-point grid for every fixed grid value of the other
// coordinate. A dense necessary check, independent of the exact test.
inline bool grid_convex_along(const Surface& s, Axis axis, int n) {
  for (int j = 0; j <= n; ++j) {
    const Rational fixed(j, n);
    std::vector<Rational> vals(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      const Rational x(i, n);
      vals[static_cast<std::size_t>(i)] =
          axis == Axis::p ? s.eval(x, fixed) : s.eval(fixed, x);
    }
    for (int a = 0; a <= n; ++a)
      for (int c = a + 2; c <= n; ++c)
        for (int b = a + 1; b < c; ++b) {
          const Rational w(c - b, c - a);
          if (vals[b] > w * vals[a] + (1 - w) * vals[c]) return false;
        }
  }
  return true;
}

// Independent hull oracle: the optimum of a two-constraint LP sits on at
// most two support points, so enumerating singletons and pairs is exhaustive.
// Among refinements maximizing f, the best g is again attained on a pair.
inline std::pair<Rational, Rational> oracle_lex_hull(
    const std::vector<HullVertex>& pts, const Rational& x) {
  bool have = false;
  Rational best_f, best_g;
  auto consider = [&](const Rational& f, const Rational& g) {
    if (!have || f > best_f || (f == best_f && g > best_g)) {
      best_f = f;
      best_g = g;
      have = true;
    }
  };
  for (const HullVertex& v : pts)
    if (v.x == x) consider(v.f, v.g);
  for (const HullVertex& a : pts)
    for (const HullVertex& b : pts) {
      if (!(a.x < x && x < b.x)) continue;
      const Rational w = (b.x - x) / (b.x - a.x);
      consider(w * a.f + (1 - w) * b.f, w * a.g + (1 - w) * b.g);
    }
  return {best_f, best_g};
}

// Random feasible bounded program built around a known feasible point.
inline LinearProgram random_bounded_lp(Rng& rng) {
  std::uniform_int_distribution<int> ncons(1, 3);
  const std::size_t n = 4;
  const std::size_t m = static_cast<std::size_t>(ncons(rng));
  std::vector<Rational> x0(n);
  for (auto& v : x0) v = random_rational(rng, 0, 4, 3);

  LinearProgram lp;
  lp.objective.resize(n);
  for (auto& v : lp.objective) v = random_rational(rng, -5, 5, 3);
  std::uniform_int_distribution<int> rel_pick(0, 2);
  for (std::size_t i = 0; i < m; ++i) {
    LpConstraint c;
    c.coeffs.resize(n);
    for (auto& v : c.coeffs) v = random_rational(rng, -3, 3, 2);
    Rational at_x0 = 0;
    for (std::size_t j = 0; j < n; ++j) at_x0 += c.coeffs[j] * x0[j];
    const int rel = rel_pick(rng);
    if (rel == 0) {
      c.rel = Relation::le;
      c.rhs = at_x0 + random_rational(rng, 0, 3, 2);
    } else if (rel == 1) {
      c.rel = Relation::ge;
      c.rhs = at_x0 - random_rational(rng, 0, 3, 2);
    } else {
      c.rel = Relation::eq;
      c.rhs = at_x0;
    }
    lp.constraints.push_back(std::move(c));
  }
  LpConstraint cap;  // keeps the program bounded and the oracle exhaustive
  cap.coeffs.assign(n, 1);
  cap.rel = Relation::le;
  Rational sum = 0;
  for (const auto& v : x0) sum += v;
  cap.rhs = sum + 10;
  lp.constraints.push_back(std::move(cap));
  return lp;
}

// Exhaustive basic-solution oracle on the equality form. Assumes a bounded
// feasible program.
inline std::optional<Rational> enumerate_lp_optimum(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.constraints.size();
  std::size_t n_total = n;
  for (const LpConstraint& c : lp.constraints)
    if (c.rel != Relation::eq) ++n_total;

  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n_total, 0));
  std::vector<Rational> b(m);
  {
    std::size_t next = n;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = lp.constraints[i].coeffs[j];
      b[i] = lp.constraints[i].rhs;
      if (lp.constraints[i].rel == Relation::le) a[i][next++] = 1;
      if (lp.constraints[i].rel == Relation::ge) a[i][next++] = -1;
    }
  }

  std::optional<Rational> best;
  if (m == 0) return Rational(0);
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  auto advance = [&]() {
    std::size_t k = m;
    while (k-- > 0) {
      if (idx[k] + (m - k) < n_total) {
        ++idx[k];
        for (std::size_t j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<std::vector<Rational>> sys(m, std::vector<Rational>(m + 1));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t k = 0; k < m; ++k) sys[r][k] = a[r][idx[k]];
      sys[r][m] = b[r];
    }
    bool singular = false;
    for (std::size_t col = 0; col < m && !singular; ++col) {
      std::size_t piv = col;
      while (piv < m && sys[piv][col] == 0) ++piv;
      if (piv == m) {
        singular = true;
        break;
      }
      std::swap(sys[piv], sys[col]);
      const Rational inv = 1 / sys[col][col];
      for (auto& v : sys[col]) v *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || sys[r][col] == 0) continue;
        const Rational factor = sys[r][col];
        for (std::size_t c = 0; c <= m; ++c) sys[r][c] -= factor * sys[col][c];
      }
    }
    if (singular) continue;
    bool feasible = true;
    std::vector<Rational> x(n_total, 0);
    for (std::size_t k = 0; k < m; ++k) {
      if (sys[k][m] < 0) feasible = false;
      x[idx[k]] = sys[k][m];
    }
    if (!feasible) continue;
    Rational value = 0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x[j];
    if (!best || value > *best) best = value;
  } while (advance());
  return best;
}

}  // namespace commgame::testutil

#endif  // COMMGAME_TESTS_TEST_UTIL_HPP_
