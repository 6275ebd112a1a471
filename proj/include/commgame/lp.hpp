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

#ifndef COMMGAME_LP_HPP_
#define COMMGAME_LP_HPP_

#include <string>
#include <vector>

#include "commgame/rational.hpp"

namespace commgame {

enum class Relation { le, eq, ge };

struct LpConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::le;
  Rational rhs;
};

// Maximize objective . x subject to the constraints, x >= 0.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<LpConstraint> constraints;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> point;        // original variables
  std::vector<std::size_t> basis;     // final basic column indices
  std::vector<Rational> dual;         // one multiplier per constraint
};

// Dense tableau simplex over rationals with Bland's anti-cycling rule.
// Optimal solutions carry an independently recomputed dual vector; strong
// duality and primal feasibility are checked exactly before returning.
LpSolution solve_max(const LinearProgram& lp);

// Two-stage lexicographic solve: maximize `primary`, then maximize
// `secondary` subject to the primary objective pinned at its optimum.
LpSolution lex_solve(const std::vector<Rational>& primary,
                     const std::vector<Rational>& secondary,
                     const std::vector<LpConstraint>& constraints);

// Aligned-text dump of a program, for debugging.
std::string lp_debug_dump(const LinearProgram& lp);

}  // namespace commgame

#endif  // COMMGAME_LP_HPP_
