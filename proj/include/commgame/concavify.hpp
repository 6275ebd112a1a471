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

#ifndef COMMGAME_CONCAVIFY_HPP_
#define COMMGAME_CONCAVIFY_HPP_

#include <string>
#include <vector>

#include "commgame/hull.hpp"
#include "commgame/surface.hpp"

namespace commgame {

// One tile of the mover's refinement rule: beliefs inside the rectangle are
// split along `axis` to the posterior endpoints lo/hi. silent means the
// split changes neither player's payoff anywhere on the tile (the payoff
// functions are already chords there), i.e. the mover may equivalently stay
// quiet.
struct PlanRect {
  Rational p_lo, p_hi;
  Rational q_lo, q_hi;
  Rational lo, hi;
  bool silent = false;

  bool operator==(const PlanRect&) const = default;
};

// Per-round refinement rule: rectangles tile the belief square; each maps to
// a two-point posterior split along the axis.
struct StrategyPartition {
  Axis axis = Axis::p;
  std::vector<PlanRect> rectangles;

  // The rectangle containing a point (ties resolved toward lower tiles).
  const PlanRect& find(const Rational& p, const Rational& q) const;
};

struct ConcavifyResult {
  Surface hulled;  // mover's surface, concave along the axis
  Surface co;      // other player's surface under the lexicographic choice
  StrategyPartition plan;
};

// Parametric upper concave envelope of `mover` along `axis`, with
// lexicographic tie-breaking that co-transforms `other`. At every point the
// outputs equal the pointwise lexicographic hull of the input slice; values
// on cut lines are recomputed on the line itself.
ConcavifyResult concavify(const Surface& mover, const Surface& other, Axis axis);

// Cross-check of the parametric transform against from-scratch pointwise
// hulls on an (n+1) x (n+1) rational grid.
bool verify_against_pointwise(const Surface& mover, const Surface& other,
                              const Surface& hulled, const Surface& co, Axis axis,
                              int grid_n);

std::string partition_to_json(const StrategyPartition& plan);
StrategyPartition partition_from_json(const std::string& text);

}  // namespace commgame

#endif  // COMMGAME_CONCAVIFY_HPP_
