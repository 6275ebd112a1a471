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

#ifndef COMMGAME_HULL_HPP_
#define COMMGAME_HULL_HPP_

#include <span>
#include <vector>

#include "commgame/rational.hpp"

namespace commgame {

// One candidate point for the mover's refinement: position x along the moved
// axis, mover value f, other-player value g.
struct HullVertex {
  Rational x;
  Rational f;
  Rational g;
};

struct SupportPoint {
  Rational x;
  Rational weight;
};

struct HullResult {
  Rational value;     // best mover payoff over Bayes-plausible refinements
  Rational co_value;  // other player's payoff under the lexicographic best
  std::vector<SupportPoint> support;  // one point (stay put) or two endpoints
};

// Vertex indices of the strict upper envelope of f alone; interior collinear
// vertices are dropped. Input sorted by x, distinct coordinates.
std::vector<std::size_t> primary_hull_chain(std::span<const HullVertex> pts);

// Node positions of the lexicographic upper concave envelope: the primary
// envelope of f, with every degenerate face subdivided at the vertices of
// the secondary envelope of g over the face's collinear vertex set. Input
// must be sorted by x with distinct coordinates. Consecutive nodes delimit
// the refinement faces; f and g on a face are the vertex chords.
std::vector<std::size_t> lex_hull_nodes(std::span<const HullVertex> pts);

// Value, co-value and support of the lexicographic hull at one query point.
// Vertices may arrive unsorted; their x must be distinct, cover {0,1}, and
// the query must lie in [0,1]. Throws std::invalid_argument otherwise.
HullResult lex_hull_at(std::span<const HullVertex> pts, const Rational& x);

// As above but assumes `pts` sorted/validated and reuses precomputed nodes.
HullResult hull_at_nodes(std::span<const HullVertex> pts,
                         std::span<const std::size_t> nodes, const Rational& x);

}  // namespace commgame

#endif  // COMMGAME_HULL_HPP_
