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

#ifndef COMMGAME_SURFACE_HPP_
#define COMMGAME_SURFACE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "commgame/rational.hpp"

namespace commgame {

enum class Axis { p, q };

inline Axis other_axis(Axis a) { return a == Axis::p ? Axis::q : Axis::p; }

// The function (p, q) -> a + b*p + c*q + d*p*q.
struct Bilinear {
  Rational a, b, c, d;

  Rational at(const Rational& p, const Rational& q) const {
    return a + b * p + c * q + d * p * q;
  }
  // Restriction to a fixed p, as a function of q.
  struct LinearFn restrict_p(const Rational& p) const;
  // Restriction to a fixed q, as a function of p.
  struct LinearFn restrict_q(const Rational& q) const;

  bool operator==(const Bilinear&) const = default;
};

// The one-variable function t -> a + b*t.
struct LinearFn {
  Rational a, b;

  Rational at(const Rational& t) const { return a + b * t; }
  bool operator==(const LinearFn&) const = default;
};

// Cut positions of the belief square. Both axes contain 0 and 1 and are
// strictly increasing.
struct Grid {
  std::vector<Rational> p_cuts;
  std::vector<Rational> q_cuts;

  const std::vector<Rational>& cuts(Axis a) const {
    return a == Axis::p ? p_cuts : q_cuts;
  }
  bool operator==(const Grid&) const = default;
};

// Piecewise-bilinear payoff function over [0,1]^2. Open cells carry bilinear
// functions; cut segments and vertices own explicit values, since payoffs are
// discontinuous at action-switch thresholds and the value ON a threshold is
// the tie-broken one, not either limit.
//
// Table shapes for np = |p_cuts|, nq = |q_cuts|:
//   cells[i][j]       (np-1) x (nq-1)   open cell (p-strip i, q-strip j)
//   p_cut_fns[i][j]   np x (nq-1)       value on p-cut i inside q-strip j, fn of q
//   q_cut_fns[i][j]   (np-1) x nq       value on q-cut j inside p-strip i, fn of p
//   vertex_vals[i][j] np x nq           value at (p_cuts[i], q_cuts[j])
//
// Boundary cuts (p or q equal to 0 or 1) get cut functions too, so eval is
// total without referencing any cell limit.
struct Surface {
  Grid grid;
  std::vector<std::vector<Bilinear>> cells;
  std::vector<std::vector<LinearFn>> p_cut_fns;
  std::vector<std::vector<LinearFn>> q_cut_fns;
  std::vector<std::vector<Rational>> vertex_vals;

  Rational eval(const Rational& p, const Rational& q) const;

  // A constant surface on the unit grid.
  static Surface constant(const Rational& value);
  // A continuous surface given by one bilinear function on the unit grid.
  static Surface from_bilinear(const Bilinear& fn);

  bool operator==(const Surface&) const = default;
};

// Where a coordinate sits relative to a cut vector.
struct GridPos {
  bool on_cut;
  std::size_t index;  // cut index if on_cut, else strip index
};
GridPos locate(const std::vector<Rational>& cuts, const Rational& x);

// Restriction of a surface to a line. `x` runs along `varying`; the other
// coordinate is fixed. Breakpoints sit at every grid cut of the varying axis
// and carry the on-line value; segments are the open-interval functions, so
// one-sided limits are available exactly.
struct Slice {
  std::vector<Rational> xs;        // cut positions, size m
  std::vector<Rational> values;    // value AT each cut, size m
  std::vector<LinearFn> segments;  // open-interval functions, size m-1
};
Slice slice(const Surface& s, Axis varying, const Rational& fixed_value);

// Same data, reported per the restrict contract: breakpoints with the exact
// point value plus one-sided limits and segment slopes.
struct RestrictionPoint {
  Rational x;
  Rational value;
  Rational left_limit;   // equals value at x = first cut
  Rational right_limit;  // equals value at x = last cut
};
std::vector<RestrictionPoint> restrict_surface(const Surface& s, Axis fixed_axis,
                                               const Rational& fixed_value);

// Throws std::runtime_error if structural invariants fail: grid shape, table
// shapes, or upper semicontinuity (every cut value must dominate the adjacent
// open-cell limits; vertices dominate adjacent cut-function limits).
void validate(const Surface& s);

// True iff every cut function coincides identically with at least one
// adjacent cell restriction, and every vertex with at least one adjacent cut
// value (no invented third values).
bool boundary_values_one_sided(const Surface& s);

// Rebuild on a superset grid. Eval is unchanged everywhere.
Surface refined(const Surface& s, const Grid& target);

// Both surfaces re-expressed on the union of their grids.
std::pair<Surface, Surface> common_refinement(const Surface& a, const Surface& b);

// Exact function equality (common refinement, then table comparison).
bool equal(const Surface& a, const Surface& b);

// Remove cuts that carry no information (identical cells on both sides and
// boundary values equal to the shared limit).
Surface pruned(const Surface& s);

// Swap the roles of p and q.
Surface transposed(const Surface& s);

// Chord test along one axis for every fixed value of the other coordinate,
// using boundary values at cuts. Slopes are linear in the transverse
// coordinate, so checking at strip endpoints is exact.
bool is_convex_along(const Surface& s, Axis axis);
bool is_concave_along(const Surface& s, Axis axis);

// JSON serialization; rationals as canonical strings. Lossless round-trip.
std::string surface_to_json(const Surface& s);
Surface surface_from_json(const std::string& text);

}  // namespace commgame

#endif  // COMMGAME_SURFACE_HPP_
