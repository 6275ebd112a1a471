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

#include "commgame/hull.hpp"

#include <algorithm>
#include <stdexcept>

namespace commgame {

namespace {

// Negative iff b lies strictly above the chord a--c.
Rational chord_cross(const Rational& xa, const Rational& ya, const Rational& xb,
                     const Rational& yb, const Rational& xc, const Rational& yc) {
  return (xb - xa) * (yc - ya) - (xc - xa) * (yb - ya);
}

// Strict upper envelope of (xs[i], ys(i)) over the index subset `idx`
// (increasing x). Collinear interior points are dropped.
template <typename YFn>
std::vector<std::size_t> strict_upper_chain(std::span<const HullVertex> pts,
                                            const std::vector<std::size_t>& idx,
                                            YFn ys) {
  std::vector<std::size_t> chain;
  for (std::size_t i : idx) {
    while (chain.size() >= 2) {
      const std::size_t a = chain[chain.size() - 2];
      const std::size_t b = chain.back();
      if (chord_cross(pts[a].x, ys(a), pts[b].x, ys(b), pts[i].x, ys(i)) >= 0) {
        chain.pop_back();
      } else {
        break;
      }
    }
    chain.push_back(i);
  }
  return chain;
}

}  // namespace

std::vector<std::size_t> primary_hull_chain(std::span<const HullVertex> pts) {
  std::vector<std::size_t> all(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) all[i] = i;
  return strict_upper_chain(pts, all, [&](std::size_t i) { return pts[i].f; });
}

std::vector<std::size_t> lex_hull_nodes(std::span<const HullVertex> pts) {
  const auto g_of = [&](std::size_t i) { return pts[i].g; };
  const std::vector<std::size_t> primary = primary_hull_chain(pts);

  std::vector<std::size_t> nodes;
  nodes.push_back(primary.front());
  for (std::size_t k = 0; k + 1 < primary.size(); ++k) {
    const std::size_t a = primary[k];
    const std::size_t b = primary[k + 1];
    // Vertices lying exactly on the optimal face a--b; the mover is
    // indifferent among them, so the tie goes to the other player's
    // envelope over this set.
    std::vector<std::size_t> face;
    for (std::size_t i = a; i <= b; ++i) {
      if (i == a || i == b ||
          chord_cross(pts[a].x, pts[a].f, pts[i].x, pts[i].f, pts[b].x, pts[b].f) == 0)
        face.push_back(i);
    }
    if (face.size() > 2) {
      const std::vector<std::size_t> sub = strict_upper_chain(pts, face, g_of);
      for (std::size_t k2 = 1; k2 < sub.size(); ++k2) nodes.push_back(sub[k2]);
    } else {
      nodes.push_back(b);
    }
  }
  return nodes;
}

HullResult hull_at_nodes(std::span<const HullVertex> pts,
                         std::span<const std::size_t> nodes, const Rational& x) {
  std::size_t k = 0;
  while (k + 1 < nodes.size() && pts[nodes[k + 1]].x <= x) ++k;
  const HullVertex& lo = pts[nodes[k]];
  if (lo.x == x) {
    return HullResult{lo.f, lo.g, {SupportPoint{lo.x, 1}}};
  }
  const HullVertex& hi = pts[nodes[k + 1]];
  const Rational w_hi = (x - lo.x) / (hi.x - lo.x);
  const Rational w_lo = 1 - w_hi;
  HullResult out;
  out.value = w_lo * lo.f + w_hi * hi.f;
  out.co_value = w_lo * lo.g + w_hi * hi.g;
  out.support = {SupportPoint{lo.x, w_lo}, SupportPoint{hi.x, w_hi}};
  return out;
}

HullResult lex_hull_at(std::span<const HullVertex> pts, const Rational& x) {
  if (pts.empty()) throw std::invalid_argument("hull: no vertices");
  std::vector<HullVertex> sorted(pts.begin(), pts.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const HullVertex& a, const HullVertex& b) { return a.x < b.x; });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].x == sorted[i + 1].x)
      throw std::invalid_argument("hull: duplicate x coordinate");
  if (sorted.front().x != 0 || sorted.back().x != 1)
    throw std::invalid_argument("hull: vertices must cover {0,1}");
  if (x < 0 || x > 1) throw std::invalid_argument("hull: query outside [0,1]");
  const std::vector<std::size_t> nodes = lex_hull_nodes(sorted);
  return hull_at_nodes(sorted, nodes, x);
}

}  // namespace commgame
