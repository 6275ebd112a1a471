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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commgame/concavify.hpp"
#include "commgame/hull.hpp"
#include "test_util.hpp"

using namespace commgame;

namespace {

std::vector<HullVertex> verts(
    std::initializer_list<std::tuple<Rational, Rational, Rational>> init) {
  std::vector<HullVertex> out;
  for (const auto& [x, f, g] : init) out.push_back(HullVertex{x, f, g});
  return out;
}

}  // namespace

TEST_CASE("hull on a flat middle face splits to its endpoints") {
  // The q=1/2 slice of the spy base game.
  const auto pts = verts({{rat(0), rat(-1, 2), rat(1, 2)},
                          {rat(1, 3), rat(-1, 6), rat(1, 2)},
                          {rat(2, 3), rat(-1, 6), rat(1, 2)},
                          {rat(1), rat(-1, 2), rat(1, 2)}});
  const HullResult r = lex_hull_at(pts, rat(1, 2));
  CHECK(r.value == rat(-1, 6));
  REQUIRE(r.support.size() == 2);
  CHECK(r.support[0].x == rat(1, 3));
  CHECK(r.support[0].weight == rat(1, 2));
  CHECK(r.support[1].x == rat(2, 3));
  CHECK(r.support[1].weight == rat(1, 2));
}

TEST_CASE("hull splits a rising-then-flat buyer slice") {
  const auto pts = verts({{rat(0), rat(0), rat(0)},
                          {rat(1, 4), rat(3, 4), rat(2)},
                          {rat(1, 2), rat(3, 4), rat(5, 2)},
                          {rat(1), rat(0), rat(6)}});
  const HullResult r = lex_hull_at(pts, rat(1, 3));
  CHECK(r.value == rat(3, 4));
  REQUIRE(r.support.size() == 2);
  CHECK(r.support[0].x == rat(1, 4));
  CHECK(r.support[0].weight == rat(2, 3));
  CHECK(r.support[1].x == rat(1, 2));
  CHECK(r.support[1].weight == rat(1, 3));
  CHECK(r.co_value == rat(2, 3) * 2 + rat(1, 3) * rat(5, 2));
}

TEST_CASE("hull of a concave input interpolates") {
  const auto pts = verts({{rat(0), rat(0), rat(1)},
                          {rat(1, 2), rat(1), rat(0)},
                          {rat(1), rat(0), rat(1)}});
  const HullResult at_vertex = lex_hull_at(pts, rat(1, 2));
  CHECK(at_vertex.value == rat(1));
  CHECK(at_vertex.co_value == rat(0));
  REQUIRE(at_vertex.support.size() == 1);
  CHECK(at_vertex.support[0].x == rat(1, 2));

  const HullResult inside = lex_hull_at(pts, rat(1, 4));
  CHECK(inside.value == rat(1, 2));
  CHECK(inside.co_value == rat(1, 2));
  REQUIRE(inside.support.size() == 2);
  CHECK(inside.support[0].x == rat(0));
  CHECK(inside.support[1].x == rat(1, 2));
}

TEST_CASE("lexicographic tie-break prefers the co-maximizing refinement") {
  const auto pts = verts({{rat(0), rat(0), rat(0)},
                          {rat(1, 2), rat(1, 2), rat(5)},
                          {rat(1), rat(1), rat(0)}});
  const HullResult r = lex_hull_at(pts, rat(1, 2));
  CHECK(r.value == rat(1, 2));
  CHECK(r.co_value == rat(5));
  REQUIRE(r.support.size() == 1);
  CHECK(r.support[0].x == rat(1, 2));
}

TEST_CASE("hull rejects malformed input") {
  CHECK_THROWS_AS(lex_hull_at(verts({{rat(0), rat(0), rat(0)}}), rat(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lex_hull_at(verts({{rat(0), rat(0), rat(0)}, {rat(1, 2), rat(1), rat(0)}}),
                  rat(1, 4)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      lex_hull_at(verts({{rat(0), rat(0), rat(0)},
                         {rat(0), rat(1), rat(0)},
                         {rat(1), rat(0), rat(0)}}),
                  rat(1, 2)),
      std::invalid_argument);
}

TEST_CASE("hull matches the pair-enumeration oracle on random inputs") {
  testutil::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<HullVertex> pts;
    pts.push_back(HullVertex{rat(0), testutil::random_rational(rng, -6, 6),
                             testutil::random_rational(rng, -6, 6)});
    pts.push_back(HullVertex{rat(1), testutil::random_rational(rng, -6, 6),
                             testutil::random_rational(rng, -6, 6)});
    std::set<Rational> xs;
    std::uniform_int_distribution<int> extra(0, 5);
    const int n = extra(rng);
    for (int i = 0; i < n; ++i) xs.insert(testutil::random_interior(rng));
    for (const Rational& x : xs)
      pts.push_back(HullVertex{x, testutil::random_rational(rng, -6, 6),
                               testutil::random_rational(rng, -6, 6)});
    for (int k = 0; k < 8; ++k) {
      std::uniform_int_distribution<long long> num(0, 20);
      const Rational x = rat(num(rng), 20);
      const HullResult r = lex_hull_at(pts, x);
      const auto [of, og] = testutil::oracle_lex_hull(pts, x);
      CHECK(r.value == of);
      CHECK(r.co_value == og);
      // Support reconstructs the query and the reported values.
      Rational wsum = 0, mean = 0, fmix = 0;
      for (const SupportPoint& s : r.support) {
        CHECK(s.weight >= 0);
        wsum += s.weight;
        mean += s.weight * s.x;
      }
      CHECK(wsum == rat(1));
      CHECK(mean == x);
    }
  }
}

TEST_CASE("parametric concavify equals pointwise hulls on random pairs") {
  testutil::Rng rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const Surface f = testutil::random_usc_surface(rng);
    const Surface g = testutil::random_usc_surface(rng);
    const Axis axis = trial % 2 == 0 ? Axis::p : Axis::q;
    const ConcavifyResult r = concavify(f, g, axis);
    CHECK(verify_against_pointwise(f, g, r.hulled, r.co, axis, 20));
    CHECK(is_concave_along(r.hulled, axis));

    // Pointwise dominance of the mover's surface.
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        const Rational p(i, 10), q(j, 10);
        CHECK(r.hulled.eval(p, q) >= f.eval(p, q));
      }
  }
}

TEST_CASE("verify_against_pointwise detects an injected error") {
  testutil::Rng rng(303);
  const Surface f = testutil::random_usc_surface(rng);
  const Surface g = testutil::random_usc_surface(rng);
  ConcavifyResult r = concavify(f, g, Axis::p);
  REQUIRE(verify_against_pointwise(f, g, r.hulled, r.co, Axis::p, 20));
  Surface corrupted = r.hulled;
  corrupted.cells[0][0].a += rat(1, 7);
  CHECK(!verify_against_pointwise(f, g, corrupted, r.co, Axis::p, 20));
}

TEST_CASE("concavify is idempotent") {
  testutil::Rng rng(404);
  for (int trial = 0; trial < 8; ++trial) {
    const Surface f = testutil::random_usc_surface(rng);
    const Surface g = testutil::random_usc_surface(rng);
    const ConcavifyResult r1 = concavify(f, g, Axis::p);
    const ConcavifyResult r2 = concavify(r1.hulled, r1.co, Axis::p);
    CHECK(equal(r2.hulled, r1.hulled));
    CHECK(equal(r2.co, r1.co));
  }
}

TEST_CASE("already-concave mover passes through with a silent plan") {
  const Surface f = Surface::from_bilinear(Bilinear{rat(1), rat(-1), rat(2), rat(0)});
  const Surface g = Surface::from_bilinear(Bilinear{rat(0), rat(3), rat(1), rat(0)});
  const ConcavifyResult r = concavify(f, g, Axis::p);
  CHECK(equal(r.hulled, f));
  CHECK(equal(r.co, g));
  for (const PlanRect& rect : r.plan.rectangles) CHECK(rect.silent);
}

TEST_CASE("plan rectangles tile the square and satisfy Bayes plausibility") {
  testutil::Rng rng(505);
  for (int trial = 0; trial < 10; ++trial) {
    const Surface f = testutil::random_usc_surface(rng);
    const Surface g = testutil::random_usc_surface(rng);
    const ConcavifyResult r = concavify(f, g, Axis::p);
    // Area of rectangles sums to 1 and interiors are disjoint (checked via
    // total area plus pairwise non-overlap of representative points).
    Rational area = 0;
    for (const PlanRect& rect : r.plan.rectangles) {
      CHECK(rect.lo <= rect.p_lo);
      CHECK(rect.p_hi <= rect.hi);
      area += (rect.p_hi - rect.p_lo) * (rect.q_hi - rect.q_lo);
    }
    CHECK(area == rat(1));
    // Consistency: inside any rectangle, the co-surface is the support
    // mixture of the input co-values, and weights are Bayes-plausible.
    for (int k = 0; k < 20; ++k) {
      const Rational p = testutil::random_interior(rng, 40);
      const Rational q = testutil::random_interior(rng, 40);
      const PlanRect& rect = r.plan.find(p, q);
      if (rect.lo == rect.hi) continue;
      const Rational w_hi = (p - rect.lo) / (rect.hi - rect.lo);
      const Rational w_lo = 1 - w_hi;
      CHECK(w_lo >= 0);
      CHECK(w_hi >= 0);
      if (p > rect.p_lo && p < rect.p_hi && q > rect.q_lo && q < rect.q_hi) {
        CHECK(r.co.eval(p, q) ==
              w_lo * g.eval(rect.lo, q) + w_hi * g.eval(rect.hi, q));
        CHECK(r.hulled.eval(p, q) ==
              w_lo * f.eval(rect.lo, q) + w_hi * f.eval(rect.hi, q));
      }
    }
  }
}

TEST_CASE("co-surface convexity along the hulled axis is preserved") {
  testutil::Rng rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    const Surface f = testutil::random_usc_surface(rng);
    // Linear in p, hence convex along the hulled axis.
    const Surface g = Surface::from_bilinear(
        Bilinear{testutil::random_rational(rng, -4, 4),
                 testutil::random_rational(rng, -4, 4),
                 testutil::random_rational(rng, -4, 4), rat(0)});
    const ConcavifyResult r = concavify(f, g, Axis::p);
    CHECK(is_convex_along(r.co, Axis::p));
  }
}

TEST_CASE("partition JSON round-trips") {
  testutil::Rng rng(707);
  const Surface f = testutil::random_usc_surface(rng);
  const Surface g = testutil::random_usc_surface(rng);
  const ConcavifyResult r = concavify(f, g, Axis::q);
  const std::string text = partition_to_json(r.plan);
  const StrategyPartition back = partition_from_json(text);
  CHECK(back.axis == r.plan.axis);
  CHECK(back.rectangles == r.plan.rectangles);
}
