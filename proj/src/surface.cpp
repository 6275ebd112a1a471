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

#include "commgame/surface.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace commgame {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("surface: " + what);
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

}  // namespace

LinearFn Bilinear::restrict_p(const Rational& p) const {
  return LinearFn{a + b * p, c + d * p};
}

LinearFn Bilinear::restrict_q(const Rational& q) const {
  return LinearFn{a + c * q, b + d * q};
}

GridPos locate(const std::vector<Rational>& cuts, const Rational& x) {
  if (x < cuts.front() || x > cuts.back()) fail("coordinate out of range");
  auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - cuts.begin());
  if (it != cuts.end() && *it == x) return GridPos{true, k};
  return GridPos{false, k - 1};
}

Rational Surface::eval(const Rational& p, const Rational& q) const {
  const GridPos pp = locate(grid.p_cuts, p);
  const GridPos qq = locate(grid.q_cuts, q);
  if (pp.on_cut && qq.on_cut) return vertex_vals[pp.index][qq.index];
  if (pp.on_cut) return p_cut_fns[pp.index][qq.index].at(q);
  if (qq.on_cut) return q_cut_fns[pp.index][qq.index].at(p);
  return cells[pp.index][qq.index].at(p, q);
}

Surface Surface::constant(const Rational& value) {
  return from_bilinear(Bilinear{value, 0, 0, 0});
}

Surface Surface::from_bilinear(const Bilinear& fn) {
  Surface s;
  s.grid = Grid{{0, 1}, {0, 1}};
  s.cells = {{fn}};
  s.p_cut_fns = {{fn.restrict_p(0)}, {fn.restrict_p(1)}};
  s.q_cut_fns = {{fn.restrict_q(0), fn.restrict_q(1)}};
  s.vertex_vals = {{fn.at(0, 0), fn.at(0, 1)}, {fn.at(1, 0), fn.at(1, 1)}};
  return s;
}

Slice slice(const Surface& s, Axis varying, const Rational& fixed_value) {
  Slice out;
  if (varying == Axis::p) {
    const GridPos qq = locate(s.grid.q_cuts, fixed_value);
    const std::size_t np = s.grid.p_cuts.size();
    out.xs = s.grid.p_cuts;
    out.values.reserve(np);
    out.segments.reserve(np - 1);
    for (std::size_t i = 0; i < np; ++i) {
      out.values.push_back(qq.on_cut ? s.vertex_vals[i][qq.index]
                                     : s.p_cut_fns[i][qq.index].at(fixed_value));
    }
    for (std::size_t i = 0; i + 1 < np; ++i) {
      out.segments.push_back(qq.on_cut
                                 ? s.q_cut_fns[i][qq.index]
                                 : s.cells[i][qq.index].restrict_q(fixed_value));
    }
  } else {
    const GridPos pp = locate(s.grid.p_cuts, fixed_value);
    const std::size_t nq = s.grid.q_cuts.size();
    out.xs = s.grid.q_cuts;
    out.values.reserve(nq);
    out.segments.reserve(nq - 1);
    for (std::size_t j = 0; j < nq; ++j) {
      out.values.push_back(pp.on_cut ? s.vertex_vals[pp.index][j]
                                     : s.q_cut_fns[pp.index][j].at(fixed_value));
    }
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      out.segments.push_back(pp.on_cut
                                 ? s.p_cut_fns[pp.index][j]
                                 : s.cells[pp.index][j].restrict_p(fixed_value));
    }
  }
  return out;
}

std::vector<RestrictionPoint> restrict_surface(const Surface& s, Axis fixed_axis,
                                               const Rational& fixed_value) {
  const Slice sl = slice(s, other_axis(fixed_axis), fixed_value);
  std::vector<RestrictionPoint> out;
  out.reserve(sl.xs.size());
  for (std::size_t k = 0; k < sl.xs.size(); ++k) {
    RestrictionPoint pt;
    pt.x = sl.xs[k];
    pt.value = sl.values[k];
    pt.left_limit = k == 0 ? sl.values[k] : sl.segments[k - 1].at(sl.xs[k]);
    pt.right_limit =
        k + 1 == sl.xs.size() ? sl.values[k] : sl.segments[k].at(sl.xs[k]);
    out.push_back(std::move(pt));
  }
  return out;
}

namespace {

void validate_cuts(const std::vector<Rational>& cuts, const char* name) {
  if (cuts.size() < 2) fail(std::string(name) + ": needs at least {0,1}");
  if (cuts.front() != 0 || cuts.back() != 1)
    fail(std::string(name) + ": must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1]))
      fail(std::string(name) + ": cuts must be strictly increasing");
  }
}

// fn >= bound on [lo, hi], decided at the endpoints (both linear).
bool dominates_on(const LinearFn& fn, const LinearFn& bound, const Rational& lo,
                  const Rational& hi) {
  return fn.at(lo) >= bound.at(lo) && fn.at(hi) >= bound.at(hi);
}

}  // namespace

void validate(const Surface& s) {
  validate_cuts(s.grid.p_cuts, "p_cuts");
  validate_cuts(s.grid.q_cuts, "q_cuts");
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  if (s.cells.size() != np - 1 || s.p_cut_fns.size() != np ||
      s.q_cut_fns.size() != np - 1 || s.vertex_vals.size() != np)
    fail("table row counts do not match grid");
  for (const auto& row : s.cells)
    if (row.size() != nq - 1) fail("cells column count");
  for (const auto& row : s.p_cut_fns)
    if (row.size() != nq - 1) fail("p_cut_fns column count");
  for (const auto& row : s.q_cut_fns)
    if (row.size() != nq) fail("q_cut_fns column count");
  for (const auto& row : s.vertex_vals)
    if (row.size() != nq) fail("vertex_vals column count");

  // Upper semicontinuity of cut segments against adjacent cell limits.
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      const Rational& lo = s.grid.q_cuts[j];
      const Rational& hi = s.grid.q_cuts[j + 1];
      const LinearFn& fn = s.p_cut_fns[i][j];
      if (i > 0 &&
          !dominates_on(fn, s.cells[i - 1][j].restrict_p(s.grid.p_cuts[i]), lo, hi))
        fail("p-cut value below left cell limit");
      if (i + 1 < np &&
          !dominates_on(fn, s.cells[i][j].restrict_p(s.grid.p_cuts[i]), lo, hi))
        fail("p-cut value below right cell limit");
    }
  }
  for (std::size_t i = 0; i + 1 < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      const Rational& lo = s.grid.p_cuts[i];
      const Rational& hi = s.grid.p_cuts[i + 1];
      const LinearFn& fn = s.q_cut_fns[i][j];
      if (j > 0 &&
          !dominates_on(fn, s.cells[i][j - 1].restrict_q(s.grid.q_cuts[j]), lo, hi))
        fail("q-cut value below lower cell limit");
      if (j + 1 < nq &&
          !dominates_on(fn, s.cells[i][j].restrict_q(s.grid.q_cuts[j]), lo, hi))
        fail("q-cut value below upper cell limit");
    }
  }
  // Vertices dominate the four adjacent cut-segment limits.
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      const Rational& v = s.vertex_vals[i][j];
      if (j > 0 && v < s.p_cut_fns[i][j - 1].at(s.grid.q_cuts[j]))
        fail("vertex below lower p-cut limit");
      if (j + 1 < nq && v < s.p_cut_fns[i][j].at(s.grid.q_cuts[j]))
        fail("vertex below upper p-cut limit");
      if (i > 0 && v < s.q_cut_fns[i - 1][j].at(s.grid.p_cuts[i]))
        fail("vertex below left q-cut limit");
      if (i + 1 < np && v < s.q_cut_fns[i][j].at(s.grid.p_cuts[i]))
        fail("vertex below right q-cut limit");
    }
  }
}

bool boundary_values_one_sided(const Surface& s) {
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      const LinearFn& fn = s.p_cut_fns[i][j];
      bool ok = false;
      if (i > 0) ok = ok || fn == s.cells[i - 1][j].restrict_p(s.grid.p_cuts[i]);
      if (i + 1 < np) ok = ok || fn == s.cells[i][j].restrict_p(s.grid.p_cuts[i]);
      if (!ok) return false;
    }
  }
  for (std::size_t i = 0; i + 1 < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      const LinearFn& fn = s.q_cut_fns[i][j];
      bool ok = false;
      if (j > 0) ok = ok || fn == s.cells[i][j - 1].restrict_q(s.grid.q_cuts[j]);
      if (j + 1 < nq) ok = ok || fn == s.cells[i][j].restrict_q(s.grid.q_cuts[j]);
      if (!ok) return false;
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      const Rational& v = s.vertex_vals[i][j];
      bool ok = false;
      if (j > 0) ok = ok || v == s.p_cut_fns[i][j - 1].at(s.grid.q_cuts[j]);
      if (j + 1 < nq) ok = ok || v == s.p_cut_fns[i][j].at(s.grid.q_cuts[j]);
      if (i > 0) ok = ok || v == s.q_cut_fns[i - 1][j].at(s.grid.p_cuts[i]);
      if (i + 1 < np) ok = ok || v == s.q_cut_fns[i][j].at(s.grid.p_cuts[i]);
      if (!ok) return false;
    }
  }
  return true;
}

Surface refined(const Surface& s, const Grid& target) {
  for (const Rational& x : s.grid.p_cuts)
    if (!std::binary_search(target.p_cuts.begin(), target.p_cuts.end(), x))
      fail("refined: target p grid is not a superset");
  for (const Rational& y : s.grid.q_cuts)
    if (!std::binary_search(target.q_cuts.begin(), target.q_cuts.end(), y))
      fail("refined: target q grid is not a superset");

  const std::size_t np = target.p_cuts.size();
  const std::size_t nq = target.q_cuts.size();
  Surface out;
  out.grid = target;
  out.cells.assign(np - 1, std::vector<Bilinear>(nq - 1));
  out.p_cut_fns.assign(np, std::vector<LinearFn>(nq - 1));
  out.q_cut_fns.assign(np - 1, std::vector<LinearFn>(nq));
  out.vertex_vals.assign(np, std::vector<Rational>(nq));

  // Strip representatives land strictly inside an original strip.
  std::vector<GridPos> p_strip_orig(np - 1), q_strip_orig(nq - 1);
  for (std::size_t i = 0; i + 1 < np; ++i)
    p_strip_orig[i] = locate(s.grid.p_cuts, midpoint(target.p_cuts[i], target.p_cuts[i + 1]));
  for (std::size_t j = 0; j + 1 < nq; ++j)
    q_strip_orig[j] = locate(s.grid.q_cuts, midpoint(target.q_cuts[j], target.q_cuts[j + 1]));

  for (std::size_t i = 0; i + 1 < np; ++i)
    for (std::size_t j = 0; j + 1 < nq; ++j)
      out.cells[i][j] = s.cells[p_strip_orig[i].index][q_strip_orig[j].index];

  for (std::size_t i = 0; i < np; ++i) {
    const GridPos pp = locate(s.grid.p_cuts, target.p_cuts[i]);
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      const std::size_t oj = q_strip_orig[j].index;
      out.p_cut_fns[i][j] =
          pp.on_cut ? s.p_cut_fns[pp.index][oj]
                    : s.cells[pp.index][oj].restrict_p(target.p_cuts[i]);
    }
  }
  for (std::size_t j = 0; j < nq; ++j) {
    const GridPos qq = locate(s.grid.q_cuts, target.q_cuts[j]);
    for (std::size_t i = 0; i + 1 < np; ++i) {
      const std::size_t oi = p_strip_orig[i].index;
      out.q_cut_fns[i][j] =
          qq.on_cut ? s.q_cut_fns[oi][qq.index]
                    : s.cells[oi][qq.index].restrict_q(target.q_cuts[j]);
    }
  }
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j)
      out.vertex_vals[i][j] = s.eval(target.p_cuts[i], target.q_cuts[j]);
  return out;
}

namespace {

std::vector<Rational> merge_cuts(const std::vector<Rational>& a,
                                 const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::pair<Surface, Surface> common_refinement(const Surface& a, const Surface& b) {
  Grid merged{merge_cuts(a.grid.p_cuts, b.grid.p_cuts),
              merge_cuts(a.grid.q_cuts, b.grid.q_cuts)};
  return {refined(a, merged), refined(b, merged)};
}

bool equal(const Surface& a, const Surface& b) {
  auto [ra, rb] = common_refinement(a, b);
  return ra == rb;
}

namespace {

// Drops every internal p-cut whose removal leaves eval unchanged.
bool prune_p_pass(Surface& s) {
  bool changed = false;
  const std::size_t nq = s.grid.q_cuts.size();
  for (std::size_t i = s.grid.p_cuts.size() - 2; i >= 1; --i) {
    bool removable = true;
    for (std::size_t j = 0; j + 1 < nq && removable; ++j) {
      removable = s.cells[i - 1][j] == s.cells[i][j] &&
                  s.p_cut_fns[i][j] ==
                      s.cells[i][j].restrict_p(s.grid.p_cuts[i]);
    }
    for (std::size_t j = 0; j < nq && removable; ++j) {
      removable = s.q_cut_fns[i - 1][j] == s.q_cut_fns[i][j] &&
                  s.vertex_vals[i][j] == s.q_cut_fns[i][j].at(s.grid.p_cuts[i]);
    }
    if (!removable) continue;
    s.grid.p_cuts.erase(s.grid.p_cuts.begin() + i);
    s.cells.erase(s.cells.begin() + i);
    s.p_cut_fns.erase(s.p_cut_fns.begin() + i);
    s.q_cut_fns.erase(s.q_cut_fns.begin() + i);
    s.vertex_vals.erase(s.vertex_vals.begin() + i);
    changed = true;
  }
  return changed;
}

}  // namespace

Surface pruned(const Surface& s) {
  Surface out = s;
  bool changed = true;
  while (changed) {
    changed = prune_p_pass(out);
    out = transposed(out);
    changed = prune_p_pass(out) || changed;
    out = transposed(out);
  }
  return out;
}

Surface transposed(const Surface& s) {
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  Surface out;
  out.grid = Grid{s.grid.q_cuts, s.grid.p_cuts};
  out.cells.assign(nq - 1, std::vector<Bilinear>(np - 1));
  for (std::size_t i = 0; i + 1 < np; ++i)
    for (std::size_t j = 0; j + 1 < nq; ++j) {
      const Bilinear& c = s.cells[i][j];
      out.cells[j][i] = Bilinear{c.a, c.c, c.b, c.d};
    }
  out.p_cut_fns.assign(nq, std::vector<LinearFn>(np - 1));
  for (std::size_t j = 0; j < nq; ++j)
    for (std::size_t i = 0; i + 1 < np; ++i)
      out.p_cut_fns[j][i] = s.q_cut_fns[i][j];
  out.q_cut_fns.assign(nq - 1, std::vector<LinearFn>(np));
  for (std::size_t j = 0; j + 1 < nq; ++j)
    for (std::size_t i = 0; i < np; ++i) out.q_cut_fns[j][i] = s.p_cut_fns[i][j];
  out.vertex_vals.assign(nq, std::vector<Rational>(np));
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) out.vertex_vals[j][i] = s.vertex_vals[i][j];
  return out;
}

namespace {

// Convexity along q. A 1-D restriction with explicit breakpoint values is
// convex iff it is continuous at interior breakpoints, slopes are
// nondecreasing, and endpoint values dominate the adjacent inner limits.
// All conditions are linear in p, so strip endpoints decide them exactly.
bool convex_along_q(const Surface& s) {
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  for (std::size_t i = 0; i + 1 < np; ++i) {
    const Rational& plo = s.grid.p_cuts[i];
    const Rational& phi = s.grid.p_cuts[i + 1];
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const LinearFn lower = s.cells[i][j - 1].restrict_q(s.grid.q_cuts[j]);
      const LinearFn upper = s.cells[i][j].restrict_q(s.grid.q_cuts[j]);
      if (s.q_cut_fns[i][j] != lower || s.q_cut_fns[i][j] != upper) return false;
    }
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const Bilinear& below = s.cells[i][j - 1];
      const Bilinear& above = s.cells[i][j];
      // q-slope as a function of p.
      const LinearFn sb{below.c, below.d}, sa{above.c, above.d};
      if (sb.at(plo) > sa.at(plo) || sb.at(phi) > sa.at(phi)) return false;
    }
    if (!dominates_on(s.q_cut_fns[i][0], s.cells[i][0].restrict_q(0), plo, phi))
      return false;
    if (!dominates_on(s.q_cut_fns[i][nq - 1], s.cells[i][nq - 2].restrict_q(1),
                      plo, phi))
      return false;
  }
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const Rational& v = s.vertex_vals[i][j];
      if (v != s.p_cut_fns[i][j - 1].at(s.grid.q_cuts[j]) ||
          v != s.p_cut_fns[i][j].at(s.grid.q_cuts[j]))
        return false;
    }
    for (std::size_t j = 1; j + 1 < nq; ++j)
      if (s.p_cut_fns[i][j - 1].b > s.p_cut_fns[i][j].b) return false;
    if (s.vertex_vals[i][0] < s.p_cut_fns[i][0].at(0)) return false;
    if (s.vertex_vals[i][nq - 1] < s.p_cut_fns[i][nq - 2].at(1)) return false;
  }
  return true;
}

bool concave_along_q(const Surface& s) {
  const std::size_t np = s.grid.p_cuts.size();
  const std::size_t nq = s.grid.q_cuts.size();
  for (std::size_t i = 0; i + 1 < np; ++i) {
    const Rational& plo = s.grid.p_cuts[i];
    const Rational& phi = s.grid.p_cuts[i + 1];
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const LinearFn lower = s.cells[i][j - 1].restrict_q(s.grid.q_cuts[j]);
      const LinearFn upper = s.cells[i][j].restrict_q(s.grid.q_cuts[j]);
      if (s.q_cut_fns[i][j] != lower || s.q_cut_fns[i][j] != upper) return false;
    }
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const Bilinear& below = s.cells[i][j - 1];
      const Bilinear& above = s.cells[i][j];
      const LinearFn sb{below.c, below.d}, sa{above.c, above.d};
      if (sb.at(plo) < sa.at(plo) || sb.at(phi) < sa.at(phi)) return false;
    }
    if (!dominates_on(s.cells[i][0].restrict_q(0), s.q_cut_fns[i][0], plo, phi))
      return false;
    if (!dominates_on(s.cells[i][nq - 2].restrict_q(1), s.q_cut_fns[i][nq - 1],
                      plo, phi))
      return false;
  }
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const Rational& v = s.vertex_vals[i][j];
      if (v != s.p_cut_fns[i][j - 1].at(s.grid.q_cuts[j]) ||
          v != s.p_cut_fns[i][j].at(s.grid.q_cuts[j]))
        return false;
    }
    for (std::size_t j = 1; j + 1 < nq; ++j)
      if (s.p_cut_fns[i][j - 1].b < s.p_cut_fns[i][j].b) return false;
    if (s.vertex_vals[i][0] > s.p_cut_fns[i][0].at(0)) return false;
    if (s.vertex_vals[i][nq - 1] > s.p_cut_fns[i][nq - 2].at(1)) return false;
  }
  return true;
}

}  // namespace

bool is_convex_along(const Surface& s, Axis axis) {
  return axis == Axis::q ? convex_along_q(s) : convex_along_q(transposed(s));
}

bool is_concave_along(const Surface& s, Axis axis) {
  return axis == Axis::q ? concave_along_q(s) : concave_along_q(transposed(s));
}

namespace {

json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  auto parsed = parse_rational(j.get<std::string>());
  if (!parsed) fail("bad rational in JSON: " + j.get<std::string>());
  return *parsed;
}

json linear_json(const LinearFn& f) {
  return json{{"a", rational_json(f.a)}, {"b", rational_json(f.b)}};
}

LinearFn linear_from_json(const json& j) {
  return LinearFn{rational_from_json(j.at("a")), rational_from_json(j.at("b"))};
}

}  // namespace

std::string surface_to_json(const Surface& s) {
  json j;
  for (const auto& x : s.grid.p_cuts) j["p_cuts"].push_back(rational_json(x));
  for (const auto& y : s.grid.q_cuts) j["q_cuts"].push_back(rational_json(y));
  j["cells"] = json::array();
  for (const auto& row : s.cells) {
    json r = json::array();
    for (const auto& c : row)
      r.push_back(json{{"a", rational_json(c.a)},
                       {"b", rational_json(c.b)},
                       {"c", rational_json(c.c)},
                       {"d", rational_json(c.d)}});
    j["cells"].push_back(std::move(r));
  }
  j["p_cut_fns"] = json::array();
  for (const auto& row : s.p_cut_fns) {
    json r = json::array();
    for (const auto& f : row) r.push_back(linear_json(f));
    j["p_cut_fns"].push_back(std::move(r));
  }
  j["q_cut_fns"] = json::array();
  for (const auto& row : s.q_cut_fns) {
    json r = json::array();
    for (const auto& f : row) r.push_back(linear_json(f));
    j["q_cut_fns"].push_back(std::move(r));
  }
  j["vertex_vals"] = json::array();
  for (const auto& row : s.vertex_vals) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_json(v));
    j["vertex_vals"].push_back(std::move(r));
  }
  return j.dump(2);
}

Surface surface_from_json(const std::string& text) {
  const json j = json::parse(text);
  Surface s;
  for (const auto& x : j.at("p_cuts")) s.grid.p_cuts.push_back(rational_from_json(x));
  for (const auto& y : j.at("q_cuts")) s.grid.q_cuts.push_back(rational_from_json(y));
  for (const auto& row : j.at("cells")) {
    std::vector<Bilinear> r;
    for (const auto& c : row)
      r.push_back(Bilinear{rational_from_json(c.at("a")), rational_from_json(c.at("b")),
                           rational_from_json(c.at("c")), rational_from_json(c.at("d"))});
    s.cells.push_back(std::move(r));
  }
  for (const auto& row : j.at("p_cut_fns")) {
    std::vector<LinearFn> r;
    for (const auto& f : row) r.push_back(linear_from_json(f));
    s.p_cut_fns.push_back(std::move(r));
  }
  for (const auto& row : j.at("q_cut_fns")) {
    std::vector<LinearFn> r;
    for (const auto& f : row) r.push_back(linear_from_json(f));
    s.q_cut_fns.push_back(std::move(r));
  }
  for (const auto& row : j.at("vertex_vals")) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    s.vertex_vals.push_back(std::move(r));
  }
  validate(s);
  return s;
}

}  // namespace commgame
