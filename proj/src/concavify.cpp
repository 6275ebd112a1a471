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

#include "commgame/concavify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace commgame {

namespace {

using nlohmann::json;

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

// Orientation of vertex b against the chord a--c, with heights linear in q:
// returns the linear function of q whose sign matches "b below chord".
LinearFn collinearity(const Rational& xa, const LinearFn& fa, const Rational& xb,
                      const LinearFn& fb, const Rational& xc, const LinearFn& fc) {
  // (xb-xa) * (fc - fa) - (xc-xa) * (fb - fa), coefficientwise.
  const Rational u = xb - xa, v = xc - xa;
  return LinearFn{u * (fc.a - fa.a) - v * (fb.a - fa.a),
                  u * (fc.b - fa.b) - v * (fb.b - fa.b)};
}

std::vector<HullVertex> verts_at(const std::vector<Rational>& xs,
                                 const std::vector<LinearFn>& f,
                                 const std::vector<LinearFn>& g, const Rational& q) {
  std::vector<HullVertex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = HullVertex{xs[i], f[i].at(q), g[i].at(q)};
  return out;
}

// Expand the chord through (x_u, lo(q)) and (x_v, hi(q)) into a bilinear cell
// function of (p, q).
Bilinear chord_cell(const Rational& xu, const LinearFn& lo, const Rational& xv,
                    const LinearFn& hi) {
  const Rational dx = xv - xu;
  const LinearFn slope{(hi.a - lo.a) / dx, (hi.b - lo.b) / dx};
  return Bilinear{lo.a - xu * slope.a, slope.a, lo.b - xu * slope.b, slope.b};
}

// Chord value at a fixed x, as a function of q.
LinearFn chord_at(const Rational& xu, const LinearFn& lo, const Rational& xv,
                  const LinearFn& hi, const Rational& x) {
  const Rational w = (x - xu) / (xv - xu);
  return LinearFn{lo.a + w * (hi.a - lo.a), lo.b + w * (hi.b - lo.b)};
}

struct LineHull {
  std::vector<HullVertex> verts;
  std::vector<std::size_t> nodes;
};

LineHull hull_on_line(const Surface& f_s, const Surface& g_s, const Rational& y) {
  const Slice sf = slice(f_s, Axis::p, y);
  const Slice sg = slice(g_s, Axis::p, y);
  LineHull out;
  out.verts.resize(sf.xs.size());
  for (std::size_t i = 0; i < sf.xs.size(); ++i)
    out.verts[i] = HullVertex{sf.xs[i], sf.values[i], sg.values[i]};
  out.nodes = lex_hull_nodes(out.verts);
  return out;
}

StrategyPartition transpose_plan(const StrategyPartition& plan) {
  StrategyPartition out;
  out.axis = other_axis(plan.axis);
  out.rectangles.reserve(plan.rectangles.size());
  for (const PlanRect& r : plan.rectangles)
    out.rectangles.push_back(
        PlanRect{r.q_lo, r.q_hi, r.p_lo, r.p_hi, r.lo, r.hi, r.silent});
  return out;
}

// Merge rectangles that share the p-interval, endpoints and silence flag and
// are stacked in q.
void merge_rects(std::vector<PlanRect>& rects) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rects.size() && !changed; ++i) {
      for (std::size_t j = 0; j < rects.size(); ++j) {
        if (i == j) continue;
        PlanRect& a = rects[i];
        const PlanRect& b = rects[j];
        if (a.p_lo == b.p_lo && a.p_hi == b.p_hi && a.lo == b.lo && a.hi == b.hi &&
            a.silent == b.silent && a.q_hi == b.q_lo) {
          a.q_hi = b.q_hi;
          rects.erase(rects.begin() + j);
          changed = true;
          break;
        }
      }
    }
  }
}

ConcavifyResult concavify_along_p(const Surface& mover, const Surface& other) {
  auto [F, G] = common_refinement(mover, other);
  const std::vector<Rational>& xs = F.grid.p_cuts;
  const std::vector<Rational>& qs = F.grid.q_cuts;
  const std::size_t np = xs.size();

  // Phase 1: per q-strip, find every q where the primary hull combinatorics
  // can change (some vertex triple turns collinear). Between consecutive
  // events every triple keeps its orientation, so the hull is combinatorially
  // stable there.
  std::vector<std::vector<Rational>> strip_events(qs.size() - 1);
  for (std::size_t j = 0; j + 1 < qs.size(); ++j) {
    std::set<Rational> ev;
    const auto& fv = F.p_cut_fns;
    for (std::size_t a = 0; a + 2 < np; ++a)
      for (std::size_t b = a + 1; b + 1 < np; ++b)
        for (std::size_t c = b + 1; c < np; ++c) {
          const LinearFn cr =
              collinearity(xs[a], fv[a][j], xs[b], fv[b][j], xs[c], fv[c][j]);
          if (cr.b == 0) continue;
          const Rational root = -cr.a / cr.b;
          if (root > qs[j] && root < qs[j + 1]) ev.insert(root);
        }
    // Phase 2: between primary events the faces are fixed; collect secondary
    // events where the co-envelope over a degenerate face changes.
    std::vector<Rational> bounds{qs[j]};
    bounds.insert(bounds.end(), ev.begin(), ev.end());
    bounds.push_back(qs[j + 1]);
    std::set<Rational> ev2(ev.begin(), ev.end());
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const Rational qm = midpoint(bounds[s], bounds[s + 1]);
      std::vector<LinearFn> fcol(np), gcol(np);
      for (std::size_t i = 0; i < np; ++i) {
        fcol[i] = F.p_cut_fns[i][j];
        gcol[i] = G.p_cut_fns[i][j];
      }
      const auto sample = verts_at(xs, fcol, gcol, qm);
      const auto primary = primary_hull_chain(sample);
      for (std::size_t k = 0; k + 1 < primary.size(); ++k) {
        std::vector<std::size_t> face;
        for (std::size_t i = primary[k]; i <= primary[k + 1]; ++i) {
          const Rational cr = (sample[i].x - sample[primary[k]].x) *
                                  (sample[primary[k + 1]].f - sample[primary[k]].f) -
                              (sample[primary[k + 1]].x - sample[primary[k]].x) *
                                  (sample[i].f - sample[primary[k]].f);
          if (cr == 0) face.push_back(i);
        }
        if (face.size() <= 2) continue;
        for (std::size_t a = 0; a + 2 < face.size(); ++a)
          for (std::size_t b = a + 1; b + 1 < face.size(); ++b)
            for (std::size_t c = b + 1; c < face.size(); ++c) {
              const LinearFn cr = collinearity(xs[face[a]], gcol[face[a]],
                                               xs[face[b]], gcol[face[b]],
                                               xs[face[c]], gcol[face[c]]);
              if (cr.b == 0) continue;
              const Rational root = -cr.a / cr.b;
              if (root > bounds[s] && root < bounds[s + 1]) ev2.insert(root);
            }
      }
    }
    strip_events[j].assign(ev2.begin(), ev2.end());
  }

  Grid out_grid;
  out_grid.p_cuts = xs;
  out_grid.q_cuts = qs;
  for (const auto& ev : strip_events)
    out_grid.q_cuts.insert(out_grid.q_cuts.end(), ev.begin(), ev.end());
  std::sort(out_grid.q_cuts.begin(), out_grid.q_cuts.end());
  const std::size_t nq = out_grid.q_cuts.size();

  Surface H, C;
  H.grid = C.grid = out_grid;
  H.cells.assign(np - 1, std::vector<Bilinear>(nq - 1));
  C.cells.assign(np - 1, std::vector<Bilinear>(nq - 1));
  H.p_cut_fns.assign(np, std::vector<LinearFn>(nq - 1));
  C.p_cut_fns.assign(np, std::vector<LinearFn>(nq - 1));
  H.q_cut_fns.assign(np - 1, std::vector<LinearFn>(nq));
  C.q_cut_fns.assign(np - 1, std::vector<LinearFn>(nq));
  H.vertex_vals.assign(np, std::vector<Rational>(nq));
  C.vertex_vals.assign(np, std::vector<Rational>(nq));

  StrategyPartition plan;
  plan.axis = Axis::p;

  for (std::size_t js = 0; js + 1 < nq; ++js) {
    const Rational& y_lo = out_grid.q_cuts[js];
    const Rational& y_hi = out_grid.q_cuts[js + 1];
    const std::size_t j = locate(qs, midpoint(y_lo, y_hi)).index;
    std::vector<LinearFn> fcol(np), gcol(np);
    for (std::size_t i = 0; i < np; ++i) {
      fcol[i] = F.p_cut_fns[i][j];
      gcol[i] = G.p_cut_fns[i][j];
    }
    const auto sample = verts_at(xs, fcol, gcol, midpoint(y_lo, y_hi));
    const auto nodes = lex_hull_nodes(sample);

    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const std::size_t u = nodes[k], v = nodes[k + 1];
      const Bilinear hcell = chord_cell(xs[u], fcol[u], xs[v], fcol[v]);
      const Bilinear ccell = chord_cell(xs[u], gcol[u], xs[v], gcol[v]);
      bool identity = true;
      for (std::size_t i = u; i < v; ++i) {
        H.cells[i][js] = hcell;
        C.cells[i][js] = ccell;
        identity = identity && hcell == F.cells[i][j] && ccell == G.cells[i][j];
      }
      for (std::size_t i = u + 1; i < v; ++i)
        identity = identity && chord_at(xs[u], fcol[u], xs[v], fcol[v], xs[i]) ==
                                   fcol[i] &&
                   chord_at(xs[u], gcol[u], xs[v], gcol[v], xs[i]) == gcol[i];
      plan.rectangles.push_back(
          PlanRect{xs[u], xs[v], y_lo, y_hi, xs[u], xs[v], identity});
    }

    for (std::size_t i = 0; i < np; ++i) {
      if (std::binary_search(nodes.begin(), nodes.end(), i)) {
        H.p_cut_fns[i][js] = fcol[i];
        C.p_cut_fns[i][js] = gcol[i];
      } else {
        std::size_t k = 0;
        while (nodes[k + 1] < i) ++k;
        const std::size_t u = nodes[k], v = nodes[k + 1];
        H.p_cut_fns[i][js] = chord_at(xs[u], fcol[u], xs[v], fcol[v], xs[i]);
        C.p_cut_fns[i][js] = chord_at(xs[u], gcol[u], xs[v], gcol[v], xs[i]);
      }
    }
  }

  // Values on every q-line (original cuts and inserted events) come from the
  // hull recomputed on that line: the line's own stored values are the
  // tie-broken ones and are the source of truth there.
  for (std::size_t jj = 0; jj < nq; ++jj) {
    const Rational& y = out_grid.q_cuts[jj];
    const LineHull lh = hull_on_line(F, G, y);
    for (std::size_t i = 0; i + 1 < np; ++i) {
      std::size_t k = 0;
      while (lh.nodes[k + 1] <= i) ++k;
      const std::size_t u = lh.nodes[k], v = lh.nodes[k + 1];
      const Rational dx = lh.verts[v].x - lh.verts[u].x;
      const Rational fslope = (lh.verts[v].f - lh.verts[u].f) / dx;
      const Rational gslope = (lh.verts[v].g - lh.verts[u].g) / dx;
      H.q_cut_fns[i][jj] =
          LinearFn{lh.verts[u].f - lh.verts[u].x * fslope, fslope};
      C.q_cut_fns[i][jj] =
          LinearFn{lh.verts[u].g - lh.verts[u].x * gslope, gslope};
    }
    for (std::size_t i = 0; i < np; ++i) {
      const HullResult r = hull_at_nodes(lh.verts, lh.nodes, xs[i]);
      H.vertex_vals[i][jj] = r.value;
      C.vertex_vals[i][jj] = r.co_value;
    }
  }

  merge_rects(plan.rectangles);
  return ConcavifyResult{std::move(H), std::move(C), std::move(plan)};
}

}  // namespace

const PlanRect& StrategyPartition::find(const Rational& p, const Rational& q) const {
  const PlanRect* best = nullptr;
  for (const PlanRect& r : rectangles) {
    if (p < r.p_lo || p > r.p_hi || q < r.q_lo || q > r.q_hi) continue;
    if (best == nullptr || r.p_lo < best->p_lo ||
        (r.p_lo == best->p_lo && r.q_lo < best->q_lo))
      best = &r;
  }
  if (best == nullptr)
    throw std::runtime_error("partition: point not covered by any rectangle");
  return *best;
}

ConcavifyResult concavify(const Surface& mover, const Surface& other, Axis axis) {
  if (axis == Axis::p) return concavify_along_p(mover, other);
  ConcavifyResult r = concavify_along_p(transposed(mover), transposed(other));
  return ConcavifyResult{transposed(r.hulled), transposed(r.co),
                         transpose_plan(r.plan)};
}

bool verify_against_pointwise(const Surface& mover, const Surface& other,
                              const Surface& hulled, const Surface& co, Axis axis,
                              int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("verify: grid_n must be >= 2");
  auto [F, G] = common_refinement(mover, other);
  for (int jj = 0; jj <= grid_n; ++jj) {
    const Rational fixed(jj, grid_n);
    const Slice sf = slice(F, axis, fixed);
    const Slice sg = slice(G, axis, fixed);
    std::vector<HullVertex> verts(sf.xs.size());
    for (std::size_t i = 0; i < sf.xs.size(); ++i)
      verts[i] = HullVertex{sf.xs[i], sf.values[i], sg.values[i]};
    const auto nodes = lex_hull_nodes(verts);
    for (int ii = 0; ii <= grid_n; ++ii) {
      const Rational moving(ii, grid_n);
      const HullResult r = hull_at_nodes(verts, nodes, moving);
      const Rational p = axis == Axis::p ? moving : fixed;
      const Rational q = axis == Axis::p ? fixed : moving;
      if (hulled.eval(p, q) != r.value) return false;
      if (co.eval(p, q) != r.co_value) return false;
    }
  }
  return true;
}

namespace {

json rect_json(const PlanRect& r) {
  return json{{"p", {to_string(r.p_lo), to_string(r.p_hi)}},
              {"q", {to_string(r.q_lo), to_string(r.q_hi)}},
              {"lo", to_string(r.lo)},
              {"hi", to_string(r.hi)},
              {"silent", r.silent}};
}

Rational parse_or_throw(const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw std::runtime_error("partition: bad rational " + text);
  return *r;
}

}  // namespace

std::string partition_to_json(const StrategyPartition& plan) {
  json j;
  j["axis"] = plan.axis == Axis::p ? "p" : "q";
  j["rectangles"] = json::array();
  for (const PlanRect& r : plan.rectangles) j["rectangles"].push_back(rect_json(r));
  return j.dump(2);
}

StrategyPartition partition_from_json(const std::string& text) {
  const json j = json::parse(text);
  StrategyPartition plan;
  plan.axis = j.at("axis").get<std::string>() == "p" ? Axis::p : Axis::q;
  for (const auto& rj : j.at("rectangles")) {
    PlanRect r;
    r.p_lo = parse_or_throw(rj.at("p")[0].get<std::string>());
    r.p_hi = parse_or_throw(rj.at("p")[1].get<std::string>());
    r.q_lo = parse_or_throw(rj.at("q")[0].get<std::string>());
    r.q_hi = parse_or_throw(rj.at("q")[1].get<std::string>());
    r.lo = parse_or_throw(rj.at("lo").get<std::string>());
    r.hi = parse_or_throw(rj.at("hi").get<std::string>());
    r.silent = rj.at("silent").get<bool>();
    plan.rectangles.push_back(std::move(r));
  }
  return plan;
}

}  // namespace commgame
