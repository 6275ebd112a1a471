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

#include "commgame/games.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace commgame {

namespace {

using nlohmann::json;

// Sally's expected utility of an action against belief p, per her type.
LinearFn utility_line(const std::array<std::array<Rational, 2>, 2>& u, int theta_s) {
  return LinearFn{u[theta_s][0], u[theta_s][1] - u[theta_s][0]};
}

// Index of the optimal action at belief p for seller type theta_s:
// maximize Sally's utility, then the buyer's, then lowest index.
std::size_t best_action(const MatrixGame& g, int theta_s, const Rational& p) {
  std::size_t best = 0;
  Rational best_s = utility_line(g.u_S[0], theta_s).at(p);
  Rational best_b = utility_line(g.u_B[0], theta_s).at(p);
  for (std::size_t a = 1; a < g.actions.size(); ++a) {
    const Rational s = utility_line(g.u_S[a], theta_s).at(p);
    const Rational b = utility_line(g.u_B[a], theta_s).at(p);
    if (s > best_s || (s == best_s && b > best_b)) {
      best = a;
      best_s = s;
      best_b = b;
    }
  }
  return best;
}

}  // namespace

BaseGame build_matrix(const MatrixGame& g) {
  if (g.actions.empty()) throw std::invalid_argument("matrix game: no actions");
  if (g.u_S.size() != g.actions.size() || g.u_B.size() != g.actions.size())
    throw std::invalid_argument("matrix game: payoff table size mismatch");

  // Candidate cuts: crossings of any two utility lines of either player for
  // either seller type. Between consecutive candidates the lexicographic
  // argmax is constant. Redundant cuts are pruned at the end.
  std::set<Rational> cuts{0, 1};
  for (int theta_s = 0; theta_s < 2; ++theta_s) {
    for (const auto& tables : {g.u_S, g.u_B}) {
      for (std::size_t a = 0; a < tables.size(); ++a)
        for (std::size_t b = a + 1; b < tables.size(); ++b) {
          const LinearFn fa = utility_line(tables[a], theta_s);
          const LinearFn fb = utility_line(tables[b], theta_s);
          if (fa.b == fb.b) continue;
          const Rational root = (fb.a - fa.a) / (fa.b - fb.b);
          if (root > 0 && root < 1) cuts.insert(root);
        }
    }
  }

  Surface seller, buyer;
  seller.grid.p_cuts.assign(cuts.begin(), cuts.end());
  seller.grid.q_cuts = {0, 1};
  buyer.grid = seller.grid;
  const std::size_t np = seller.grid.p_cuts.size();

  std::vector<ActionRegion> regions;
  seller.cells.assign(np - 1, std::vector<Bilinear>(1));
  buyer.cells.assign(np - 1, std::vector<Bilinear>(1));
  seller.q_cut_fns.assign(np - 1, std::vector<LinearFn>(2));
  buyer.q_cut_fns.assign(np - 1, std::vector<LinearFn>(2));
  for (std::size_t i = 0; i + 1 < np; ++i) {
    const Rational mid = (seller.grid.p_cuts[i] + seller.grid.p_cuts[i + 1]) / 2;
    const std::size_t a0 = best_action(g, 0, mid);
    const std::size_t a1 = best_action(g, 1, mid);
    const LinearFn s0 = utility_line(g.u_S[a0], 0), s1 = utility_line(g.u_S[a1], 1);
    const LinearFn b0 = utility_line(g.u_B[a0], 0), b1 = utility_line(g.u_B[a1], 1);
    // (1-q) * f0(p) + q * f1(p), expanded to bilinear coefficients.
    seller.cells[i][0] = Bilinear{s0.a, s0.b, s1.a - s0.a, s1.b - s0.b};
    buyer.cells[i][0] = Bilinear{b0.a, b0.b, b1.a - b0.a, b1.b - b0.b};
    for (int e = 0; e < 2; ++e) {
      seller.q_cut_fns[i][e] = seller.cells[i][0].restrict_q(e);
      buyer.q_cut_fns[i][e] = buyer.cells[i][0].restrict_q(e);
    }
    regions.push_back(ActionRegion{seller.grid.p_cuts[i], seller.grid.p_cuts[i + 1],
                                   g.actions[a0] + "/" + g.actions[a1]});
  }

  seller.p_cut_fns.assign(np, std::vector<LinearFn>(1));
  buyer.p_cut_fns.assign(np, std::vector<LinearFn>(1));
  seller.vertex_vals.assign(np, std::vector<Rational>(2));
  buyer.vertex_vals.assign(np, std::vector<Rational>(2));
  for (std::size_t i = 0; i < np; ++i) {
    const Rational& x = seller.grid.p_cuts[i];
    const std::size_t a0 = best_action(g, 0, x);
    const std::size_t a1 = best_action(g, 1, x);
    const Rational s0 = utility_line(g.u_S[a0], 0).at(x);
    const Rational s1 = utility_line(g.u_S[a1], 1).at(x);
    const Rational b0 = utility_line(g.u_B[a0], 0).at(x);
    const Rational b1 = utility_line(g.u_B[a1], 1).at(x);
    seller.p_cut_fns[i][0] = LinearFn{s0, s1 - s0};
    buyer.p_cut_fns[i][0] = LinearFn{b0, b1 - b0};
    seller.vertex_vals[i][0] = s0;
    seller.vertex_vals[i][1] = s1;
    buyer.vertex_vals[i][0] = b0;
    buyer.vertex_vals[i][1] = b1;
  }

  BaseGame out{pruned(seller), pruned(buyer), std::move(regions)};
  validate(out.seller);
  validate(out.buyer);

  // Merge regions whose label did not change across a pruned cut.
  std::vector<ActionRegion> merged;
  for (const ActionRegion& r : out.regions) {
    if (!merged.empty() && merged.back().label == r.label &&
        merged.back().hi == r.lo) {
      merged.back().hi = r.hi;
    } else {
      merged.push_back(r);
    }
  }
  out.regions = std::move(merged);
  return out;
}

namespace {

MatrixGame trade_matrix(const std::vector<Rational>& values,
                        const std::array<Rational, 2>& costs,
                        const std::array<std::string, 2>& cost_labels) {
  MatrixGame g;
  g.seller_types = cost_labels;
  g.buyer_types = {to_string(values[0]), to_string(values[1])};
  for (const Rational& price : values) {
    g.actions.push_back(to_string(price));
    std::array<std::array<Rational, 2>, 2> us, ub;
    for (int s = 0; s < 2; ++s)
      for (int b = 0; b < 2; ++b) {
        const bool trades = values[b] >= price;
        us[s][b] = trades ? price - costs[s] : Rational(0);
        ub[s][b] = trades ? values[b] - price : Rational(0);
      }
    g.u_S.push_back(us);
    g.u_B.push_back(ub);
  }
  return g;
}

}  // namespace

BaseGame build_trade_binary(const Rational& v0, const Rational& v1,
                            const Rational& c_low, const Rational& c_high) {
  if (!(c_low < c_high && c_high < v0 && v0 < v1))
    throw std::invalid_argument("trade game requires c_low < c_high < v0 < v1");
  return build_matrix(trade_matrix({v0, v1}, {c_low, c_high},
                                   {to_string(c_low), to_string(c_high)}));
}

BaseGame build_trade_single(const Rational& v0, const Rational& v1,
                            const Rational& cost) {
  if (!(cost < v0 && v0 < v1))
    throw std::invalid_argument("trade game requires cost < v0 < v1");
  return build_matrix(
      trade_matrix({v0, v1}, {cost, cost}, {to_string(cost), to_string(cost)}));
}

namespace {

Rational parse_rat_field(const json& j) {
  auto r = parse_rational(j.get<std::string>());
  if (!r) throw std::runtime_error("game spec: bad rational " + j.get<std::string>());
  return *r;
}

std::vector<Rational> parse_rat_list(const json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(parse_rat_field(e));
  return out;
}

}  // namespace

GameSpec game_spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  GameSpec spec;
  spec.name = j.value("name", "");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "matrix") {
    spec.kind = GameSpec::Kind::matrix;
    MatrixGame& g = spec.matrix;
    if (j.contains("seller_types")) {
      g.seller_types = {j.at("seller_types")[0].get<std::string>(),
                        j.at("seller_types")[1].get<std::string>()};
    }
    if (j.contains("buyer_types")) {
      g.buyer_types = {j.at("buyer_types")[0].get<std::string>(),
                       j.at("buyer_types")[1].get<std::string>()};
    }
    for (const auto& a : j.at("actions")) g.actions.push_back(a.get<std::string>());
    for (const std::string& a : g.actions) {
      std::array<std::array<Rational, 2>, 2> us, ub;
      const json& jus = j.at("u_S").at(a);
      const json& jub = j.at("u_B").at(a);
      for (int s = 0; s < 2; ++s)
        for (int b = 0; b < 2; ++b) {
          us[s][b] = parse_rat_field(jus[s][b]);
          ub[s][b] = parse_rat_field(jub[s][b]);
        }
      g.u_S.push_back(us);
      g.u_B.push_back(ub);
    }
  } else if (kind == "trade_binary" || kind == "trade") {
    spec.kind = kind == "trade" ? GameSpec::Kind::trade : GameSpec::Kind::trade_binary;
    spec.values = parse_rat_list(j.at("values"));
    spec.costs = parse_rat_list(j.at("costs"));
    if (j.contains("buyer_dist")) spec.buyer_dist = parse_rat_list(j.at("buyer_dist"));
    if (j.contains("seller_dist"))
      spec.seller_dist = parse_rat_list(j.at("seller_dist"));
    if (!std::is_sorted(spec.values.begin(), spec.values.end()) ||
        !std::is_sorted(spec.costs.begin(), spec.costs.end()))
      throw std::runtime_error("game spec: values and costs must be increasing");
  } else {
    throw std::runtime_error("game spec: unknown kind " + kind);
  }
  return spec;
}

bool engine_capable(const GameSpec& spec) {
  switch (spec.kind) {
    case GameSpec::Kind::matrix:
      return true;
    case GameSpec::Kind::trade_binary:
      return spec.values.size() == 2 && spec.costs.size() == 2;
    case GameSpec::Kind::trade:
      return spec.values.size() == 2 &&
             (spec.costs.size() == 1 || spec.costs.size() == 2);
  }
  return false;
}

BaseGame build_engine_game(const GameSpec& spec) {
  if (spec.kind == GameSpec::Kind::matrix) return build_matrix(spec.matrix);
  if (!engine_capable(spec))
    throw std::invalid_argument(
        "game spec: square engine needs two buyer values and at most two costs");
  if (spec.costs.size() == 1)
    return build_trade_single(spec.values[0], spec.values[1], spec.costs[0]);
  return build_trade_binary(spec.values[0], spec.values[1], spec.costs[0],
                            spec.costs[1]);
}

bool has_trade_welfare(const GameSpec& spec) {
  return spec.kind != GameSpec::Kind::matrix && engine_capable(spec);
}

Rational trade_welfare_at(const GameSpec& spec, const Rational& p, const Rational& q) {
  if (!has_trade_welfare(spec)) throw std::invalid_argument("not a square trade game");
  const Rational& v0 = spec.values[0];
  const Rational& v1 = spec.values[1];
  const Rational c_lo = spec.costs[0];
  const Rational c_hi = spec.costs.size() == 2 ? spec.costs[1] : spec.costs[0];
  auto plus = [](const Rational& r) { return r > 0 ? r : Rational(0); };
  return (1 - q) * ((1 - p) * plus(v0 - c_lo) + p * plus(v1 - c_lo)) +
         q * ((1 - p) * plus(v0 - c_hi) + p * plus(v1 - c_hi));
}

}  // namespace commgame
