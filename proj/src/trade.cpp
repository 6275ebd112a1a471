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

#include "commgame/trade.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "commgame/lp.hpp"

namespace commgame {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("trade: " + what);
}

void check_game(const TradeGame& game) {
  if (game.values.empty() || game.costs.empty()) fail("empty type space");
  for (std::size_t i = 0; i + 1 < game.values.size(); ++i)
    if (!(game.values[i] < game.values[i + 1])) fail("values must increase");
  for (std::size_t i = 0; i + 1 < game.costs.size(); ++i)
    if (!(game.costs[i] < game.costs[i + 1])) fail("costs must increase");
}

void check_dist(const Dist& d, std::size_t size, const char* name) {
  if (d.probs.size() != size || !d.valid()) fail(std::string(name) + ": invalid distribution");
}

void check_binary_buyer(const TradeGame& game) {
  if (game.values.size() != 2) fail("operation needs exactly two buyer values");
  if (!(game.costs.back() < game.values[0]))
    fail("operation needs every cost below the low value");
}

}  // namespace

TradeGame trade_game_from_spec(const GameSpec& spec) {
  if (spec.kind == GameSpec::Kind::matrix) fail("matrix spec is not a trade game");
  TradeGame game{spec.values, spec.costs};
  check_game(game);
  return game;
}

Dist Dist::point_mass(std::size_t index, std::size_t size) {
  Dist d;
  d.probs.assign(size, 0);
  d.probs.at(index) = 1;
  return d;
}

bool Dist::valid() const {
  Rational sum = 0;
  for (const Rational& p : probs) {
    if (p < 0) return false;
    sum += p;
  }
  return sum == 1;
}

std::vector<std::size_t> Dist::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > 0) out.push_back(i);
  return out;
}

Dist Refinement::mean(std::size_t size) const {
  Dist out;
  out.probs.assign(size, 0);
  for (const Branch& b : branches)
    for (std::size_t i = 0; i < size; ++i) out.probs[i] += b.weight * b.posterior.probs[i];
  return out;
}

std::size_t seller_price(const TradeGame& game, std::size_t cost, const Dist& buyer) {
  check_game(game);
  check_dist(buyer, game.values.size(), "buyer");
  if (cost >= game.costs.size()) fail("cost index out of range");
  const Rational c = game.costs[cost];
  std::size_t best = 0;
  Rational best_revenue;
  bool have = false;
  Rational tail = 1;
  for (std::size_t k = 0; k < game.values.size(); ++k) {
    // Pr[buyer value >= v_k] shrinks as the price walks up the support.
    const Rational revenue = tail * (game.values[k] - c);
    if (!have || revenue > best_revenue) {
      best = k;
      best_revenue = revenue;
      have = true;
    }
    tail -= buyer.probs[k];
  }
  return best;
}

std::pair<Rational, Rational> pi0(const TradeGame& game, const Dist& seller,
                                  const Dist& buyer) {
  check_game(game);
  check_dist(seller, game.costs.size(), "seller");
  check_dist(buyer, game.values.size(), "buyer");
  Rational pi_s = 0, pi_b = 0;
  for (std::size_t i = 0; i < game.costs.size(); ++i) {
    if (seller.probs[i] == 0) continue;
    const std::size_t k = seller_price(game, i, buyer);
    const Rational price = game.values[k];
    Rational sell_prob = 0, buyer_gain = 0;
    for (std::size_t j = k; j < game.values.size(); ++j) {
      sell_prob += buyer.probs[j];
      buyer_gain += buyer.probs[j] * (game.values[j] - price);
    }
    const Rational seller_gain = sell_prob * (price - game.costs[i]);
    if (seller_gain < 0) continue;  // pricing out of the support beats selling
    pi_s += seller.probs[i] * seller_gain;
    pi_b += seller.probs[i] * buyer_gain;
  }
  return {pi_s, pi_b};
}

Rational efficient_welfare(const TradeGame& game, const Dist& seller,
                           const Dist& buyer) {
  check_game(game);
  check_dist(seller, game.costs.size(), "seller");
  check_dist(buyer, game.values.size(), "buyer");
  Rational w = 0;
  for (std::size_t i = 0; i < game.costs.size(); ++i)
    for (std::size_t j = 0; j < game.values.size(); ++j) {
      const Rational gain = game.values[j] - game.costs[i];
      if (gain > 0) w += seller.probs[i] * buyer.probs[j] * gain;
    }
  return w;
}

Refinement bbm_decompose(const TradeGame& game, std::size_t cost, const Dist& buyer) {
  check_game(game);
  check_dist(buyer, game.values.size(), "buyer");
  if (cost >= game.costs.size()) fail("cost index out of range");
  const Rational c = game.costs[cost];
  for (const std::size_t j : buyer.support())
    if (!(game.values[j] > c)) fail("bbm: supported value at or below the cost");

  Refinement out;
  std::vector<Rational> residual = buyer.probs;
  while (true) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < residual.size(); ++j)
      if (residual[j] > 0) support.push_back(j);
    if (support.empty()) break;
    Rational mass = 0;
    for (const std::size_t j : support) mass += residual[j];
    if (support.size() == 1) {
      out.branches.push_back(Branch{mass, Dist::point_mass(support[0], residual.size())});
      break;
    }
    // Equal-revenue posterior anchored at the lowest supported value:
    // Pr[v >= v_j] = (v_min - c) / (v_j - c).
    const Rational anchor = game.values[support.front()] - c;
    Dist er;
    er.probs.assign(residual.size(), 0);
    for (std::size_t s = 0; s < support.size(); ++s) {
      const Rational tail_here = anchor / (game.values[support[s]] - c);
      const Rational tail_next =
          s + 1 < support.size() ? anchor / (game.values[support[s + 1]] - c)
                                 : Rational(0);
      er.probs[support[s]] = tail_here - tail_next;
    }
    Rational z;
    bool have = false;
    for (const std::size_t j : support) {
      const Rational ratio = residual[j] / er.probs[j];
      if (!have || ratio < z) {
        z = ratio;
        have = true;
      }
    }
    out.branches.push_back(Branch{z, er});
    for (const std::size_t j : support) residual[j] -= z * er.probs[j];
  }
  return out;
}

std::vector<Rational> thresholds(const TradeGame& game) {
  check_game(game);
  check_binary_buyer(game);
  const Rational& v0 = game.values[0];
  const Rational& v1 = game.values[1];
  std::vector<Rational> out;
  out.reserve(game.costs.size());
  for (const Rational& c : game.costs) out.push_back((v0 - c) / (v1 - c));
  return out;
}

Dist indifference_dist(const TradeGame& game,
                       const std::vector<std::size_t>& cost_subset) {
  check_game(game);
  check_binary_buyer(game);
  if (cost_subset.empty()) fail("indifference distribution needs a nonempty subset");
  for (std::size_t s = 0; s + 1 < cost_subset.size(); ++s)
    if (!(cost_subset[s] < cost_subset[s + 1])) fail("cost subset must increase");
  if (cost_subset.back() >= game.costs.size()) fail("cost subset out of range");

  const std::vector<Rational> pstar = thresholds(game);
  const Rational last = pstar[cost_subset.back()];
  if (last == 1) fail("indifference distribution undefined: last threshold is 1");
  const Rational denom = 1 / last - 1;
  Dist out;
  out.probs.assign(game.costs.size(), 0);
  Rational prev_inv = 1;  // 1/p*_0 with the p*_0 = 1 convention
  for (const std::size_t x : cost_subset) {
    const Rational inv = 1 / pstar[x];
    out.probs[x] = (inv - prev_inv) / denom;
    prev_inv = inv;
  }
  return out;
}

NestedDecomposition nested_decompose(const TradeGame& game, const Dist& seller) {
  check_game(game);
  check_binary_buyer(game);
  check_dist(seller, game.costs.size(), "seller");

  NestedDecomposition out;
  Dist current = seller;
  Rational remaining = 1;
  while (true) {
    const std::vector<std::size_t> support = current.support();
    const Dist qx = indifference_dist(game, support);
    Rational z;
    bool have = false;
    for (const std::size_t i : support) {
      const Rational ratio = current.probs[i] / qx.probs[i];
      if (!have || ratio < z) {
        z = ratio;
        have = true;
      }
    }
    if (z >= 1) {
      out.terms.push_back(NestedTerm{remaining, support, qx});
      break;
    }
    out.terms.push_back(NestedTerm{remaining * z, support, qx});
    Dist next;
    next.probs.assign(current.probs.size(), 0);
    for (const std::size_t i : support)
      next.probs[i] = (current.probs[i] - z * qx.probs[i]) / (1 - z);
    current = next;
    remaining *= (1 - z);
  }
  return out;
}

HullResult buyer_one_round(const TradeGame& game, const Dist& seller,
                           const Rational& p_high) {
  check_game(game);
  check_binary_buyer(game);
  check_dist(seller, game.costs.size(), "seller");
  if (p_high < 0 || p_high > 1) fail("p outside [0,1]");

  std::vector<Rational> xs{0, 1};
  for (const Rational& p : thresholds(game)) xs.push_back(p);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<HullVertex> verts;
  verts.reserve(xs.size());
  for (const Rational& x : xs) {
    Dist buyer;
    buyer.probs = {1 - x, x};
    const auto [s, b] = pi0(game, seller, buyer);
    verts.push_back(HullVertex{x, b, s});
  }
  return lex_hull_at(verts, p_high);
}

TwoRoundResult two_round_protocol(const TradeGame& game, const Dist& seller,
                                  const Rational& p_high) {
  check_game(game);
  check_binary_buyer(game);
  check_dist(seller, game.costs.size(), "seller");
  if (p_high < 0 || p_high > 1) fail("p outside [0,1]");

  const std::vector<Rational> pstar = thresholds(game);
  TwoRoundResult out;
  out.decomposition = nested_decompose(game, seller);

  auto leaf = [&](const Rational& p, const Dist& q) {
    TradeNode node;
    node.t = 0;
    node.p_high = p;
    node.seller_dist = q;
    Dist buyer;
    buyer.probs = {1 - p, p};
    const auto [s, b] = pi0(game, q, buyer);
    node.payoff_S = s;
    node.payoff_B = b;
    return node;
  };

  TradeNode root;
  root.t = 2;
  root.p_high = p_high;
  root.seller_dist = seller;
  root.mover = 'S';
  root.payoff_S = 0;
  root.payoff_B = 0;
  for (const NestedTerm& term : out.decomposition.terms) {
    TradeNode mid;
    mid.t = 1;
    mid.p_high = p_high;
    mid.seller_dist = term.posterior;
    mid.mover = 'B';
    const Rational& cutoff = pstar[term.support.back()];
    if (p_high <= cutoff) {
      mid.silent = true;
      mid.children.emplace_back(Rational(1), leaf(p_high, term.posterior));
    } else {
      const Rational w_low = (1 - p_high) / (1 - cutoff);
      mid.children.emplace_back(w_low, leaf(cutoff, term.posterior));
      mid.children.emplace_back(1 - w_low, leaf(Rational(1), term.posterior));
    }
    mid.payoff_S = 0;
    mid.payoff_B = 0;
    for (const auto& [w, child] : mid.children) {
      mid.payoff_S += w * child.payoff_S;
      mid.payoff_B += w * child.payoff_B;
    }
    root.payoff_S += term.lambda * mid.payoff_S;
    root.payoff_B += term.lambda * mid.payoff_B;
    root.children.emplace_back(term.lambda, std::move(mid));
  }
  root.silent = out.decomposition.terms.size() == 1 &&
                out.decomposition.terms[0].posterior.probs == seller.probs;
  out.pi2_S = root.payoff_S;
  out.pi2_B = root.payoff_B;
  out.root = std::move(root);

  // Exactness checks forced by the construction: the buyer keeps his
  // one-round payoff and the allocation extracts the full surplus.
  Dist buyer;
  buyer.probs = {1 - p_high, p_high};
  const HullResult one_round = buyer_one_round(game, seller, p_high);
  if (out.pi2_B != one_round.value)
    throw std::runtime_error("trade: two-round buyer payoff mismatch");
  if (out.pi2_S + out.pi2_B != efficient_welfare(game, seller, buyer))
    throw std::runtime_error("trade: two-round allocation is not efficient");
  return out;
}

std::vector<Dist> twelve_candidates(const TradeGame& game) {
  check_game(game);
  if (game.values.size() != 3 || game.costs.size() != 2)
    fail("candidate set needs three values and two costs");
  if (!(game.costs[1] < game.values[0]))
    fail("candidate set needs both costs below the lowest value");
  const Rational& v1 = game.values[0];
  const Rational& v2 = game.values[1];
  const Rational& v3 = game.values[2];

  std::vector<Dist> out;
  for (std::size_t j = 0; j < 3; ++j) out.push_back(Dist::point_mass(j, 3));

  // Two-point posteriors with the seller indifferent at one cost:
  // Pr[high] = (v_lo - c) / (v_hi - c).
  for (const Rational& c : game.costs) {
    const std::array<std::pair<std::size_t, std::size_t>, 3> pairs{
        {{0, 1}, {0, 2}, {1, 2}}};
    for (const auto& [lo, hi] : pairs) {
      Dist d;
      d.probs.assign(3, 0);
      const Rational ph = (game.values[lo] - c) / (game.values[hi] - c);
      d.probs[lo] = 1 - ph;
      d.probs[hi] = ph;
      out.push_back(std::move(d));
    }
  }
  // Full-support equal-revenue posteriors at each cost.
  for (const Rational& c : game.costs) {
    Dist d;
    d.probs.assign(3, 0);
    const Rational t2 = (v1 - c) / (v2 - c);
    const Rational t3 = (v1 - c) / (v3 - c);
    d.probs[0] = 1 - t2;
    d.probs[1] = t2 - t3;
    d.probs[2] = t3;
    out.push_back(std::move(d));
  }
  // The mixed posterior: indifferent between v1 and v2 at the low cost and
  // between v2 and v3 at the high cost.
  {
    const Rational p23 = (v1 - game.costs[0]) / (v2 - game.costs[0]);
    const Rational p3 = p23 * (v2 - game.costs[1]) / (v3 - game.costs[1]);
    Dist d;
    d.probs = {1 - p23, p23 - p3, p3};
    out.push_back(std::move(d));
  }
  return out;
}

BestResponse lp3_best_response(const TradeGame& game, const Rational& q_high,
                               const Dist& buyer, LpMode mode) {
  check_game(game);
  check_dist(buyer, game.values.size(), "buyer");
  if (q_high < 0 || q_high > 1) fail("q outside [0,1]");
  const std::vector<Dist> candidates = twelve_candidates(game);
  Dist seller;
  seller.probs = {1 - q_high, q_high};

  std::vector<Rational> payoff_b(candidates.size()), payoff_s(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto [s, b] = pi0(game, seller, candidates[i]);
    payoff_s[i] = s;
    payoff_b[i] = b;
  }
  const auto [prior_s, prior_b] = pi0(game, seller, buyer);

  std::vector<LpConstraint> constraints;
  // Bayes plausibility: candidate mixture averages to the prior. The last
  // coordinate is implied by the others plus the total-mass row.
  for (std::size_t k = 0; k + 1 < game.values.size(); ++k) {
    LpConstraint c;
    c.rel = Relation::eq;
    c.rhs = buyer.probs[k];
    for (const Dist& cand : candidates) c.coeffs.push_back(cand.probs[k]);
    constraints.push_back(std::move(c));
  }
  {
    LpConstraint c;
    c.rel = Relation::eq;
    c.rhs = 1;
    c.coeffs.assign(candidates.size(), 1);
    constraints.push_back(std::move(c));
  }
  {
    LpConstraint c;
    c.rel = Relation::ge;
    c.coeffs = payoff_s;
    c.rhs = mode == LpMode::voluntary ? prior_s : Rational(0);
    constraints.push_back(std::move(c));
  }

  const LpSolution sol = lex_solve(payoff_b, payoff_s, constraints);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("trade: best-response LP not optimal");
  Rational stage1 = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    stage1 += payoff_b[i] * sol.point[i];
  return BestResponse{stage1, sol.value, sol.point};
}

Round2Result round2_concavify(const TradeGame& game, const Rational& q_high,
                              const Dist& buyer,
                              const std::vector<Rational>& candidate_qs,
                              LpMode mode) {
  std::vector<Rational> qs = candidate_qs;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  const bool has_ends = std::binary_search(qs.begin(), qs.end(), Rational(0)) &&
                        std::binary_search(qs.begin(), qs.end(), Rational(1));
  if (!has_ends || !std::binary_search(qs.begin(), qs.end(), q_high))
    fail("round-2 candidate grid must contain 0, 1 and the prior q");

  std::vector<Rational> s1(qs.size()), b1(qs.size());
  for (std::size_t u = 0; u < qs.size(); ++u) {
    const BestResponse br = lp3_best_response(game, qs[u], buyer, mode);
    s1[u] = br.pi1_S;
    b1[u] = br.pi1_B;
  }
  const std::size_t prior_index =
      static_cast<std::size_t>(std::lower_bound(qs.begin(), qs.end(), q_high) -
                               qs.begin());

  std::vector<LpConstraint> constraints;
  {
    LpConstraint c;
    c.rel = Relation::eq;
    c.rhs = q_high;
    c.coeffs = qs;
    constraints.push_back(std::move(c));
  }
  {
    LpConstraint c;
    c.rel = Relation::eq;
    c.rhs = 1;
    c.coeffs.assign(qs.size(), 1);
    constraints.push_back(std::move(c));
  }
  {
    LpConstraint c;  // Sally must keep her one-round payoff.
    c.rel = Relation::ge;
    c.coeffs = s1;
    c.rhs = s1[prior_index];
    constraints.push_back(std::move(c));
  }
  {
    LpConstraint c;  // Bob must keep his.
    c.rel = Relation::ge;
    c.coeffs = b1;
    c.rhs = b1[prior_index];
    constraints.push_back(std::move(c));
  }

  const LpSolution sol = lex_solve(s1, b1, constraints);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("trade: round-2 LP not optimal");
  Round2Result out;
  out.pi2_B = sol.value;
  out.pi2_S = 0;
  for (std::size_t u = 0; u < qs.size(); ++u) out.pi2_S += s1[u] * sol.point[u];
  for (std::size_t u = 0; u < qs.size(); ++u)
    if (sol.point[u] > 0) out.branches.emplace_back(sol.point[u], qs[u]);
  return out;
}

WelfareChain welfare_chain(const TradeGame& game, const Dist& seller,
                           const Dist& buyer, LpMode mode,
                           const std::vector<Rational>& qgrid) {
  check_game(game);
  check_dist(seller, game.costs.size(), "seller");
  check_dist(buyer, game.values.size(), "buyer");

  WelfareChain out;
  out.w_star = efficient_welfare(game, seller, buyer);
  const auto [s0, b0] = pi0(game, seller, buyer);
  out.chain.push_back(s0 + b0);

  if (game.values.size() == 2 && game.costs.back() < game.values[0]) {
    const Rational p_high = buyer.probs[1];
    const HullResult r1 = buyer_one_round(game, seller, p_high);
    out.chain.push_back(r1.value + r1.co_value);
    if (out.chain.back() != out.w_star) {
      const TwoRoundResult r2 = two_round_protocol(game, seller, p_high);
      out.chain.push_back(r2.pi2_S + r2.pi2_B);
    }
  } else if (game.values.size() == 3 && game.costs.size() == 2 &&
             game.costs[1] < game.values[0]) {
    const Rational q_high = seller.probs[1];
    const BestResponse r1 = lp3_best_response(game, q_high, buyer, mode);
    out.chain.push_back(r1.pi1_S + r1.pi1_B);
    if (out.chain.back() != out.w_star) {
      std::vector<Rational> qs = qgrid;
      qs.push_back(0);
      qs.push_back(1);
      qs.push_back(q_high);
      const Round2Result r2 = round2_concavify(game, q_high, buyer, qs, mode);
      out.chain.push_back(r2.pi2_S + r2.pi2_B);
    }
  }

  for (std::size_t t = 0; t < out.chain.size(); ++t)
    if (out.chain[t] == out.w_star) {
      out.exact_t = static_cast<int>(t);
      break;
    }
  return out;
}

namespace {

json trade_tree_json(const TradeNode& node) {
  json j;
  j["t"] = node.t;
  json qprobs = json::array();
  for (const Rational& p : node.seller_dist.probs) qprobs.push_back(to_string(p));
  j["belief"] = {{"p", to_string(node.p_high)}, {"q", std::move(qprobs)}};
  if (node.mover) {
    j["mover"] = std::string(1, *node.mover);
    j["silent"] = node.silent;
  }
  j["payoff_S"] = to_string(node.payoff_S);
  j["payoff_B"] = to_string(node.payoff_B);
  j["payoff_S_dec"] = to_decimal3(node.payoff_S);
  j["payoff_B_dec"] = to_decimal3(node.payoff_B);
  if (!node.children.empty()) {
    j["children"] = json::array();
    for (const auto& [prob, child] : node.children)
      j["children"].push_back(
          json{{"probability", to_string(prob)}, {"node", trade_tree_json(child)}});
  }
  return j;
}

}  // namespace

std::string trade_tree_to_json(const TradeNode& node) {
  return trade_tree_json(node).dump(2);
}

}  // namespace commgame
