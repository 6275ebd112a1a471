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

#ifndef COMMGAME_TRADE_HPP_
#define COMMGAME_TRADE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commgame/games.hpp"
#include "commgame/hull.hpp"
#include "commgame/rational.hpp"

namespace commgame {

// Finite bilateral-trade instance: buyer values and seller costs, strictly
// increasing.
struct TradeGame {
  std::vector<Rational> values;
  std::vector<Rational> costs;
};

TradeGame trade_game_from_spec(const GameSpec& spec);

// Probability vector over the type list it is paired with.
struct Dist {
  std::vector<Rational> probs;

  static Dist point_mass(std::size_t index, std::size_t size);
  bool valid() const;
  std::vector<std::size_t> support() const;
};

// A signal: branches of posteriors whose weighted average is the prior.
struct Branch {
  Rational weight;
  Dist posterior;
};
struct Refinement {
  std::vector<Branch> branches;

  Dist mean(std::size_t size) const;
};

// Seller's price for cost index `cost` against the buyer distribution:
// the lowest revenue-maximizing price in the value support.
std::size_t seller_price(const TradeGame& game, std::size_t cost,
                         const Dist& buyer);

// Exact base-game payoffs (seller, buyer) under optimal pricing.
std::pair<Rational, Rational> pi0(const TradeGame& game, const Dist& seller,
                                  const Dist& buyer);

// First-best gains from trade, E[(v - c)^+].
Rational efficient_welfare(const TradeGame& game, const Dist& seller,
                           const Dist& buyer);

// Buyer-optimal one-round signal against a known seller cost: greedy peeling
// into equal-revenue posteriors. Preserves the seller's payoff exactly and
// hands the rest of the surplus to the buyer. Requires every supported value
// to exceed the cost.
Refinement bbm_decompose(const TradeGame& game, std::size_t cost,
                         const Dist& buyer);

// Binary buyer: the seller-type thresholds p*_j = (v0-c_j)/(v1-c_j),
// decreasing in j. Requires every cost below v0.
std::vector<Rational> thresholds(const TradeGame& game);

// Binary buyer: the distribution supported on the cost subset X that aligns
// the buyer's payoff peaks across the thresholds of X.
Dist indifference_dist(const TradeGame& game,
                       const std::vector<std::size_t>& cost_subset);

struct NestedTerm {
  Rational lambda;
  std::vector<std::size_t> support;
  Dist posterior;
};
// Peels a seller distribution into indifference distributions with nested
// supports; each step zeroes at least one coordinate.
struct NestedDecomposition {
  std::vector<NestedTerm> terms;
};
NestedDecomposition nested_decompose(const TradeGame& game, const Dist& seller);

// Buyer's one-round best response for a binary buyer: the lexicographic
// envelope of p -> pi0_B(p, seller) over the threshold breakpoints.
HullResult buyer_one_round(const TradeGame& game, const Dist& seller,
                           const Rational& p_high);

// Realized two-round protocol fragment for a binary buyer.
struct TradeNode {
  int t = 0;
  Rational p_high;
  Dist seller_dist;
  std::optional<char> mover;  // 'S' or 'B'
  bool silent = false;
  Rational payoff_S, payoff_B;
  std::vector<std::pair<Rational, TradeNode>> children;
};
struct TwoRoundResult {
  TradeNode root;
  Rational pi2_S, pi2_B;
  NestedDecomposition decomposition;
};
// Sally refines into the nested indifference distributions; Bob answers each
// one by staying silent below its last threshold or splitting to {p*, 1}.
// The result is efficient: pi2_S + pi2_B = W* and pi2_B = pi1_B, both exact.
TwoRoundResult two_round_protocol(const TradeGame& game, const Dist& seller,
                                  const Rational& p_high);

// The twelve candidate posteriors spanning Bob's best response for games
// with three values and two costs (point masses, pairwise and full-support
// equal-revenue posteriors at each cost, and the mixed double-indifference
// posterior).
std::vector<Dist> twelve_candidates(const TradeGame& game);

// Which participation constraint the best-response LP carries: the
// voluntary-communication bound (seller keeps at least her prior payoff) or
// the literal nonnegativity form.
enum class LpMode { voluntary, literal_zero };

struct BestResponse {
  Rational pi1_B;
  Rational pi1_S;
  std::vector<Rational> weights;  // over the twelve candidates
};
// Two-stage exact LP over the candidate posteriors: maximize the buyer's
// payoff, then the seller's with the buyer's value pinned.
BestResponse lp3_best_response(const TradeGame& game, const Rational& q_high,
                               const Dist& buyer, LpMode mode);

struct Round2Result {
  Rational pi2_S;
  Rational pi2_B;
  std::vector<std::pair<Rational, Rational>> branches;  // (weight, q')
};
// Sally's round-two concavification over a certified candidate q-grid
// (must contain 0, 1 and the prior q). Exact whenever the grid contains all
// breakpoints of the one-round value functions; a lower bound otherwise.
Round2Result round2_concavify(const TradeGame& game, const Rational& q_high,
                              const Dist& buyer,
                              const std::vector<Rational>& candidate_qs,
                              LpMode mode);

// Welfare chain W^0, W^1, ... with the first round index achieving W*, for
// the complexity report. Supports binary-buyer games (any number of costs)
// and the three-value/two-cost LP route.
struct WelfareChain {
  std::vector<Rational> chain;
  Rational w_star;
  std::optional<int> exact_t;
};
WelfareChain welfare_chain(const TradeGame& game, const Dist& seller,
                           const Dist& buyer, LpMode mode,
                           const std::vector<Rational>& qgrid);

std::string trade_tree_to_json(const TradeNode& node);

}  // namespace commgame

#endif  // COMMGAME_TRADE_HPP_
