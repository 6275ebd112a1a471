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

#ifndef COMMGAME_GAMES_HPP_
#define COMMGAME_GAMES_HPP_

#include <array>
#include <string>
#include <vector>

#include "commgame/surface.hpp"

namespace commgame {

// Binary-type base game: two types per side, Sally chooses the action.
// Payoff tables are indexed [action][seller_type][buyer_type].
struct MatrixGame {
  std::array<std::string, 2> seller_types{"0", "1"};
  std::array<std::string, 2> buyer_types{"0", "1"};
  std::vector<std::string> actions;
  std::vector<std::array<std::array<Rational, 2>, 2>> u_S;
  std::vector<std::array<std::array<Rational, 2>, 2>> u_B;
};

// Sally's optimal action per p-region at t=0, labeled "a0/a1" for her two
// types (rendered in the round-0 square diagram).
struct ActionRegion {
  Rational lo, hi;
  std::string label;
};

struct BaseGame {
  Surface seller;  // expected seller payoff over the belief square
  Surface buyer;   // expected buyer payoff, tie-broken in the buyer's favor
  std::vector<ActionRegion> regions;
};

// Base surfaces of a matrix game. p-cuts sit at the crossing points of
// per-type action utilities; values ON a cut use the action that maximizes
// the buyer's payoff among Sally's optimal set.
BaseGame build_matrix(const MatrixGame& g);

// Binary bilateral trade: buyer values v0 < v1, seller costs c_low < c_high,
// all costs below v0. Throws std::invalid_argument on ordering violations.
BaseGame build_trade_binary(const Rational& v0, const Rational& v1,
                            const Rational& c_low, const Rational& c_high);

// Degenerate single-cost variant (the seller's type is known).
BaseGame build_trade_single(const Rational& v0, const Rational& v1,
                            const Rational& cost);

// Parsed game specification file.
struct GameSpec {
  enum class Kind { matrix, trade_binary, trade };
  Kind kind = Kind::matrix;
  std::string name;
  MatrixGame matrix;                  // kind == matrix
  std::vector<Rational> values;       // trade kinds
  std::vector<Rational> costs;        // trade kinds
  std::vector<Rational> buyer_dist;   // kind == trade
  std::vector<Rational> seller_dist;  // kind == trade
};

GameSpec game_spec_from_json(const std::string& text);

// True when the spec describes a binary-type game the square engine can run
// (matrix, trade_binary, or a trade with two values and at most two costs).
bool engine_capable(const GameSpec& spec);
BaseGame build_engine_game(const GameSpec& spec);

// Efficient welfare of an engine-capable trade spec over the belief square,
// as a surface W*(p, q); used for complexity certificates.
bool has_trade_welfare(const GameSpec& spec);
Rational trade_welfare_at(const GameSpec& spec, const Rational& p, const Rational& q);

}  // namespace commgame

#endif  // COMMGAME_GAMES_HPP_
