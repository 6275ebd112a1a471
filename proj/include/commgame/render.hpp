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

#ifndef COMMGAME_RENDER_HPP_
#define COMMGAME_RENDER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "commgame/dynamics.hpp"
#include "commgame/games.hpp"

namespace commgame {

struct PayoffRow {
  int t = 0;
  std::optional<Mover> mover;
  Rational pi_S, pi_B;
};

std::vector<PayoffRow> payoff_rows(const std::vector<RoundLog>& logs,
                                   const Rational& p, const Rational& q);

// Exact rationals rendered alongside three-decimal rounding; the optional
// welfare target adds a W* line.
std::string payoff_table_text(const std::vector<PayoffRow>& rows,
                              const std::optional<Rational>& w_star);
std::string payoff_table_csv(const std::vector<PayoffRow>& rows);
std::string payoff_table_json(const std::vector<PayoffRow>& rows,
                              const std::optional<Rational>& w_star);

// Belief-square diagrams: dashed grid lines at the cut coordinates with
// exact labels, blue horizontal arrows for the buyer's p-splits and red
// vertical arrows for the seller's q-splits.
std::string partition_dot(const StrategyPartition& plan);
std::string partition_svg(const StrategyPartition& plan);

// Round-zero diagram: the seller's action regions, labeled "a0/a1".
std::string regions_dot(const std::vector<ActionRegion>& regions);
std::string regions_svg(const std::vector<ActionRegion>& regions);

std::string tree_dot(const TreeNode& root);

}  // namespace commgame

#endif  // COMMGAME_RENDER_HPP_
