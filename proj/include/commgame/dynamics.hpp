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

#ifndef COMMGAME_DYNAMICS_HPP_
#define COMMGAME_DYNAMICS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commgame/concavify.hpp"
#include "commgame/surface.hpp"

namespace commgame {

enum class Mover { bob, sally };

// Round indices follow the t-to-last convention: t counts how many messages
// remain. Bob moves at odd t (refining p), Sally at even t (refining q).
struct RoundLog {
  int t = 0;
  std::optional<Mover> mover;  // empty for the base row t=0
  Surface pi_S;
  Surface pi_B;
  std::optional<StrategyPartition> plan;
};

// Backward induction: log[t] carries the payoff surfaces of the t-round
// protocol. Requires the base pair convex along the respective own axes
// (buyer along q, seller along p); otherwise refinements need not be
// voluntary and the engine refuses to run.
std::vector<RoundLog> run(const Surface& base_S, const Surface& base_B, int rounds);

struct TreeNode {
  int t = 0;
  Rational p, q;
  std::optional<Mover> mover;  // empty at leaves
  bool silent = false;
  Rational payoff_S, payoff_B;
  std::vector<std::pair<Rational, TreeNode>> children;  // (probability, node)
};

// Realized protocol from a start belief. Every split is recomputed pointwise
// from the continuation surfaces (the source of truth) and must agree with
// both the stored plan and the stored payoff surfaces.
TreeNode trace(const std::vector<RoundLog>& logs, const Rational& p,
               const Rational& q);

// Smallest t whose surfaces are jointly concave along the movers' own axes;
// from there on every round is the identity.
std::optional<int> detect_fixed_point(const std::vector<RoundLog>& logs);

enum class ComplexityKind { exact, lower_bound };
enum class ComplexityCertificate { fixed_point, efficiency, horizon };

struct ComplexityReport {
  ComplexityKind kind = ComplexityKind::lower_bound;
  int value = 0;
  ComplexityCertificate certificate = ComplexityCertificate::horizon;
};

// Message complexity at a start belief. Exact only under a certificate:
// total payoff reaches w_star (efficiency), or the surfaces stop changing
// (fixed point) and the stabilized total is attained at the reported round.
// Otherwise the horizon is a lower bound.
ComplexityReport message_complexity(const std::vector<RoundLog>& logs,
                                    const Rational& p, const Rational& q,
                                    const std::optional<Rational>& w_star);

std::string tree_to_json(const TreeNode& node);
std::string complexity_to_json(const ComplexityReport& report);

}  // namespace commgame

#endif  // COMMGAME_DYNAMICS_HPP_
