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

#include "commgame/dynamics.hpp"
#include "commgame/games.hpp"
#include "test_util.hpp"

using namespace commgame;

namespace {

std::vector<RoundLog> run_trade32(int rounds) {
  const BaseGame base = build_trade_binary(rat(3), rat(6), rat(0), rat(2));
  return run(base.seller, base.buyer, rounds);
}

}  // namespace

TEST_CASE("two-value trade reaches the efficient outcome in two rounds") {
  const auto logs = run_trade32(2);
  const Rational p(1, 3), q(1, 2);
  CHECK(logs[0].pi_S.eval(p, q) == rat(13, 6));
  CHECK(logs[0].pi_B.eval(p, q) == rat(1, 2));
  CHECK(logs[1].pi_S.eval(p, q) == rat(13, 6));
  CHECK(logs[1].pi_B.eval(p, q) == rat(3, 4));
  CHECK(logs[1].pi_S.eval(p, q) + logs[1].pi_B.eval(p, q) == rat(35, 12));
  CHECK(logs[2].pi_S.eval(p, q) == rat(9, 4));
  CHECK(logs[2].pi_B.eval(p, q) == rat(3, 4));
}

TEST_CASE("round zero run returns only the base surfaces") {
  const auto logs = run_trade32(0);
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].t == 0);
  CHECK(!logs[0].mover.has_value());
  CHECK(!logs[0].plan.has_value());
}

TEST_CASE("spy payoff table over six rounds matches the reported decimals") {
  const BaseGame spy = build_matrix(testutil::make_spy());
  const auto logs = run(spy.seller, spy.buyer, 6);
  const Rational p(1, 2), q(1, 2);
  const long long s_milli[] = {500, 500, 722, 722, 738, 769, 801};
  const long long b_milli[] = {-1500, -166, -166, -107, -107, -77, -75};
  for (int t = 0; t <= 6; ++t) {
    const Rational ds = logs[t].pi_S.eval(p, q) - rat(s_milli[t], 1000);
    const Rational db = logs[t].pi_B.eval(p, q) - rat(b_milli[t], 1000);
    CHECK(abs(ds) <= rat(1, 1000));
    CHECK(abs(db) <= rat(1, 1000));
  }
}

TEST_CASE("voluntary communication and convexity invariants hold per round") {
  const BaseGame spy = build_matrix(testutil::make_spy());
  const BaseGame trade = build_trade_binary(rat(3), rat(6), rat(0), rat(2));
  for (const BaseGame* base : {&spy, &trade}) {
    const auto logs = run(base->seller, base->buyer, 4);
    for (std::size_t t = 0; t < logs.size(); ++t) {
      CHECK(is_convex_along(logs[t].pi_B, Axis::q));
      CHECK(is_convex_along(logs[t].pi_S, Axis::p));
      if (t == 0) continue;
      for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
          const Rational p(i, 20), q(j, 20);
          CHECK(logs[t].pi_S.eval(p, q) >= logs[t - 1].pi_S.eval(p, q));
          CHECK(logs[t].pi_B.eval(p, q) >= logs[t - 1].pi_B.eval(p, q));
        }
    }
  }
}

TEST_CASE("run refuses base games that break the premise") {
  // Buyer payoff strictly concave along q: an inverted V.
  Surface bad;
  bad.grid = Grid{{rat(0), rat(1)}, {rat(0), rat(1, 2), rat(1)}};
  const Bilinear up{rat(0), rat(0), rat(1), rat(0)};
  const Bilinear down{rat(1), rat(0), rat(-1), rat(0)};
  bad.cells = {{up, down}};
  bad.p_cut_fns = {{up.restrict_p(rat(0)), down.restrict_p(rat(0))},
                   {up.restrict_p(rat(1)), down.restrict_p(rat(1))}};
  bad.q_cut_fns = {{up.restrict_q(rat(0)), up.restrict_q(rat(1, 2)),
                    down.restrict_q(rat(1))}};
  bad.vertex_vals = {{rat(0), rat(1, 2), rat(0)}, {rat(0), rat(1, 2), rat(0)}};
  validate(bad);
  CHECK_THROWS_WITH(run(Surface::constant(rat(0)), bad, 1),
                    "voluntary communication not guaranteed");
}

TEST_CASE("trace of the two-round trade protocol") {
  const auto logs = run_trade32(2);
  const TreeNode root = trace(logs, rat(1, 3), rat(1, 2));
  CHECK(root.payoff_S == rat(9, 4));
  CHECK(root.payoff_B == rat(3, 4));
  REQUIRE(root.mover.has_value());
  CHECK(*root.mover == Mover::sally);
  CHECK(!root.silent);
  REQUIRE(root.children.size() == 2);

  const auto& [prob_low, node_low] = root.children[0];
  const auto& [prob_high, node_high] = root.children[1];
  CHECK(prob_low == rat(1, 4));
  CHECK(node_low.q == rat(0));
  CHECK(prob_high == rat(3, 4));
  CHECK(node_high.q == rat(2, 3));

  // At q=0 Bob stays silent.
  CHECK(node_low.silent);
  REQUIRE(node_low.children.size() == 1);
  CHECK(node_low.children[0].first == rat(1));

  // At q=2/3 Bob refines p to 1/4 and 1.
  CHECK(!node_high.silent);
  REQUIRE(node_high.children.size() == 2);
  CHECK(node_high.children[0].second.p == rat(1, 4));
  CHECK(node_high.children[0].first == rat(8, 9));
  CHECK(node_high.children[1].second.p == rat(1));
  CHECK(node_high.children[1].first == rat(1, 9));
}

TEST_CASE("trace of the one-round trade protocol") {
  const auto logs = run_trade32(1);
  const TreeNode root = trace(logs, rat(1, 3), rat(1, 2));
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[0].second.p == rat(1, 4));
  CHECK(root.children[0].first == rat(2, 3));
  CHECK(root.children[1].second.p == rat(1, 2));
  CHECK(root.children[1].first == rat(1, 3));
  CHECK(root.payoff_B == rat(3, 4));
  CHECK(root.payoff_S == rat(13, 6));
}

TEST_CASE("trace with zero rounds is a single leaf") {
  const auto logs = run_trade32(0);
  const TreeNode root = trace(logs, rat(1, 3), rat(1, 2));
  CHECK(root.children.empty());
  CHECK(root.payoff_S == rat(13, 6));
  CHECK(root.payoff_B == rat(1, 2));
}

TEST_CASE("fixed point detection") {
  // The two-cost trade game stabilizes at t=2; surfaces stop changing.
  const auto logs = run_trade32(4);
  const auto fp = detect_fixed_point(logs);
  REQUIRE(fp.has_value());
  CHECK(*fp == 2);
  CHECK(equal(logs[3].pi_S, logs[2].pi_S));
  CHECK(equal(logs[3].pi_B, logs[2].pi_B));
  CHECK(equal(logs[4].pi_S, logs[2].pi_S));
  CHECK(equal(logs[4].pi_B, logs[2].pi_B));

  // The known-cost game is done after Bob's single message.
  const BaseGame single = build_trade_single(rat(3), rat(6), rat(2));
  const auto single_logs = run(single.seller, single.buyer, 3);
  const auto single_fp = detect_fixed_point(single_logs);
  REQUIRE(single_fp.has_value());
  CHECK(*single_fp == 1);

  // The spy game keeps improving through six rounds.
  const BaseGame spy = build_matrix(testutil::make_spy());
  const auto spy_logs = run(spy.seller, spy.buyer, 6);
  CHECK(!detect_fixed_point(spy_logs).has_value());
}

TEST_CASE("message complexity reports") {
  const auto logs = run_trade32(4);
  const ComplexityReport trade_report =
      message_complexity(logs, rat(1, 3), rat(1, 2), rat(3));
  CHECK(trade_report.kind == ComplexityKind::exact);
  CHECK(trade_report.value == 2);
  CHECK(trade_report.certificate == ComplexityCertificate::efficiency);

  const BaseGame single = build_trade_single(rat(3), rat(6), rat(2));
  const auto single_logs = run(single.seller, single.buyer, 2);
  const ComplexityReport single_report =
      message_complexity(single_logs, rat(1, 3), rat(0), rat(2));
  CHECK(single_report.kind == ComplexityKind::exact);
  CHECK(single_report.value == 1);

  const BaseGame spy = build_matrix(testutil::make_spy());
  const auto spy_logs = run(spy.seller, spy.buyer, 6);
  const ComplexityReport spy_report =
      message_complexity(spy_logs, rat(1, 2), rat(1, 2), std::nullopt);
  CHECK(spy_report.kind == ComplexityKind::lower_bound);
  CHECK(spy_report.value == 6);
  CHECK(spy_report.certificate == ComplexityCertificate::horizon);

  // Without the welfare target the trade game still certifies via the
  // fixed point, at the same round.
  const ComplexityReport fp_report =
      message_complexity(logs, rat(1, 3), rat(1, 2), std::nullopt);
  CHECK(fp_report.kind == ComplexityKind::exact);
  CHECK(fp_report.value == 2);
  CHECK(fp_report.certificate == ComplexityCertificate::fixed_point);
}

TEST_CASE("the spy buyer surface changes in round one and loses convexity") {
  const BaseGame spy = build_matrix(testutil::make_spy());
  const auto logs = run(spy.seller, spy.buyer, 1);
  CHECK(!equal(logs[1].pi_B, logs[0].pi_B));
  CHECK(logs[1].pi_B.eval(rat(1, 2), rat(1, 2)) == rat(-1, 6));
  CHECK(logs[0].pi_B.eval(rat(1, 2), rat(1, 2)) == rat(-3, 2));

  // After hulling, the buyer surface is concave along p with strict
  // curvature: the midpoint beats the chord of its neighbors.
  CHECK(!is_convex_along(logs[1].pi_B, Axis::p));
  CHECK(is_concave_along(logs[1].pi_B, Axis::p));
  const Rational mid = logs[1].pi_B.eval(rat(1, 2), rat(1, 2));
  const Rational chord = (logs[1].pi_B.eval(rat(1, 3), rat(1, 2)) +
                          logs[1].pi_B.eval(rat(2, 3), rat(1, 2))) /
                         2;
  CHECK(mid >= chord);
}

TEST_CASE("tree JSON is deterministic and carries exact probabilities") {
  const auto logs = run_trade32(2);
  const TreeNode root = trace(logs, rat(1, 3), rat(1, 2));
  const std::string a = tree_to_json(root);
  const std::string b = tree_to_json(trace(logs, rat(1, 3), rat(1, 2)));
  CHECK(a == b);
  CHECK(a.find("\"probability\": \"1/4\"") != std::string::npos);
  CHECK(a.find("\"payoff_S\": \"9/4\"") != std::string::npos);
  CHECK(a.find("\"payoff_S_dec\": \"2.250\"") != std::string::npos);
}
