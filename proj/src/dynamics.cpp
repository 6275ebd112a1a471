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

#include "commgame/dynamics.hpp"

#include <stdexcept>

#include <json.hpp>

#include "commgame/hull.hpp"

namespace commgame {

namespace {

using nlohmann::json;

[[noreturn]] void inconsistent(const std::string& what) {
  throw std::runtime_error("dynamics: internal invariant failed: " + what);
}

}  // namespace

std::vector<RoundLog> run(const Surface& base_S, const Surface& base_B, int rounds) {
  if (rounds < 0) throw std::invalid_argument("rounds must be nonnegative");
  if (!is_convex_along(base_B, Axis::q) || !is_convex_along(base_S, Axis::p))
    throw std::runtime_error("voluntary communication not guaranteed");

  std::vector<RoundLog> logs;
  logs.push_back(RoundLog{0, std::nullopt, pruned(base_S), pruned(base_B), {}});
  for (int t = 1; t <= rounds; ++t) {
    const RoundLog& prev = logs.back();
    RoundLog cur;
    cur.t = t;
    if (t % 2 == 1) {
      cur.mover = Mover::bob;
      ConcavifyResult r = concavify(prev.pi_B, prev.pi_S, Axis::p);
      cur.pi_B = pruned(r.hulled);
      cur.pi_S = pruned(r.co);
      cur.plan = std::move(r.plan);
    } else {
      cur.mover = Mover::sally;
      ConcavifyResult r = concavify(prev.pi_S, prev.pi_B, Axis::q);
      cur.pi_S = pruned(r.hulled);
      cur.pi_B = pruned(r.co);
      cur.plan = std::move(r.plan);
    }
    validate(cur.pi_S);
    validate(cur.pi_B);
    logs.push_back(std::move(cur));
  }
  return logs;
}

namespace {

TreeNode trace_node(const std::vector<RoundLog>& logs, int t, const Rational& p,
                    const Rational& q) {
  TreeNode node;
  node.t = t;
  node.p = p;
  node.q = q;
  if (t == 0) {
    node.payoff_S = logs[0].pi_S.eval(p, q);
    node.payoff_B = logs[0].pi_B.eval(p, q);
    return node;
  }
  const RoundLog& round = logs[t];
  const RoundLog& prev = logs[t - 1];
  const Mover mover = *round.mover;
  node.mover = mover;
  const Axis axis = mover == Mover::bob ? Axis::p : Axis::q;
  const Rational moving = axis == Axis::p ? p : q;
  const Rational fixed = axis == Axis::p ? q : p;
  const Surface& f_surface = mover == Mover::bob ? prev.pi_B : prev.pi_S;
  const Surface& g_surface = mover == Mover::bob ? prev.pi_S : prev.pi_B;

  // Pointwise recomputation of the split (the source of truth).
  auto [F, G] = common_refinement(f_surface, g_surface);
  const Slice sf = slice(F, axis, fixed);
  const Slice sg = slice(G, axis, fixed);
  std::vector<HullVertex> verts(sf.xs.size());
  for (std::size_t i = 0; i < sf.xs.size(); ++i)
    verts[i] = HullVertex{sf.xs[i], sf.values[i], sg.values[i]};
  const HullResult r = lex_hull_at(verts, moving);

  node.silent =
      r.value == f_surface.eval(p, q) && r.co_value == g_surface.eval(p, q);
  if (node.silent) {
    node.children.emplace_back(Rational(1), trace_node(logs, t - 1, p, q));
  } else {
    for (const SupportPoint& s : r.support) {
      const Rational cp = axis == Axis::p ? s.x : p;
      const Rational cq = axis == Axis::p ? q : s.x;
      node.children.emplace_back(s.weight, trace_node(logs, t - 1, cp, cq));
    }
  }

  Rational sum_S = 0, sum_B = 0, wsum = 0, mean = 0;
  for (const auto& [prob, child] : node.children) {
    sum_S += prob * child.payoff_S;
    sum_B += prob * child.payoff_B;
    wsum += prob;
    mean += prob * (axis == Axis::p ? child.p : child.q);
  }
  node.payoff_S = sum_S;
  node.payoff_B = sum_B;
  if (wsum != 1 || mean != moving) inconsistent("split is not Bayes-plausible");

  // Node payoffs equal the stored round surfaces exactly.
  const Rational want_f = round.t % 2 == 1 ? round.pi_B.eval(p, q)
                                           : round.pi_S.eval(p, q);
  const Rational want_g = round.t % 2 == 1 ? round.pi_S.eval(p, q)
                                           : round.pi_B.eval(p, q);
  const Rational got_f = mover == Mover::bob ? node.payoff_B : node.payoff_S;
  const Rational got_g = mover == Mover::bob ? node.payoff_S : node.payoff_B;
  if (got_f != want_f || got_g != want_g)
    inconsistent("trace payoffs disagree with stored surfaces");

  // Strictly inside a plan rectangle the recomputed split must match it.
  if (round.plan) {
    const PlanRect& rect = round.plan->find(p, q);
    const bool interior = p > rect.p_lo && p < rect.p_hi && q > rect.q_lo &&
                          q < rect.q_hi;
    if (interior && !node.silent) {
      if (r.support.size() != 2 || r.support[0].x != rect.lo ||
          r.support[1].x != rect.hi)
        inconsistent("trace split disagrees with stored plan");
    }
  }
  return node;
}

}  // namespace

TreeNode trace(const std::vector<RoundLog>& logs, const Rational& p,
               const Rational& q) {
  if (logs.empty()) throw std::invalid_argument("trace: empty log");
  if (p < 0 || p > 1 || q < 0 || q > 1)
    throw std::invalid_argument("trace: start belief outside the square");
  return trace_node(logs, static_cast<int>(logs.size()) - 1, p, q);
}

std::optional<int> detect_fixed_point(const std::vector<RoundLog>& logs) {
  for (const RoundLog& log : logs) {
    if (is_concave_along(log.pi_B, Axis::p) && is_concave_along(log.pi_S, Axis::q))
      return log.t;
  }
  return std::nullopt;
}

ComplexityReport message_complexity(const std::vector<RoundLog>& logs,
                                    const Rational& p, const Rational& q,
                                    const std::optional<Rational>& w_star) {
  std::vector<Rational> sums;
  sums.reserve(logs.size());
  for (const RoundLog& log : logs) sums.push_back(log.pi_S.eval(p, q) + log.pi_B.eval(p, q));

  if (w_star) {
    for (std::size_t t = 0; t < sums.size(); ++t)
      if (sums[t] == *w_star)
        return ComplexityReport{ComplexityKind::exact, static_cast<int>(t),
                                ComplexityCertificate::efficiency};
  }
  if (const std::optional<int> fp = detect_fixed_point(logs)) {
    const Rational& limit = sums[static_cast<std::size_t>(*fp)];
    for (std::size_t t = 0; t < sums.size(); ++t)
      if (sums[t] == limit)
        return ComplexityReport{ComplexityKind::exact, static_cast<int>(t),
                                ComplexityCertificate::fixed_point};
  }
  return ComplexityReport{ComplexityKind::lower_bound,
                          static_cast<int>(logs.size()) - 1,
                          ComplexityCertificate::horizon};
}

namespace {

json tree_json(const TreeNode& node) {
  json j;
  j["t"] = node.t;
  j["belief"] = {{"p", to_string(node.p)}, {"q", to_string(node.q)}};
  if (node.mover) j["mover"] = *node.mover == Mover::bob ? "B" : "S";
  if (node.mover) j["silent"] = node.silent;
  j["payoff_S"] = to_string(node.payoff_S);
  j["payoff_B"] = to_string(node.payoff_B);
  j["payoff_S_dec"] = to_decimal3(node.payoff_S);
  j["payoff_B_dec"] = to_decimal3(node.payoff_B);
  if (!node.children.empty()) {
    j["children"] = json::array();
    for (const auto& [prob, child] : node.children)
      j["children"].push_back(
          json{{"probability", to_string(prob)}, {"node", tree_json(child)}});
  }
  return j;
}

}  // namespace

std::string tree_to_json(const TreeNode& node) { return tree_json(node).dump(2); }

std::string complexity_to_json(const ComplexityReport& report) {
  json j;
  j["kind"] = report.kind == ComplexityKind::exact ? "exact" : "lower_bound";
  j["value"] = report.value;
  switch (report.certificate) {
    case ComplexityCertificate::fixed_point: j["certificate"] = "fixed_point"; break;
    case ComplexityCertificate::efficiency: j["certificate"] = "efficiency"; break;
    case ComplexityCertificate::horizon: j["certificate"] = "horizon"; break;
  }
  return j.dump(2);
}

}  // namespace commgame
