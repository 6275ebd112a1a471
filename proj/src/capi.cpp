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

#include "commgame.h"

#include <cstring>
#include <memory>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "commgame/dynamics.hpp"
#include "commgame/games.hpp"
#include "commgame/render.hpp"
#include "commgame/trade.hpp"

using namespace commgame;
using nlohmann::json;

struct cg_game {
  GameSpec spec;
};

struct cg_run {
  GameSpec spec;
  BaseGame base;
  std::vector<RoundLog> logs;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

struct CapiError : std::runtime_error {
  cg_status status;
  CapiError(cg_status st, const std::string& what)
      : std::runtime_error(what), status(st) {}
};

template <typename Fn>
cg_status wrap(Fn&& fn) {
  try {
    fn();
    return CG_OK;
  } catch (const CapiError& e) {
    g_last_error = e.what();
    return e.status;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return CG_ERROR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CG_ERROR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    const std::string what = e.what();
    if (what.rfind("game spec:", 0) == 0) return CG_ERROR_PARSE;
    if (what.find("voluntary communication") != std::string::npos)
      return CG_ERROR_PRECONDITION;
    return CG_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CG_ERROR_INTERNAL;
  }
}

Rational parse_belief(const char* text, const char* name) {
  if (text == nullptr)
    throw CapiError(CG_ERROR_INVALID_ARGUMENT, std::string(name) + " is null");
  const auto r = parse_rational(text);
  if (!r)
    throw CapiError(CG_ERROR_PARSE,
                    std::string(name) + ": expected \"int\" or \"int/int\", got \"" +
                        text + "\"");
  if (*r < 0 || *r > 1)
    throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                    std::string(name) + " outside [0,1]: " + text);
  return *r;
}

void require(bool ok, cg_status status, const std::string& message) {
  if (!ok) throw CapiError(status, message);
}

std::optional<Rational> welfare_target(const GameSpec& spec, const Rational& p,
                                       const Rational& q) {
  if (!has_trade_welfare(spec)) return std::nullopt;
  return trade_welfare_at(spec, p, q);
}

// ---- trade toolkit plumbing -------------------------------------------------

struct TradeOptions {
  LpMode mode = LpMode::voluntary;
  std::vector<Rational> qgrid;
  std::optional<Rational> start_p;
  std::optional<Rational> start_q;
};

TradeOptions parse_trade_options(const char* options_json) {
  TradeOptions out;
  if (options_json == nullptr || *options_json == '\0') return out;
  const json j = json::parse(options_json);
  if (j.contains("lp_mode")) {
    const std::string mode = j.at("lp_mode").get<std::string>();
    if (mode == "voluntary") out.mode = LpMode::voluntary;
    else if (mode == "literal-zero") out.mode = LpMode::literal_zero;
    else
      throw CapiError(CG_ERROR_INVALID_ARGUMENT, "unknown lp_mode: " + mode);
  }
  if (j.contains("qgrid")) {
    for (const auto& e : j.at("qgrid")) {
      const auto r = parse_rational(e.get<std::string>());
      require(r.has_value(), CG_ERROR_PARSE, "qgrid: bad rational");
      out.qgrid.push_back(*r);
    }
  }
  if (j.contains("start_p"))
    out.start_p = parse_belief(j.at("start_p").get<std::string>().c_str(), "start_p");
  if (j.contains("start_q"))
    out.start_q = parse_belief(j.at("start_q").get<std::string>().c_str(), "start_q");
  return out;
}

struct TradeInstance {
  TradeGame game;
  Dist seller;
  Dist buyer;
};

TradeInstance resolve_trade(const GameSpec& spec, const TradeOptions& opt) {
  require(spec.kind != GameSpec::Kind::matrix, CG_ERROR_INVALID_ARGUMENT,
          "trade subcommands need a trade game spec");
  TradeInstance out{trade_game_from_spec(spec), {}, {}};
  if (!spec.seller_dist.empty()) {
    out.seller.probs = spec.seller_dist;
  } else if (opt.start_q && out.game.costs.size() == 2) {
    out.seller.probs = {1 - *opt.start_q, *opt.start_q};
  } else if (out.game.costs.size() == 1) {
    out.seller.probs = {1};
  } else {
    throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                    "spec has no seller distribution; pass start_q");
  }
  if (!spec.buyer_dist.empty()) {
    out.buyer.probs = spec.buyer_dist;
  } else if (opt.start_p && out.game.values.size() == 2) {
    out.buyer.probs = {1 - *opt.start_p, *opt.start_p};
  } else {
    throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                    "spec has no buyer distribution; pass start_p");
  }
  require(out.seller.valid() && out.seller.probs.size() == out.game.costs.size(),
          CG_ERROR_INVALID_ARGUMENT, "invalid seller distribution");
  require(out.buyer.valid() && out.buyer.probs.size() == out.game.values.size(),
          CG_ERROR_INVALID_ARGUMENT, "invalid buyer distribution");
  return out;
}

std::string dist_string(const Dist& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    if (i) out += ", ";
    out += to_string(d.probs[i]);
  }
  return out + ")";
}

json dist_json(const Dist& d) {
  json out = json::array();
  for (const Rational& p : d.probs) out.push_back(to_string(p));
  return out;
}

std::string verdict_string(const WelfareChain& wc) {
  std::ostringstream os;
  if (wc.exact_t) {
    os << "C = " << *wc.exact_t << " (exact, efficiency)";
  } else {
    os << "C >= " << wc.chain.size()
       << " (welfare chain stays below W* on the candidate grid)";
  }
  return os.str();
}

std::string report_two_round(const TradeInstance& in, cg_format format) {
  require(in.game.values.size() == 2, CG_ERROR_INVALID_ARGUMENT,
          "two-round needs exactly two buyer values");
  const Rational p = in.buyer.probs[1];
  const TwoRoundResult r = two_round_protocol(in.game, in.seller, p);
  const Rational w_star = efficient_welfare(in.game, in.seller, in.buyer);
  if (format == CG_FORMAT_JSON) {
    json j;
    j["pi2_S"] = to_string(r.pi2_S);
    j["pi2_B"] = to_string(r.pi2_B);
    j["w2"] = to_string(r.pi2_S + r.pi2_B);
    j["w_star"] = to_string(w_star);
    j["efficient"] = r.pi2_S + r.pi2_B == w_star;
    j["tree"] = json::parse(trade_tree_to_json(r.root));
    return j.dump(2);
  }
  std::ostringstream os;
  os << "two-round protocol at p = " << to_string(p)
     << ", q = " << dist_string(in.seller) << "\n";
  os << "pi2_S = " << to_string(r.pi2_S) << " (" << to_decimal3(r.pi2_S) << ")\n";
  os << "pi2_B = " << to_string(r.pi2_B) << " (" << to_decimal3(r.pi2_B) << ")\n";
  os << "W2 = " << to_string(r.pi2_S + r.pi2_B) << " = W* = " << to_string(w_star)
     << "  [efficient]\n";
  os << "Sally's refinement:\n";
  for (const auto& [weight, node] : r.root.children) {
    os << "  w.p. " << to_string(weight) << " -> q = " << dist_string(node.seller_dist);
    if (node.silent) {
      os << "; Bob silent\n";
    } else {
      os << "; Bob splits p to {";
      for (std::size_t k = 0; k < node.children.size(); ++k) {
        if (k) os << ", ";
        os << to_string(node.children[k].second.p_high) << " w.p. "
           << to_string(node.children[k].first);
      }
      os << "}\n";
    }
  }
  return os.str();
}

std::string report_bbm(const TradeInstance& in, cg_format format) {
  std::size_t cost_index = 0;
  if (in.game.costs.size() > 1) {
    const auto support = in.seller.support();
    require(support.size() == 1, CG_ERROR_INVALID_ARGUMENT,
            "bbm needs a known seller cost (single cost or point-mass belief)");
    cost_index = support[0];
  }
  const Refinement r = bbm_decompose(in.game, cost_index, in.buyer);
  const Dist seller_point = Dist::point_mass(cost_index, in.game.costs.size());
  const auto [s0, b0] = pi0(in.game, seller_point, in.buyer);
  const Rational w_star = efficient_welfare(in.game, seller_point, in.buyer);
  Rational s1 = 0, b1 = 0;
  for (const Branch& branch : r.branches) {
    const auto [s, b] = pi0(in.game, seller_point, branch.posterior);
    s1 += branch.weight * s;
    b1 += branch.weight * b;
  }
  if (format == CG_FORMAT_JSON) {
    json j;
    j["cost"] = to_string(in.game.costs[cost_index]);
    j["branches"] = json::array();
    for (const Branch& branch : r.branches)
      j["branches"].push_back(json{{"weight", to_string(branch.weight)},
                                   {"posterior", dist_json(branch.posterior)}});
    j["pi0_S"] = to_string(s0);
    j["pi0_B"] = to_string(b0);
    j["pi1_S"] = to_string(s1);
    j["pi1_B"] = to_string(b1);
    j["w_star"] = to_string(w_star);
    return j.dump(2);
  }
  std::ostringstream os;
  os << "equal-revenue peeling at cost " << to_string(in.game.costs[cost_index])
     << ":\n";
  for (const Branch& branch : r.branches)
    os << "  w.p. " << to_string(branch.weight) << " -> p = "
       << dist_string(branch.posterior) << "\n";
  os << "pi0 = (" << to_string(s0) << ", " << to_string(b0) << ")\n";
  os << "pi1 = (" << to_string(s1) << ", " << to_string(b1) << ")  [seller kept, "
     << "buyer gets W* - pi0_S]\n";
  os << "W* = " << to_string(w_star) << "\n";
  return os.str();
}

std::vector<Rational> default_qgrid(const Rational& prior) {
  std::vector<Rational> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(Rational(k, 12));
  grid.push_back(prior);
  return grid;
}

std::string report_lp3(const TradeInstance& in, const TradeOptions& opt,
                       cg_format format) {
  require(in.game.values.size() == 3 && in.game.costs.size() == 2,
          CG_ERROR_INVALID_ARGUMENT, "lp3 needs three values and two costs");
  const Rational q = in.seller.probs[1];
  const auto [s0, b0] = pi0(in.game, in.seller, in.buyer);
  const BestResponse r1 = lp3_best_response(in.game, q, in.buyer, opt.mode);
  std::vector<Rational> grid = opt.qgrid.empty() ? default_qgrid(q) : opt.qgrid;
  grid.push_back(0);
  grid.push_back(1);
  grid.push_back(q);
  const Round2Result r2 = round2_concavify(in.game, q, in.buyer, grid, opt.mode);
  const Rational w_star = efficient_welfare(in.game, in.seller, in.buyer);

  WelfareChain wc;
  wc.w_star = w_star;
  wc.chain = {s0 + b0, r1.pi1_S + r1.pi1_B, r2.pi2_S + r2.pi2_B};
  for (std::size_t t = 0; t < wc.chain.size(); ++t)
    if (wc.chain[t] == w_star) {
      wc.exact_t = static_cast<int>(t);
      break;
    }

  const char* mode_name = opt.mode == LpMode::voluntary ? "voluntary" : "literal-zero";
  if (format == CG_FORMAT_JSON) {
    json j;
    j["rows"] = json::array();
    j["rows"].push_back(json{{"t", 0}, {"pi_S", to_string(s0)}, {"pi_B", to_string(b0)}});
    j["rows"].push_back(
        json{{"t", 1}, {"pi_S", to_string(r1.pi1_S)}, {"pi_B", to_string(r1.pi1_B)}});
    j["rows"].push_back(
        json{{"t", 2}, {"pi_S", to_string(r2.pi2_S)}, {"pi_B", to_string(r2.pi2_B)}});
    j["w_star"] = to_string(w_star);
    j["lp_mode"] = mode_name;
    j["round2_branches"] = json::array();
    for (const auto& [w, qv] : r2.branches)
      j["round2_branches"].push_back(
          json{{"weight", to_string(w)}, {"q", to_string(qv)}});
    j["verdict"] = verdict_string(wc);
    return j.dump(2);
  }
  std::ostringstream os;
  os << "t  pi_S     pi_B     W\n";
  os << "0  " << to_string(s0) << "  " << to_string(b0) << "  " << to_string(s0 + b0)
     << "\n";
  os << "1  " << to_string(r1.pi1_S) << "  " << to_string(r1.pi1_B) << "  "
     << to_string(r1.pi1_S + r1.pi1_B) << "\n";
  os << "2  " << to_string(r2.pi2_S) << "  " << to_string(r2.pi2_B) << "  "
     << to_string(r2.pi2_S + r2.pi2_B) << "\n";
  os << "W* = " << to_string(w_star) << "\n";
  os << "participation mode: " << mode_name << "\n";
  os << "round-2 refinement:";
  for (const auto& [w, qv] : r2.branches)
    os << " {" << to_string(w) << " -> q=" << to_string(qv) << "}";
  os << "\nverdict: " << verdict_string(wc) << "\n";
  return os.str();
}

std::string report_complexity(const TradeInstance& in, const TradeOptions& opt,
                              cg_format format) {
  const Rational q_high =
      in.game.costs.size() == 2 ? in.seller.probs[1] : Rational(0);
  std::vector<Rational> grid = opt.qgrid.empty() ? default_qgrid(q_high) : opt.qgrid;
  const WelfareChain wc = welfare_chain(in.game, in.seller, in.buyer, opt.mode, grid);
  if (format == CG_FORMAT_JSON) {
    json j;
    j["chain"] = json::array();
    for (std::size_t t = 0; t < wc.chain.size(); ++t)
      j["chain"].push_back(json{{"t", t}, {"W", to_string(wc.chain[t])}});
    j["w_star"] = to_string(wc.w_star);
    if (wc.exact_t) j["exact"] = *wc.exact_t;
    j["verdict"] = verdict_string(wc);
    return j.dump(2);
  }
  std::ostringstream os;
  os << "welfare chain:";
  for (std::size_t t = 0; t < wc.chain.size(); ++t)
    os << " W" << t << " = " << to_string(wc.chain[t]);
  os << "\nW* = " << to_string(wc.w_star) << "\n";
  os << "verdict: " << verdict_string(wc) << "\n";
  return os.str();
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "1.0.0"; }

const char* cg_last_error(void) { return g_last_error.c_str(); }

cg_status cg_game_from_json(const char* json_text, cg_game** out_game) {
  return wrap([&] {
    require(json_text != nullptr && out_game != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    auto game = std::make_unique<cg_game>();
    game->spec = game_spec_from_json(json_text);
    *out_game = game.release();
  });
}

cg_status cg_game_from_file(const char* path, cg_game** out_game) {
  return wrap([&] {
    require(path != nullptr && out_game != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    std::ifstream in(path);
    require(in.good(), CG_ERROR_IO, std::string("cannot read ") + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto game = std::make_unique<cg_game>();
    game->spec = game_spec_from_json(buffer.str());
    *out_game = game.release();
  });
}

void cg_game_free(cg_game* game) { delete game; }

cg_status cg_run_create(const cg_game* game, int rounds, cg_run** out_run) {
  return wrap([&] {
    require(game != nullptr && out_run != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    require(rounds >= 0, CG_ERROR_INVALID_ARGUMENT, "rounds must be nonnegative");
    require(engine_capable(game->spec), CG_ERROR_INVALID_ARGUMENT,
            "game is not a binary-type square game");
    auto run = std::make_unique<cg_run>();
    run->spec = game->spec;
    run->base = build_engine_game(game->spec);
    run->logs = commgame::run(run->base.seller, run->base.buyer, rounds);
    *out_run = run.release();
  });
}

void cg_run_free(cg_run* run) { delete run; }

cg_status cg_run_payoff_table(const cg_run* run, const char* p, const char* q,
                              cg_format format, char** out) {
  return wrap([&] {
    require(run != nullptr && out != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    const Rational pp = parse_belief(p, "p");
    const Rational qq = parse_belief(q, "q");
    const auto rows = payoff_rows(run->logs, pp, qq);
    const auto w_star = welfare_target(run->spec, pp, qq);
    std::string text;
    switch (format) {
      case CG_FORMAT_TEXT: text = payoff_table_text(rows, w_star); break;
      case CG_FORMAT_CSV: text = payoff_table_csv(rows); break;
      case CG_FORMAT_JSON: text = payoff_table_json(rows, w_star); break;
      default:
        throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                        "payoff table supports text, csv or json");
    }
    *out = dup_string(text);
  });
}

cg_status cg_run_trace(const cg_run* run, const char* p, const char* q,
                       cg_format format, char** out) {
  return wrap([&] {
    require(run != nullptr && out != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    const Rational pp = parse_belief(p, "p");
    const Rational qq = parse_belief(q, "q");
    const TreeNode tree = trace(run->logs, pp, qq);
    std::string text;
    switch (format) {
      case CG_FORMAT_JSON: text = tree_to_json(tree); break;
      case CG_FORMAT_DOT: text = tree_dot(tree); break;
      default:
        throw CapiError(CG_ERROR_INVALID_ARGUMENT, "trace supports json or dot");
    }
    *out = dup_string(text);
  });
}

cg_status cg_run_partition(const cg_run* run, int round, cg_format format,
                           char** out) {
  return wrap([&] {
    require(run != nullptr && out != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    require(round >= 0 && round < static_cast<int>(run->logs.size()),
            CG_ERROR_INVALID_ARGUMENT, "round outside the computed horizon");
    std::string text;
    if (round == 0) {
      switch (format) {
        case CG_FORMAT_DOT: text = regions_dot(run->base.regions); break;
        case CG_FORMAT_SVG: text = regions_svg(run->base.regions); break;
        default:
          throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                          "partition supports dot or svg");
      }
    } else {
      const StrategyPartition& plan = *run->logs[static_cast<std::size_t>(round)].plan;
      switch (format) {
        case CG_FORMAT_DOT: text = partition_dot(plan); break;
        case CG_FORMAT_SVG: text = partition_svg(plan); break;
        case CG_FORMAT_JSON: text = partition_to_json(plan); break;
        default:
          throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                          "partition supports dot, svg or json");
      }
    }
    *out = dup_string(text);
  });
}

cg_status cg_run_surface(const cg_run* run, int round, const char* player,
                         char** out_json) {
  return wrap([&] {
    require(run != nullptr && out_json != nullptr && player != nullptr,
            CG_ERROR_INVALID_ARGUMENT, "null argument");
    require(round >= 0 && round < static_cast<int>(run->logs.size()),
            CG_ERROR_INVALID_ARGUMENT, "round outside the computed horizon");
    const RoundLog& log = run->logs[static_cast<std::size_t>(round)];
    const std::string who = player;
    require(who == "S" || who == "B", CG_ERROR_INVALID_ARGUMENT,
            "player must be \"S\" or \"B\"");
    *out_json = dup_string(surface_to_json(who == "S" ? log.pi_S : log.pi_B));
  });
}

cg_status cg_run_complexity(const cg_run* run, const char* p, const char* q,
                            char** out_json) {
  return wrap([&] {
    require(run != nullptr && out_json != nullptr, CG_ERROR_INVALID_ARGUMENT,
            "null argument");
    const Rational pp = parse_belief(p, "p");
    const Rational qq = parse_belief(q, "q");
    const auto w_star = welfare_target(run->spec, pp, qq);
    const ComplexityReport report = message_complexity(run->logs, pp, qq, w_star);
    json j = json::parse(complexity_to_json(report));
    j["sums"] = json::array();
    for (const RoundLog& log : run->logs)
      j["sums"].push_back(to_string(log.pi_S.eval(pp, qq) + log.pi_B.eval(pp, qq)));
    if (w_star) j["w_star"] = to_string(*w_star);
    *out_json = dup_string(j.dump(2));
  });
}

cg_status cg_trade_report(const cg_game* game, const char* subcommand,
                          const char* options_json, cg_format format, char** out) {
  return wrap([&] {
    require(game != nullptr && subcommand != nullptr && out != nullptr,
            CG_ERROR_INVALID_ARGUMENT, "null argument");
    require(format == CG_FORMAT_TEXT || format == CG_FORMAT_JSON,
            CG_ERROR_INVALID_ARGUMENT, "trade reports support text or json");
    const TradeOptions opt = parse_trade_options(options_json);
    const TradeInstance in = resolve_trade(game->spec, opt);
    const std::string sub = subcommand;
    std::string text;
    if (sub == "two-round") text = report_two_round(in, format);
    else if (sub == "bbm") text = report_bbm(in, format);
    else if (sub == "lp3") text = report_lp3(in, opt, format);
    else if (sub == "complexity") text = report_complexity(in, opt, format);
    else
      throw CapiError(CG_ERROR_INVALID_ARGUMENT,
                      "unknown trade subcommand: " + sub);
    *out = dup_string(text);
  });
}

void cg_string_free(char* text) { delete[] text; }

}  // extern "C"
