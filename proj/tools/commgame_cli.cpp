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

// Command-line front end. Talks to the solver exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commgame.h"

namespace {

struct GameHandle {
  cg_game* game = nullptr;
  ~GameHandle() { cg_game_free(game); }
};

struct RunHandle {
  cg_run* run = nullptr;
  ~RunHandle() { cg_run_free(run); }
};

struct OutString {
  char* text = nullptr;
  ~OutString() { cg_string_free(text); }
};

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context << ": " << cg_last_error() << "\n";
  std::exit(1);
}

cg_format parse_format(const std::string& name) {
  if (name == "text") return CG_FORMAT_TEXT;
  if (name == "json") return CG_FORMAT_JSON;
  if (name == "csv") return CG_FORMAT_CSV;
  if (name == "dot") return CG_FORMAT_DOT;
  if (name == "svg") return CG_FORMAT_SVG;
  std::cerr << "error: unknown format " << name << "\n";
  std::exit(1);
}

std::pair<std::string, std::string> parse_start(const std::string& start) {
  const std::size_t comma = start.find(',');
  if (comma == std::string::npos) {
    std::cerr << "error: --start expects P,Q (e.g. 1/3,1/2)\n";
    std::exit(1);
  }
  return {start.substr(0, comma), start.substr(comma + 1)};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out.good()) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(1);
  }
  out << text;
}

std::string qgrid_json(const std::string& qgrid_csv) {
  std::string out = "[";
  std::stringstream ss(qgrid_csv);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ',')) {
    if (!first) out += ",";
    out += "\"" + item + "\"";
    first = false;
  }
  return out + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for two-player pre-play communication games"};
  app.require_subcommand(1);

  std::string game_path, start = "1/2,1/2", format, out_path;
  std::string lp_mode = "voluntary", qgrid;
  int rounds = 0, round = -1;
  std::string trade_sub;

  auto add_common = [&](CLI::App* cmd, const char* default_format) {
    cmd->add_option("--game", game_path, "game spec JSON file")->required();
    cmd->add_option("--start", start, "start belief P,Q (default 1/2,1/2)");
    cmd->add_option("--format", format, "output format")->default_val(default_format);
    cmd->add_option("--out", out_path, "write output to a file instead of stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "payoff table per round at a start belief");
  add_common(solve, "text");
  solve->add_option("--rounds", rounds, "number of communication rounds")->required();

  CLI::App* trace_cmd = app.add_subcommand("trace", "realized protocol tree from a start belief");
  add_common(trace_cmd, "json");
  trace_cmd->add_option("--rounds", rounds, "number of communication rounds")->required();

  CLI::App* partition = app.add_subcommand("partition", "square diagram of one round's refinement rule");
  add_common(partition, "svg");
  partition->add_option("--rounds", rounds, "number of communication rounds")->required();
  partition->add_option("--round", round, "round to draw (default: last)");

  CLI::App* trade = app.add_subcommand("trade", "bilateral-trade toolkit reports");
  trade->add_option("sub", trade_sub, "two-round | bbm | lp3 | complexity")->required();
  add_common(trade, "text");
  trade->add_option("--lp-mode", lp_mode, "participation constraint: voluntary | literal-zero");
  trade->add_option("--qgrid", qgrid, "comma-separated round-2 candidate q grid");

  CLI11_PARSE(app, argc, argv);

  GameHandle game;
  if (cg_game_from_file(game_path.c_str(), &game.game) != CG_OK) die(game_path);

  const auto [p, q] = parse_start(start);
  const cg_format fmt = parse_format(format);

  if (app.got_subcommand(trade)) {
    std::string options = "{\"lp_mode\":\"" + lp_mode + "\"";
    options += ",\"start_p\":\"" + p + "\",\"start_q\":\"" + q + "\"";
    if (!qgrid.empty()) options += ",\"qgrid\":" + qgrid_json(qgrid);
    options += "}";
    OutString text;
    if (cg_trade_report(game.game, trade_sub.c_str(), options.c_str(), fmt,
                        &text.text) != CG_OK)
      die("trade " + trade_sub);
    emit(text.text, out_path);
    return 0;
  }

  RunHandle run;
  if (cg_run_create(game.game, rounds, &run.run) != CG_OK) die("run");

  OutString text;
  if (app.got_subcommand(solve)) {
    if (cg_run_payoff_table(run.run, p.c_str(), q.c_str(), fmt, &text.text) != CG_OK)
      die("solve");
  } else if (app.got_subcommand(trace_cmd)) {
    if (cg_run_trace(run.run, p.c_str(), q.c_str(), fmt, &text.text) != CG_OK)
      die("trace");
  } else {
    const int which = round < 0 ? rounds : round;
    if (cg_run_partition(run.run, which, fmt, &text.text) != CG_OK)
      die("partition");
  }
  emit(text.text, out_path);
  return 0;
}
