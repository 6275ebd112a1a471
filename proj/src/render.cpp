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

#include "commgame/render.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace commgame {

namespace {

using nlohmann::json;

std::string mover_name(const std::optional<Mover>& m) {
  if (!m) return "-";
  return *m == Mover::bob ? "B" : "S";
}

double approx(const Rational& r) {
  return static_cast<double>(numerator(r)) / static_cast<double>(denominator(r));
}

// Shared geometry for the square diagrams.
struct Diagram {
  std::set<Rational> p_lines{0, 1};
  std::set<Rational> q_lines{0, 1};
  struct Arrow {
    Rational x0, y0, x1, y1;
    bool buyer = true;  // blue p-arrow vs red q-arrow
  };
  struct Label {
    Rational x, y;
    std::string text;
  };
  std::vector<Arrow> arrows;
  std::vector<Label> labels;
};

Diagram diagram_of(const StrategyPartition& plan) {
  Diagram d;
  for (const PlanRect& r : plan.rectangles) {
    d.p_lines.insert(r.p_lo);
    d.p_lines.insert(r.p_hi);
    d.q_lines.insert(r.q_lo);
    d.q_lines.insert(r.q_hi);
    if (r.silent) continue;
    const Rational cx = (r.p_lo + r.p_hi) / 2;
    const Rational cy = (r.q_lo + r.q_hi) / 2;
    if (plan.axis == Axis::p) {
      d.arrows.push_back({cx, cy, r.lo, cy, true});
      d.arrows.push_back({cx, cy, r.hi, cy, true});
    } else {
      d.arrows.push_back({cx, cy, cx, r.lo, false});
      d.arrows.push_back({cx, cy, cx, r.hi, false});
    }
  }
  return d;
}

Diagram diagram_of(const std::vector<ActionRegion>& regions) {
  Diagram d;
  for (const ActionRegion& r : regions) {
    d.p_lines.insert(r.lo);
    d.p_lines.insert(r.hi);
    d.labels.push_back({(r.lo + r.hi) / 2, Rational(1, 2), r.label});
  }
  return d;
}

constexpr double kScale = 4.0;  // DOT drawing units per belief unit

std::string dot_of(const Diagram& d) {
  std::ostringstream os;
  os << "graph diagram {\n"
     << "  layout=neato;\n"
     << "  node [shape=point, width=0.02, color=gray40];\n";
  int next = 0;
  auto corner = [&](double x, double y) {
    const int id = next++;
    os << "  n" << id << " [pos=\"" << x * kScale << "," << y * kScale << "!\"];\n";
    return id;
  };
  auto line = [&](double x0, double y0, double x1, double y1, const char* style) {
    const int a = corner(x0, y0);
    const int b = corner(x1, y1);
    os << "  n" << a << " -- n" << b << " [" << style << "];\n";
  };
  for (const Rational& x : d.p_lines) {
    const bool border = x == 0 || x == 1;
    line(approx(x), 0, approx(x), 1,
         border ? "color=black" : "style=dashed, color=gray60");
    if (!border)
      os << "  xp" << next++ << " [shape=none, label=\"" << to_string(x)
         << "\", pos=\"" << approx(x) * kScale << "," << -0.3 * kScale << "!\"];\n";
  }
  for (const Rational& y : d.q_lines) {
    const bool border = y == 0 || y == 1;
    line(0, approx(y), 1, approx(y),
         border ? "color=black" : "style=dashed, color=gray60");
    if (!border)
      os << "  xq" << next++ << " [shape=none, label=\"" << to_string(y)
         << "\", pos=\"" << -0.35 * kScale << "," << approx(y) * kScale << "!\"];\n";
  }
  for (const Diagram::Arrow& a : d.arrows) {
    const int u = corner(approx(a.x0), approx(a.y0));
    const int v = corner(approx(a.x1), approx(a.y1));
    os << "  n" << u << " -- n" << v << " [dir=forward, penwidth=1.4, color="
       << (a.buyer ? "blue" : "red") << "];\n";
  }
  for (const Diagram::Label& l : d.labels)
    os << "  t" << next++ << " [shape=none, label=\"" << l.text << "\", pos=\""
       << approx(l.x) * kScale << "," << approx(l.y) * kScale << "!\"];\n";
  os << "}\n";
  return os.str();
}

std::string svg_of(const Diagram& d) {
  constexpr double kSize = 420.0, kMargin = 50.0;
  auto px = [&](double v) { return kMargin + v * kSize; };
  auto py = [&](double v) { return kMargin + (1.0 - v) * kSize; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 2 * kMargin
     << "\" height=\"" << kSize + 2 * kMargin << "\">\n"
     << "  <defs>\n"
     << "    <marker id=\"ab\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
        "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
        "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"blue\"/></marker>\n"
     << "    <marker id=\"ar\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
        "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
        "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"red\"/></marker>\n"
     << "  </defs>\n";
  auto line = [&](double x0, double y0, double x1, double y1, const char* extra) {
    os << "  <line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1)
       << "\" y2=\"" << py(y1) << "\" " << extra << "/>\n";
  };
  for (const Rational& x : d.p_lines) {
    const bool border = x == 0 || x == 1;
    line(approx(x), 0, approx(x), 1,
         border ? "stroke=\"black\" stroke-width=\"1.5\""
                : "stroke=\"gray\" stroke-dasharray=\"4 3\"");
    if (!border)
      os << "  <text x=\"" << px(approx(x)) << "\" y=\"" << py(-0.05)
         << "\" text-anchor=\"middle\" font-size=\"14\">" << to_string(x)
         << "</text>\n";
  }
  for (const Rational& y : d.q_lines) {
    const bool border = y == 0 || y == 1;
    line(0, approx(y), 1, approx(y),
         border ? "stroke=\"black\" stroke-width=\"1.5\""
                : "stroke=\"gray\" stroke-dasharray=\"4 3\"");
    if (!border)
      os << "  <text x=\"" << px(-0.08) << "\" y=\"" << py(approx(y)) + 5
         << "\" text-anchor=\"middle\" font-size=\"14\">" << to_string(y)
         << "</text>\n";
  }
  for (const Diagram::Arrow& a : d.arrows) {
    os << "  <line x1=\"" << px(approx(a.x0)) << "\" y1=\"" << py(approx(a.y0))
       << "\" x2=\"" << px(approx(a.x1)) << "\" y2=\"" << py(approx(a.y1))
       << "\" stroke=\"" << (a.buyer ? "blue" : "red")
       << "\" stroke-width=\"2\" marker-end=\"url(#" << (a.buyer ? "ab" : "ar")
       << ")\"/>\n";
  }
  for (const Diagram::Label& l : d.labels)
    os << "  <text x=\"" << px(approx(l.x)) << "\" y=\"" << py(approx(l.y))
       << "\" text-anchor=\"middle\" font-size=\"16\">" << l.text << "</text>\n";
  os << "  <text x=\"" << px(1.02) << "\" y=\"" << py(-0.02)
     << "\" font-size=\"14\">p</text>\n"
     << "  <text x=\"" << px(-0.08) << "\" y=\"" << py(1.0)
     << "\" font-size=\"14\">q</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace

std::vector<PayoffRow> payoff_rows(const std::vector<RoundLog>& logs,
                                   const Rational& p, const Rational& q) {
  std::vector<PayoffRow> rows;
  rows.reserve(logs.size());
  for (const RoundLog& log : logs)
    rows.push_back(PayoffRow{log.t, log.mover, log.pi_S.eval(p, q),
                             log.pi_B.eval(p, q)});
  return rows;
}

std::string payoff_table_text(const std::vector<PayoffRow>& rows,
                              const std::optional<Rational>& w_star) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"t", "mover", "pi_S", "(dec)", "pi_B", "(dec)", "W", "(dec)"});
  for (const PayoffRow& r : rows) {
    const Rational w = r.pi_S + r.pi_B;
    cells.push_back({std::to_string(r.t), mover_name(r.mover), to_string(r.pi_S),
                     to_decimal3(r.pi_S), to_string(r.pi_B), to_decimal3(r.pi_B),
                     to_string(w), to_decimal3(w)});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c] << std::string(width[c] - row[c].size() + (c + 1 < row.size() ? 2 : 0), ' ');
    }
    os << "\n";
  }
  if (w_star)
    os << "W* = " << to_string(*w_star) << " (" << to_decimal3(*w_star) << ")\n";
  return os.str();
}

std::string payoff_table_csv(const std::vector<PayoffRow>& rows) {
  std::ostringstream os;
  os << "t,mover,pi_S,pi_S_dec,pi_B,pi_B_dec,W,W_dec\n";
  for (const PayoffRow& r : rows) {
    const Rational w = r.pi_S + r.pi_B;
    os << r.t << ',' << mover_name(r.mover) << ',' << to_string(r.pi_S) << ','
       << to_decimal3(r.pi_S) << ',' << to_string(r.pi_B) << ','
       << to_decimal3(r.pi_B) << ',' << to_string(w) << ',' << to_decimal3(w)
       << "\n";
  }
  return os.str();
}

std::string payoff_table_json(const std::vector<PayoffRow>& rows,
                              const std::optional<Rational>& w_star) {
  json j;
  j["rows"] = json::array();
  for (const PayoffRow& r : rows) {
    const Rational w = r.pi_S + r.pi_B;
    j["rows"].push_back(json{{"t", r.t},
                             {"mover", mover_name(r.mover)},
                             {"pi_S", to_string(r.pi_S)},
                             {"pi_S_dec", to_decimal3(r.pi_S)},
                             {"pi_B", to_string(r.pi_B)},
                             {"pi_B_dec", to_decimal3(r.pi_B)},
                             {"W", to_string(w)},
                             {"W_dec", to_decimal3(w)}});
  }
  if (w_star) {
    j["w_star"] = to_string(*w_star);
    j["w_star_dec"] = to_decimal3(*w_star);
  }
  return j.dump(2);
}

std::string partition_dot(const StrategyPartition& plan) {
  return dot_of(diagram_of(plan));
}

std::string partition_svg(const StrategyPartition& plan) {
  return svg_of(diagram_of(plan));
}

std::string regions_dot(const std::vector<ActionRegion>& regions) {
  return dot_of(diagram_of(regions));
}

std::string regions_svg(const std::vector<ActionRegion>& regions) {
  return svg_of(diagram_of(regions));
}

namespace {

void tree_dot_node(std::ostringstream& os, const TreeNode& node, int& next,
                   int id) {
  os << "  n" << id << " [label=\"t=" << node.t << "\\n(" << to_string(node.p)
     << ", " << to_string(node.q) << ")\\nS " << to_string(node.payoff_S) << "  B "
     << to_string(node.payoff_B);
  if (node.mover)
    os << "\\n" << (*node.mover == Mover::bob ? "B" : "S")
       << (node.silent ? " silent" : " moves");
  os << "\"];\n";
  for (const auto& [prob, child] : node.children) {
    const int cid = next++;
    tree_dot_node(os, child, next, cid);
    os << "  n" << id << " -> n" << cid << " [label=\"" << to_string(prob)
       << "\"];\n";
  }
}

}  // namespace

std::string tree_dot(const TreeNode& root) {
  std::ostringstream os;
  os << "digraph protocol {\n  node [shape=box, fontsize=11];\n";
  int next = 1;
  tree_dot_node(os, root, next, 0);
  os << "}\n";
  return os.str();
}

}  // namespace commgame
