/*
 * Copyright 2026 The hetgames authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hetgames/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace hetgames {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

long long parse_int(const std::string& s, int line, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + s + "'");
  }
}

Player parse_player(const std::string& s, int line) {
  if (s == "P1") return Player::P1;
  if (s == "P2") return Player::P2;
  throw ParseError(line, "expected P1 or P2, got '" + s + "'");
}

}  // namespace

GameStructure read_game(std::istream& in) {
  std::string line;
  int lineNo = 0;
  int expectedV = -1;
  int dim = -1;
  std::vector<Player> owners;
  std::vector<std::string> names;
  std::map<std::string, Vertex> index;
  std::vector<Edge> edges;

  auto resolve = [&](const std::string& s, int ln) -> Vertex {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    // Bare indices are accepted so machine-generated files need no name table.
    long long v = parse_int(s, ln, "a vertex name or index");
    if (v < 0 || v >= static_cast<long long>(owners.size())) {
      throw ParseError(ln, "unknown vertex '" + s + "'");
    }
    return static_cast<Vertex>(v);
  };

  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "game") {
      if (expectedV >= 0) throw ParseError(lineNo, "duplicate game header");
      if (toks.size() != 3) throw ParseError(lineNo, "expected 'game <|V|> <n>'");
      expectedV = static_cast<int>(parse_int(toks[1], lineNo, "a vertex count"));
      dim = static_cast<int>(parse_int(toks[2], lineNo, "a dimension count"));
      if (expectedV <= 0 || dim <= 0) throw ParseError(lineNo, "counts must be positive");
    } else if (toks[0] == "v") {
      if (expectedV < 0) throw ParseError(lineNo, "vertex before game header");
      if (toks.size() != 3) throw ParseError(lineNo, "expected 'v <name> <P1|P2>'");
      if (index.count(toks[1])) throw ParseError(lineNo, "duplicate vertex '" + toks[1] + "'");
      index[toks[1]] = static_cast<Vertex>(owners.size());
      names.push_back(toks[1]);
      owners.push_back(parse_player(toks[2], lineNo));
    } else if (toks[0] == "e") {
      if (expectedV < 0) throw ParseError(lineNo, "edge before game header");
      if (static_cast<int>(toks.size()) != 3 + dim) {
        throw ParseError(lineNo, "expected 'e <src> <dst> w1 .. w" + std::to_string(dim) + "'");
      }
      Edge e;
      e.src = resolve(toks[1], lineNo);
      e.dst = resolve(toks[2], lineNo);
      for (int m = 0; m < dim; ++m) {
        e.w.push_back(parse_int(toks[3 + m], lineNo, "a weight"));
      }
      edges.push_back(std::move(e));
    } else {
      throw ParseError(lineNo, "unknown directive '" + toks[0] + "'");
    }
  }
  if (expectedV < 0) throw ParseError(lineNo + 1, "missing game header");
  if (static_cast<int>(owners.size()) != expectedV) {
    throw ParseError(lineNo + 1, "header promises " + std::to_string(expectedV) +
                                     " vertices, file has " + std::to_string(owners.size()));
  }
  if (edges.empty()) throw ParseError(lineNo + 1, "game has no edges");
  try {
    GameStructure g = GameStructure::build(std::move(owners), std::move(edges));
    g.names = std::move(names);
    return g;
  } catch (const Error& e) {
    throw ParseError(lineNo + 1, e.what());
  }
}

GameStructure load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_game(in);
}

void write_game(const GameStructure& g, std::ostream& out) {
  out << "game " << g.num_vertices() << ' ' << g.dimension() << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "v " << g.name_of(v) << ' ' << player_name(g.owner(v)) << '\n';
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    out << "e " << g.name_of(ed.src) << ' ' << g.name_of(ed.dst);
    for (Weight w : ed.w) out << ' ' << w;
    out << '\n';
  }
}

void save_game(const GameStructure& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_game(g, out);
}

void write_strategy(const GameStructure& g, const MooreStrategy& s, std::ostream& out) {
  TableStrategy t = explode(g, s);
  out << "strategy " << player_name(t.owner) << ' ' << t.states << ' '
      << t.initialState << '\n';
  for (long long m = 0; m < t.states; ++m) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      out << "t " << m << ' ' << g.name_of(v) << ' ' << t.update[m][v] << ' '
          << t.action[m][v] << '\n';
    }
  }
}

void save_strategy(const GameStructure& g, const MooreStrategy& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_strategy(g, s, out);
}

MooreStrategy read_strategy(const GameStructure& g, std::istream& in) {
  std::map<std::string, Vertex> index;
  for (Vertex v = 0; v < g.num_vertices(); ++v) index[g.name_of(v)] = v;

  std::string line;
  int lineNo = 0;
  TableStrategy t;
  bool seenHeader = false;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks = tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "strategy") {
      if (seenHeader) throw ParseError(lineNo, "duplicate strategy header");
      if (toks.size() != 4) throw ParseError(lineNo, "expected 'strategy <P1|P2> <states> <initial>'");
      seenHeader = true;
      t.owner = parse_player(toks[1], lineNo);
      t.states = parse_int(toks[2], lineNo, "a state count");
      t.initialState = parse_int(toks[3], lineNo, "an initial state");
      if (t.states <= 0 || t.initialState < 0 || t.initialState >= t.states) {
        throw ParseError(lineNo, "bad state count or initial state");
      }
      t.update.assign(t.states, std::vector<long long>(g.num_vertices(), 0));
      t.action.assign(t.states, std::vector<int>(g.num_vertices(), -1));
    } else if (toks[0] == "t") {
      if (!seenHeader) throw ParseError(lineNo, "entry before strategy header");
      if (toks.size() != 5) throw ParseError(lineNo, "expected 't <state> <vertex> <next> <edge>'");
      long long m = parse_int(toks[1], lineNo, "a state");
      if (m < 0 || m >= t.states) throw ParseError(lineNo, "state out of range");
      auto it = index.find(toks[2]);
      if (it == index.end()) throw ParseError(lineNo, "unknown vertex '" + toks[2] + "'");
      Vertex v = it->second;
      t.update[m][v] = parse_int(toks[3], lineNo, "a next state");
      if (t.update[m][v] < 0 || t.update[m][v] >= t.states) {
        throw ParseError(lineNo, "next state out of range");
      }
      int e = static_cast<int>(parse_int(toks[4], lineNo, "an edge id"));
      if (g.owner(v) == t.owner) {
        if (e < 0 || e >= g.num_edges() || g.edge(e).src != v) {
          throw ParseError(lineNo, "edge " + std::to_string(e) + " does not leave " + g.name_of(v));
        }
      }
      t.action[m][v] = e;
    } else {
      throw ParseError(lineNo, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!seenHeader) throw ParseError(lineNo + 1, "missing strategy header");
  // Unlisted owner entries default to a legal edge so the table is total.
  for (long long m = 0; m < t.states; ++m) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (g.owner(v) == t.owner && t.action[m][v] < 0) t.action[m][v] = g.out(v)[0];
    }
  }
  return from_table(t);
}

MooreStrategy load_strategy(const GameStructure& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_strategy(g, in);
}

void export_dot(const GameStructure& g, const WinningRegions* regions,
                const MooreStrategy* s1, const MooreStrategy* s2, std::ostream& out) {
  out << "digraph game {\n  rankdir=LR;\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "  n" << v << " [label=\"" << g.name_of(v) << "\", shape="
        << (g.owner(v) == Player::P1 ? "circle" : "box");
    if (regions != nullptr) {
      const char* color = regions->w1.test(v) ? "palegreen" : "lightcoral";
      out << ", style=filled, fillcolor=" << color;
    }
    out << "];\n";
  }
  // Bold the initial-memory choice of the vertex owner's machine.
  std::vector<bool> bold(g.num_edges(), false);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const MooreStrategy* s = g.owner(v) == Player::P1 ? s1 : s2;
    if (s == nullptr) continue;
    int e = s->action(s->initialState, v);
    if (e >= 0 && e < g.num_edges() && g.edge(e).src == v) bold[e] = true;
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    out << "  n" << ed.src << " -> n" << ed.dst << " [label=\"";
    for (std::size_t m = 0; m < ed.w.size(); ++m) {
      if (m > 0) out << ',';
      out << ed.w[m];
    }
    out << '"';
    if (bold[e]) out << ", style=bold, penwidth=2";
    out << "];\n";
  }
  out << "}\n";
}

}  // namespace hetgames
