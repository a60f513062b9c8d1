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

#include "hetgames/objective.hpp"

#include <cctype>

namespace hetgames {

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::WMP: return "WMP";
    case Measure::Inf: return "Inf";
    case Measure::Sup: return "Sup";
    case Measure::LimInf: return "LimInf";
    case Measure::LimSup: return "LimSup";
  }
  return "?";
}

const char* rel_name(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
  }
  return "?";
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Atom: return "atom";
    case Shape::Intersection: return "intersection";
    case Shape::Dnf: return "dnf";
    case Shape::Cnf: return "cnf";
    case Shape::General: return "general";
  }
  return "?";
}

ObjectiveExpr ObjectiveExpr::make_and(std::vector<ObjectiveExpr> kids) {
  if (kids.size() == 1) return kids[0];
  ObjectiveExpr e;
  e.kind = Kind::And;
  e.kids = std::move(kids);
  return e;
}

ObjectiveExpr ObjectiveExpr::make_or(std::vector<ObjectiveExpr> kids) {
  if (kids.size() == 1) return kids[0];
  ObjectiveExpr e;
  e.kind = Kind::Or;
  e.kids = std::move(kids);
  return e;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, int gameDim) : s_(text), dim_(gameDim) {}

  ObjectiveExpr run() {
    ObjectiveExpr e = expr();
    skipWs();
    if (pos_ != s_.size()) fail("end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw ObjectiveSyntaxError(pos_, expected);
  }

  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skipWs();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("'") + c + "'");
  }

  ObjectiveExpr expr() {
    std::vector<ObjectiveExpr> terms{term()};
    while (eat('|')) terms.push_back(term());
    return ObjectiveExpr::make_or(std::move(terms));
  }

  ObjectiveExpr term() {
    std::vector<ObjectiveExpr> factors{factor()};
    while (eat('&')) factors.push_back(factor());
    return ObjectiveExpr::make_and(std::move(factors));
  }

  ObjectiveExpr factor() {
    skipWs();
    if (eat('(')) {
      ObjectiveExpr e = expr();
      expect(')');
      return e;
    }
    return atom();
  }

  std::string ident() {
    skipWs();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("a measure name");
    return s_.substr(start, pos_ - start);
  }

  long long integer() {
    skipWs();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("an integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  Rel rel() {
    skipWs();
    if (pos_ + 1 < s_.size() && s_[pos_] == '>' && s_[pos_ + 1] == '=') {
      pos_ += 2;
      return Rel::Ge;
    }
    if (pos_ + 1 < s_.size() && s_[pos_] == '<' && s_[pos_ + 1] == '=') {
      pos_ += 2;
      return Rel::Le;
    }
    if (pos_ < s_.size() && s_[pos_] == '>') {
      ++pos_;
      return Rel::Gt;
    }
    if (pos_ < s_.size() && s_[pos_] == '<') {
      ++pos_;
      return Rel::Lt;
    }
    fail("a comparison operator");
  }

  Rational rational() {
    Rational r;
    r.num = integer();
    if (eat('/')) {
      r.den = integer();
      if (r.den <= 0) fail("a positive denominator");
    }
    return r;
  }

  int dimension() {
    long long d = integer();
    if (d < 1 || d > dim_) {
      throw BadDimensionError("dimension " + std::to_string(d) + " out of range 1.." +
                              std::to_string(dim_));
    }
    return static_cast<int>(d);
  }

  ObjectiveExpr atom() {
    std::size_t nameAt = pos_;
    std::string name = ident();
    AtomicObjective a;
    if (name == "WMP") {
      a.measure = Measure::WMP;
      expect('(');
      long long lambda = integer();
      if (lambda < 1) throw BadWindowError("window length must be at least 1");
      a.lambda = static_cast<int>(lambda);
      expect(',');
      a.rel = rel();
      a.threshold = rational();
      expect('@');
      a.dimension = dimension();
      expect(')');
      return ObjectiveExpr::make_atom(a);
    }
    if (name == "Inf") a.measure = Measure::Inf;
    else if (name == "Sup") a.measure = Measure::Sup;
    else if (name == "LimInf") a.measure = Measure::LimInf;
    else if (name == "LimSup") a.measure = Measure::LimSup;
    else {
      pos_ = nameAt;
      fail("one of WMP, Inf, Sup, LimInf, LimSup");
    }
    expect('(');
    a.rel = rel();
    a.threshold = rational();
    expect('@');
    a.dimension = dimension();
    expect(')');
    return ObjectiveExpr::make_atom(a);
  }

  const std::string& s_;
  int dim_;
  std::size_t pos_ = 0;
};

void collect_leaves(const ObjectiveExpr& e, std::vector<const AtomicObjective*>& out) {
  if (e.kind == ObjectiveExpr::Kind::Atom) {
    out.push_back(&e.atom);
    return;
  }
  for (const ObjectiveExpr& k : e.kids) collect_leaves(k, out);
}

std::string rational_string(const Rational& r) {
  std::string s = std::to_string(r.num);
  if (r.den != 1) s += "/" + std::to_string(r.den);
  return s;
}

}  // namespace

ObjectiveExpr parse_objective(const std::string& text, int gameDim) {
  return Parser(text, gameDim).run();
}

std::string to_string(const AtomicObjective& a) {
  std::string s = measure_name(a.measure);
  s += "(";
  if (a.measure == Measure::WMP) s += std::to_string(a.lambda) + ",";
  s += rel_name(a.rel);
  s += rational_string(a.threshold);
  s += "@" + std::to_string(a.dimension) + ")";
  return s;
}

std::string to_string(const ObjectiveExpr& e) {
  switch (e.kind) {
    case ObjectiveExpr::Kind::Atom:
      return to_string(e.atom);
    case ObjectiveExpr::Kind::And: {
      std::string s;
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) s += "&";
        const ObjectiveExpr& k = e.kids[i];
        bool paren = k.kind == ObjectiveExpr::Kind::Or;
        s += paren ? "(" + to_string(k) + ")" : to_string(k);
      }
      return s;
    }
    case ObjectiveExpr::Kind::Or: {
      std::string s;
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) s += "|";
        s += to_string(e.kids[i]);
      }
      return s;
    }
  }
  return "";
}

std::vector<const AtomicObjective*> leaves_of(const ObjectiveExpr& e) {
  std::vector<const AtomicObjective*> out;
  collect_leaves(e, out);
  return out;
}

Shape shape_of(const ObjectiveExpr& e) {
  using K = ObjectiveExpr::Kind;
  auto allAtoms = [](const std::vector<ObjectiveExpr>& kids) {
    for (const ObjectiveExpr& k : kids) {
      if (k.kind != K::Atom) return false;
    }
    return true;
  };
  if (e.kind == K::Atom) return Shape::Atom;
  if (e.kind == K::And) {
    if (allAtoms(e.kids)) return Shape::Intersection;
    for (const ObjectiveExpr& k : e.kids) {
      if (k.kind == K::And || (k.kind == K::Or && !allAtoms(k.kids))) return Shape::General;
    }
    return Shape::Cnf;
  }
  for (const ObjectiveExpr& k : e.kids) {
    if (k.kind == K::Or || (k.kind == K::And && !allAtoms(k.kids))) return Shape::General;
  }
  return Shape::Dnf;
}

bool is_normal_form(const ObjectiveExpr& e) {
  std::vector<const AtomicObjective*> ls = leaves_of(e);
  for (std::size_t j = 0; j < ls.size(); ++j) {
    const AtomicObjective& a = *ls[j];
    if (a.rel != Rel::Ge || a.threshold.num != 0) return false;
    if (a.dimension != static_cast<int>(j) + 1) return false;
  }
  return true;
}

namespace {

ObjectiveExpr rewrite_leaves(const ObjectiveExpr& e, int& next,
                             const std::vector<AtomicObjective>& newAtoms) {
  if (e.kind == ObjectiveExpr::Kind::Atom) return ObjectiveExpr::make_atom(newAtoms[next++]);
  ObjectiveExpr out;
  out.kind = e.kind;
  for (const ObjectiveExpr& k : e.kids) out.kids.push_back(rewrite_leaves(k, next, newAtoms));
  return out;
}

}  // namespace

NormalizedObjective normalize(const ObjectiveExpr& e, const GameStructure& g) {
  std::vector<const AtomicObjective*> ls = leaves_of(e);
  NormalizationCertificate cert;
  std::vector<AtomicObjective> newAtoms;
  for (std::size_t j = 0; j < ls.size(); ++j) {
    const AtomicObjective& a = *ls[j];
    if (a.dimension < 1 || a.dimension > g.dimension()) {
      throw BadDimensionError("objective reads dimension " + std::to_string(a.dimension) +
                              " but the game has " + std::to_string(g.dimension()));
    }
    DimensionRewrite dr;
    dr.sourceDim = a.dimension;
    long long b = a.threshold.den;
    long long aTh = a.threshold.num;
    Measure m = a.measure;
    bool strict = (a.rel == Rel::Gt || a.rel == Rel::Lt);
    bool lower = (a.rel == Rel::Ge || a.rel == Rel::Gt);
    if (m == Measure::WMP) {
      // Window mean above the threshold iff the scaled window total is >= 0.
      // Strict bounds fold the window length into the scale: over a window of
      // length l <= lambda, lambda*t - l >= 0 iff t >= 1 iff t > 0.
      long long lam = a.lambda;
      dr.scale = strict ? lam * b : b;
      dr.negated = !lower;
      dr.windowScaled = strict;
      if (strict) dr.shift = lower ? lam * aTh + 1 : lam * aTh - 1;
      else dr.shift = aTh;
    } else {
      dr.scale = b;
      if (lower) {
        dr.shift = strict ? aTh + 1 : aTh;
        dr.negated = false;
      } else {
        dr.shift = strict ? aTh - 1 : aTh;
        dr.negated = true;
        dr.measureSwapped = true;
        if (m == Measure::Inf) m = Measure::Sup;
        else if (m == Measure::Sup) m = Measure::Inf;
        else if (m == Measure::LimInf) m = Measure::LimSup;
        else if (m == Measure::LimSup) m = Measure::LimInf;
      }
    }
    cert.dims.push_back(dr);
    AtomicObjective na;
    na.measure = m;
    na.dimension = static_cast<int>(j) + 1;
    na.rel = Rel::Ge;
    na.threshold = {0, 1};
    na.lambda = a.lambda;
    newAtoms.push_back(na);
  }

  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& src = g.edge(ei);
    Edge ne{src.src, src.dst, {}};
    ne.w.reserve(cert.dims.size());
    for (const DimensionRewrite& dr : cert.dims) {
      Weight w = src.w[dr.sourceDim - 1];
      Weight t = dr.scale * w - dr.shift;
      ne.w.push_back(dr.negated ? -t : t);
    }
    edges.push_back(std::move(ne));
  }
  std::vector<Player> owners;
  owners.reserve(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) owners.push_back(g.owner(v));

  NormalizedObjective out;
  int next = 0;
  out.expr = rewrite_leaves(e, next, newAtoms);
  out.game = GameStructure::build(std::move(owners), std::move(edges));
  out.game.names = g.names;
  out.cert = std::move(cert);
  return out;
}

}  // namespace hetgames
