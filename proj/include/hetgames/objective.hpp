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

#pragma once

#include <string>
#include <vector>

#include "hetgames/game.hpp"

namespace hetgames {

enum class Measure { WMP, Inf, Sup, LimInf, LimSup };

enum class Rel { Ge, Gt, Le, Lt };

const char* measure_name(Measure m);
const char* rel_name(Rel r);

struct Rational {
  long long num = 0;
  long long den = 1;  // > 0
};

struct AtomicObjective {
  Measure measure = Measure::Inf;
  int dimension = 1;  // 1-based weight dimension
  Rel rel = Rel::Ge;
  Rational threshold;
  int lambda = 0;  // window length, WMP only
};

/** Boolean combination of atomic objectives (leaves in left-to-right order). */
struct ObjectiveExpr {
  enum class Kind { Atom, And, Or };
  Kind kind = Kind::Atom;
  AtomicObjective atom;
  std::vector<ObjectiveExpr> kids;

  static ObjectiveExpr make_atom(AtomicObjective a) {
    ObjectiveExpr e;
    e.kind = Kind::Atom;
    e.atom = a;
    return e;
  }
  static ObjectiveExpr make_and(std::vector<ObjectiveExpr> kids);
  static ObjectiveExpr make_or(std::vector<ObjectiveExpr> kids);
};

enum class Shape { Atom, Intersection, Dnf, Cnf, General };

const char* shape_name(Shape s);

/**
 * Grammar:
 *   expr   := term ('|' term)*
 *   term   := factor ('&' factor)*
 *   factor := atom | '(' expr ')'
 *   atom   := ('Inf'|'Sup'|'LimInf'|'LimSup') '(' rel rat '@' int ')'
 *           | 'WMP' '(' int ',' rel rat '@' int ')'
 *   rel    := '>=' | '>' | '<=' | '<'
 *   rat    := int ('/' int)?
 * Throws ObjectiveSyntaxError, BadDimensionError, BadWindowError.
 */
ObjectiveExpr parse_objective(const std::string& text, int gameDim);

std::string to_string(const ObjectiveExpr& e);
std::string to_string(const AtomicObjective& a);

Shape shape_of(const ObjectiveExpr& e);

/** Collects leaves left to right. */
std::vector<const AtomicObjective*> leaves_of(const ObjectiveExpr& e);

/** True when every leaf is `measure >= 0` on its own dimension, in leaf order. */
bool is_normal_form(const ObjectiveExpr& e);

struct DimensionRewrite {
  int sourceDim = 1;     // dimension read from the input game
  long long scale = 1;   // > 0
  long long shift = 0;
  bool negated = false;  // w' = negated ? -(scale*w - shift) : scale*w - shift
  bool measureSwapped = false;
  bool windowScaled = false;  // strict WMP folded the window length into the scale
};

struct NormalizationCertificate {
  std::vector<DimensionRewrite> dims;  // one per output dimension, in leaf order
};

struct NormalizedObjective {
  ObjectiveExpr expr;
  GameStructure game;
  NormalizationCertificate cert;
};

/**
 * Rewrites every leaf to `measure >= 0` on a private weight dimension.
 * Output dimension j carries the rewrite of leaf j (left-to-right).
 */
NormalizedObjective normalize(const ObjectiveExpr& e, const GameStructure& g);

}  // namespace hetgames
