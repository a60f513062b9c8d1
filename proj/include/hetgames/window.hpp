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

#ifndef HETGAMES_WINDOW_HPP
#define HETGAMES_WINDOW_HPP

#include <vector>

#include "hetgames/qualitative.hpp"

namespace hetgames {

// All solvers in this module read weight dimension 1 of the arena's game.
// Strategies returned here reference the caller's game; internally built
// products are owned by the strategy closures.

/** Blocked sum: bottom absorbs, and any negative total collapses to bottom. */
Weight oplus(Weight a, Weight b);

struct WindowClass {
  bool good = false;
  int closedAt = -1;  // steps until the first nonnegative total
};

/** Classifies the window opened before w[0]; needs at least lambda weights. */
WindowClass window_classify(const std::vector<Weight>& w, int lambda);

struct DecompositionResult {
  bool ok = false;
  std::vector<long long> positions;  // greedy segment starts, beginning at 0
  long long failPosition = -1;       // earliest position whose window stays open
};

/**
 * Greedy split of the infinite word stem.period^w into segments that end at
 * their first closure point.  Stops once a segment start repeats a period
 * offset; every window is good iff no segment stays open lambda steps.
 */
DecompositionResult good_decomposition(const std::vector<Weight>& stem,
                                       const std::vector<Weight>& period, int lambda);

struct SolveOptions {
  bool strategies = true;  // skip machine construction when false
  long long budget = kDefaultNodeBudget;
};

struct IcwResult {
  VertexSet win;
  // values[l][v]: best guaranteed total of a chain of 1..l edges from v ending
  // in the target with every suffix total nonnegative; kNegInf when none.
  std::vector<std::vector<Weight>> values;
  MooreStrategy s1, s2;
};

/** Forcing a closed chain of at most lambda edges into U; memory lambda+1. */
IcwResult icw_end(const Arena& a, const VertexSet& U, int lambda,
                  const SolveOptions& opts = {});

struct GdResult {
  VertexSet win;
  std::vector<VertexSet> iterates;  // X_0 = U up to the fixpoint
  MooreStrategy s1, s2;
};

/**
 * Forcing a prefix that splits into closed segments of at most lambda steps
 * each and ends in U.
 */
GdResult gd_end(const Arena& a, const VertexSet& U, int lambda,
                const SolveOptions& opts = {});

struct EndResult {
  VertexSet win;
  MooreStrategy s1, s2;
};

/**
 * Forcing one closed segment of at most lambda steps that either enters the
 * region where segment decomposition reaches X, or ends in Z having stayed
 * inside U throughout.
 */
EndResult end_lambda(const Arena& a, const VertexSet& U, const VertexSet& X,
                     const VertexSet& Z, int lambda, const SolveOptions& opts = {});

struct ObjFResult {
  VertexSet win;
  std::vector<VertexSet> zTrace;  // Z_0 = domain down to the fixpoint
  MooreStrategy s1, s2;
};

/**
 * Plays that either keep every window closing without ever leaving U, or
 * reach X through a prefix of closed segments.
 */
ObjFResult obj_f(const Arena& a, const VertexSet& U, const VertexSet& X, int lambda,
                 const SolveOptions& opts = {});

/** Every window closes within lambda steps. */
SolveResult solve_wmp_single(const Arena& a, int lambda, const SolveOptions& opts = {});

/** Windows all close and the play stays in U. */
SolveResult wmp_safe(const Arena& a, const VertexSet& U, int lambda,
                     const SolveOptions& opts = {});

/** Windows all close and the play visits U at least once. */
SolveResult wmp_reach(const Arena& a, const VertexSet& U, int lambda,
                      const SolveOptions& opts = {});

/** Windows all close and the play visits every listed set at least once. */
SolveResult wmp_gen_reach(const Arena& a, const std::vector<VertexSet>& targets,
                          int lambda, const SolveOptions& opts = {});

/** Windows all close and the play visits U infinitely often. */
SolveResult wmp_buchi(const Arena& a, const VertexSet& U, int lambda,
                      const SolveOptions& opts = {});

/** Windows all close and the play visits every listed set infinitely often. */
SolveResult wmp_gen_buchi(const Arena& a, const std::vector<VertexSet>& targets,
                          int lambda, const SolveOptions& opts = {});

struct CobuchiTrace {
  std::vector<VertexSet> outer;              // X_0 = empty up to the fixpoint
  std::vector<std::vector<VertexSet>> inner;  // per outer step, its Z trace
};

/** Windows all close and the play eventually stays inside U. */
SolveResult wmp_cobuchi(const Arena& a, const VertexSet& U, int lambda,
                        const SolveOptions& opts = {}, CobuchiTrace* trace = nullptr);

/**
 * One window atom conjoined with value atoms over other dimensions.  Splits
 * every edge so the value atoms become vertex conditions, dispatches to the
 * matching solver above and replays the strategies on the input game.  The
 * supported shapes are: any number of Inf atoms, plus either Sup atoms, or
 * LimSup atoms, or at most one LimInf atom.  Anything else throws
 * FragmentMismatchError.  Atoms must be in normal form (>= 0).
 */
SolveResult solve_one_wmp_fragment(const GameStructure& g,
                                   const AtomicObjective& wmpAtom,
                                   const std::vector<AtomicObjective>& otherAtoms,
                                   const SolveOptions& opts = {});

}  // namespace hetgames

#endif  // HETGAMES_WINDOW_HPP
