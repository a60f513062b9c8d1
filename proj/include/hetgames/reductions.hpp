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

#ifndef HETGAMES_REDUCTIONS_HPP
#define HETGAMES_REDUCTIONS_HPP

#include <vector>

#include "hetgames/strategy.hpp"

namespace hetgames {

enum class QualKind { Reach, Safe, Buchi, CoBuchi };

const char* qual_kind_name(QualKind k);

/** A vertex objective over some game: visit / stay in / revisit / settle in `set`. */
struct QualAtom {
  QualKind kind = QualKind::Reach;
  VertexSet set;
};

/** Window atom carried through a reduction: threshold is always >= 0. */
struct WmpDim {
  int dimension = 1;  // 1-based in the produced game
  int lambda = 1;
};

/**
 * Splits every edge with a Player 1 midpoint so value constraints become
 * vertex constraints.  Input atoms must be in normal form (measure >= 0,
 * atom k on dimension k+1).  In the produced game the original vertices keep
 * their ids; edge e gains midpoint n+e.  Each non-window atom turns into a
 * vertex atom; each window atom keeps one weight dimension whose halves
 * carry -1 and 1 + w, with the window length doubled.
 */
struct EdgeSplitResult {
  GameStructure game;
  std::vector<QualAtom> qualAtoms;     // one per non-window input atom, input order
  std::vector<WmpDim> wmpAtoms;        // one per window input atom, input order
  std::vector<int> wmpIndexOfLeaf;     // per input atom: index into wmpAtoms, or -1
  std::vector<int> qualIndexOfLeaf;    // per input atom: index into qualAtoms, or -1
  std::vector<Vertex> midpointOfEdge;  // base edge -> its midpoint vertex
  std::vector<int> baseEdgeOfPart;     // split edge -> base edge
  std::vector<bool> entersMidpoint;    // split edge -> true for the first half
};

EdgeSplitResult reduce_edge_split(const GameStructure& g,
                                  const std::vector<AtomicObjective>& atoms);

/**
 * Replays a strategy for the split game on the base game.  Memory pairs the
 * split machine's state with the previously consumed base vertex, so each
 * base step can feed the machine both halves of the traversed edge.
 */
MooreStrategy lift_edge_split(const EdgeSplitResult& r, const GameStructure& base,
                              const MooreStrategy& splitStrategy);

/**
 * Synchronous product of the game with one small tracker per atom.  Input
 * atoms must be in normal form.  Every atom becomes a revisit or settle
 * condition over product states:
 *   Inf     -> settle in {no negative edge seen}    (the flag is absorbing)
 *   Sup     -> revisit  {some nonneg edge seen}     (absorbing)
 *   LimInf  -> settle in {last edge nonneg}
 *   LimSup  -> revisit  {last edge nonneg}
 *   WMP     -> settle in {tracker alive}; the tracker follows the earliest
 *              still-open window and dies once it stays open lambda steps.
 * Trackers advance on traversed edges, so product states are keyed by the
 * history since the start vertex; state (v, all-fresh) exists for every v.
 */
struct ExpandResult {
  GameStructure game;
  std::vector<QualKind> kinds;    // per atom: Buchi or CoBuchi
  std::vector<VertexSet> targets;  // per atom, over product states
  std::vector<Vertex> fwd;         // base vertex -> (v, all-fresh)
  std::vector<Vertex> baseOf;      // product vertex -> base vertex
  std::vector<long long> compOf;   // product vertex -> packed tracker tuple
  std::vector<int> baseEdge;       // product edge -> base edge
  StatePacker packer;              // decodes compOf into per-atom values
  long long stateBound = 0;        // |V| * (product of per-atom tracker sizes)
};

ExpandResult reduce_expand(const GameStructure& g,
                           const std::vector<AtomicObjective>& atoms,
                           long long budget = kDefaultNodeBudget);

/** Same product with every atom condition flipped (kind swapped, set complemented). */
ExpandResult reduce_complement_expand(const GameStructure& g,
                                      const std::vector<AtomicObjective>& atoms,
                                      long long budget = kDefaultNodeBudget);

/**
 * Replays a product strategy on the base game.  Memory pairs the product
 * machine's state with the tracked product vertex; the tracker resolves each
 * base move to a product edge (parallel edges resolve to the lowest id).
 */
MooreStrategy lift_expand(const ExpandResult& r, const GameStructure& base,
                          const MooreStrategy& productStrategy);

/**
 * Recodes vertex atoms as weight atoms on a fresh copy of the graph: dimension
 * m pays 0 on edges leaving `atoms[m-1].set` members and -1 elsewhere, so
 * Reach becomes Sup >= 0, Safe becomes Inf >= 0, Buchi becomes LimSup >= 0 and
 * coBuchi becomes LimInf >= 0.
 */
struct WeightedRecoding {
  GameStructure game;
  std::vector<AtomicObjective> atoms;
};

WeightedRecoding reduce_qual_to_weighted(const GameStructure& g,
                                         const std::vector<QualAtom>& atoms);

}  // namespace hetgames

#endif  // HETGAMES_REDUCTIONS_HPP
