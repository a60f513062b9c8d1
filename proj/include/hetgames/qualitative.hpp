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

#include "hetgames/objective.hpp"
#include "hetgames/strategy.hpp"

namespace hetgames {

/** Non-owning view of a game restricted to a vertex subset. */
struct Arena {
  const GameStructure* g = nullptr;
  VertexSet domain;

  Arena(const GameStructure& game) : g(&game), domain(VertexSet::all(game.num_vertices())) {}
  Arena(const SubgameView& view) : g(view.base), domain(view.retained) {}
  Arena(const GameStructure& game, VertexSet dom) : g(&game), domain(std::move(dom)) {}

  bool in(Vertex v) const { return domain.test(v); }
  int size() const { return domain.count(); }

  Arena restricted(const VertexSet& keep) const { return Arena(*g, domain & keep); }
  Arena without(const VertexSet& drop) const { return Arena(*g, domain - drop); }
};

struct AttractorResult {
  VertexSet attractor;
  std::vector<int> rank;         // -1 outside the attractor
  std::vector<int> witnessEdge;  // chosen edge for attracting-player vertices, -1 otherwise
};

/** Vertices from which p can force a visit to `target` inside the arena. */
AttractorResult attractor(const Arena& a, Player p, const VertexSet& target);

struct WinningRegions {
  VertexSet w1, w2;
};

struct SolveResult {
  WinningRegions regions;
  MooreStrategy s1, s2;
};

SolveResult solve_reach(const Arena& a, const VertexSet& U);
SolveResult solve_safe(const Arena& a, const VertexSet& U);
SolveResult solve_buchi(const Arena& a, const VertexSet& U);
SolveResult solve_cobuchi(const Arena& a, const VertexSet& U);

/** Visit every set at least once; memory is a visited-set bitmask. */
SolveResult solve_gen_reach(const Arena& a, const std::vector<VertexSet>& sets,
                            long long budget = kDefaultNodeBudget);

/** Visit every set infinitely often; memory is a cyclic progress counter. */
SolveResult solve_gen_buchi(const Arena& a, const std::vector<VertexSet>& sets);

/** All `sets` infinitely often and eventually always inside C. */
SolveResult solve_gen_buchi_cobuchi(const Arena& a, const std::vector<VertexSet>& sets,
                                    const VertexSet& C, long long budget = kDefaultNodeBudget);

/**
 * Intersection of Inf/Sup/LimInf/LimSup atoms (normal form, one dimension
 * per atom). Throws NotIslError when a WMP atom is present.
 */
SolveResult solve_isl_intersection(const GameStructure& g,
                                   const std::vector<AtomicObjective>& atoms,
                                   long long budget = kDefaultNodeBudget);

}  // namespace hetgames
