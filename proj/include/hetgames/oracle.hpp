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

#ifndef HETGAMES_ORACLE_HPP
#define HETGAMES_ORACLE_HPP

#include <cstdint>

#include "hetgames/qualitative.hpp"

namespace hetgames {

/**
 * Reference region computation, kept deliberately separate from the solver
 * pipeline: it builds its own tracker product and decides the resulting
 * revisit/settle combination with a recursive decomposition over the sets of
 * states a play can visit infinitely often.  Regions only, no strategies.
 * Intended for small cross-checking instances; throws ProductTooLargeError
 * when the product or the color count gets out of hand.
 */
WinningRegions oracle_solve(const GameStructure& g, const ObjectiveExpr& expr,
                            long long budget = kDefaultNodeBudget);

/**
 * Value of the best chain of 1..lambda edges from `from` that ends in U with
 * every suffix total nonnegative; kNegInf when no such chain can be forced.
 * Plain memoized minmax over (vertex, steps left).
 */
Weight depth_limited_minmax(const GameStructure& g, const VertexSet& U, int lambda,
                            Vertex from);

/**
 * Vertices from which Player 1 forces a prefix that decomposes into
 * inductively closed segments of at most lambda steps each, ending in U.
 * Solved as plain reachability on an explicit (vertex, steps left, worst
 * suffix) unfolding; segments restart at the first closure point..
 */
VertexSet oracle_gd_reach(const GameStructure& g, const VertexSet& U, int lambda);

struct RandomGameParams {
  int vertices = 5;
  int maxOutDegree = 3;
  int dimension = 1;
  Weight maxAbsWeight = 2;
  double p2Fraction = 0.5;
};

/** Deterministic, deadlock-free, parallel-edge-free instance for a seed. */
GameStructure random_game(std::uint64_t seed, const RandomGameParams& p = {});

}  // namespace hetgames

#endif  // HETGAMES_ORACLE_HPP
