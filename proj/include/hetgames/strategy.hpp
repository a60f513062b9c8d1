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

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hetgames/objective.hpp"

namespace hetgames {

/**
 * Finite-memory strategy as a Moore machine. `action(m, v)` picks an outgoing
 * edge of v for the owner; `update(m, v)` consumes the current vertex before
 * the play moves on, so the memory always lags one vertex behind.
 */
struct MooreStrategy {
  Player owner = Player::P1;
  long long memorySize = 1;  // states are 0..memorySize-1
  long long initialState = 0;
  std::function<long long(long long, Vertex)> update;
  std::function<int(long long, Vertex)> action;

  bool memoryless() const { return memorySize == 1; }
};

/** Strategy that plays a fixed edge per vertex (global edge ids). */
MooreStrategy memoryless_strategy(const GameStructure& g, Player owner,
                                  std::vector<int> edgeOfVertex);

/** Strategy always taking the lowest-index outgoing edge. */
MooreStrategy lowest_edge_strategy(const GameStructure& g, Player owner);

/** Uniformly seeded finite-memory strategy (for adversarial sampling). */
MooreStrategy random_strategy(const GameStructure& g, Player owner, long long memorySize,
                              std::mt19937_64& rng);

/** Explicit transition tables of the states reachable from the initial state. */
struct TableStrategy {
  Player owner = Player::P1;
  long long states = 0;  // reachable count
  long long initialState = 0;
  // Indexed [state][vertex].
  std::vector<std::vector<long long>> update;
  std::vector<std::vector<int>> action;
};

/** Explores (memory, vertex) pairs reachable from every start vertex. */
TableStrategy explode(const GameStructure& g, const MooreStrategy& s,
                      long long budget = kDefaultNodeBudget);

MooreStrategy from_table(const TableStrategy& t);

/**
 * Plays both strategies from v0 until a (vertex, memory, memory) repeat,
 * which happens within |V| * |M1| * |M2| + 1 steps.
 */
Lasso play_out(const GameStructure& g, Vertex v0, const MooreStrategy& s1,
               const MooreStrategy& s2);

struct Verdict {
  bool overall = false;
  std::vector<bool> atomVerdicts;  // leaf order
  // For a failed WMP leaf: earliest position whose window never closes.
  std::vector<std::optional<long long>> badWindowPosition;
};

/** Decides each leaf on the lasso and folds the Boolean structure. */
Verdict evaluate(const GameStructure& g, const Lasso& lasso, const ObjectiveExpr& e);

/**
 * Ordered enumeration of all memoryless strategies of one player.
 * Throws BudgetExceededError when the count exceeds the budget.
 */
class MemorylessEnumerator {
 public:
  MemorylessEnumerator(const GameStructure& g, Player p,
                       long long budget = kDefaultNodeBudget);
  long long count() const { return count_; }
  std::optional<MooreStrategy> next();
  void rewind();

 private:
  const GameStructure& g_;
  Player p_;
  std::vector<Vertex> owned_;
  std::vector<int> choice_;
  long long count_ = 0;
  bool done_ = false;
};

/** Lowest-index edge staying inside `domain`, else the first edge. */
int lowest_staying(const GameStructure& g, const VertexSet& domain, Vertex v);

/** One sub-machine plus a positional pull region around it. */
struct CompositePart {
  VertexSet inner;
  MooreStrategy sub;
  std::vector<int> positional;  // per-vertex edge outside `inner`; -1 falls back
};

/**
 * Machine that runs one part at a time, resetting the part's sub-memory on
 * every switch. `partAfterArrival` picks the active part from the arrived
 * vertex; sub-memory advances only while the play sits in the part's inner
 * region, so entering it always starts the sub-machine fresh.
 */
MooreStrategy build_switching_machine(const GameStructure& g, Player owner,
                                      std::vector<CompositePart> parts,
                                      std::function<int(int, Vertex)> partAfterArrival,
                                      std::vector<int> fallback);

struct Counterexample {
  Vertex from = -1;
  std::string description;
  Lasso lasso;
};

struct CertifyReport {
  bool ok = true;
  long long playsChecked = 0;
  std::vector<Counterexample> counterexamples;
};

enum class CertifyMode { Sampled, ExhaustiveMemoryless };

/**
 * Checks that s1 wins from every vertex of regions.w1 and s2 from regions.w2.
 * Opponents are all memoryless strategies (exhaustive mode) or `samples`
 * seeded finite-memory machines with up to `sampleMemory` states.
 */
CertifyReport certify_region(const GameStructure& g, const ObjectiveExpr& e,
                             const VertexSet& w1, const VertexSet& w2,
                             const MooreStrategy& s1, const MooreStrategy& s2,
                             CertifyMode mode, int samples = 200, int sampleMemory = 3,
                             std::uint64_t seed = 1);

}  // namespace hetgames
