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
#include <unordered_map>

#include "hetgames/qualitative.hpp"

namespace hetgames {

/**
 * Lazy synchronous product of an arena with a deterministic component whose
 * transition reads only the arrived base vertex. Only states reachable from
 * the per-vertex initial configurations are materialized; edge order follows
 * the base out-edge order, and weights are copied from the base edges.
 */
struct VertexCompProduct {
  GameStructure game;
  std::vector<Vertex> fwd;        // base vertex -> initial product state (-1 outside)
  std::vector<Vertex> baseOf;     // product state -> base vertex
  std::vector<long long> compOf;  // product state -> component value
  std::vector<int> baseEdge;      // product edge -> base edge
  long long compCount = 1;
  long long zeroComp = 0;  // pre-start component; fwd uses step(zeroComp, v)
  std::function<long long(long long, Vertex)> step;
  std::unordered_map<long long, Vertex> index;  // comp * |V| + v -> product state
  std::vector<int> baseFallback;  // per base vertex, a legal in-domain edge
  int baseVertices = 0;

  Vertex id_of(Vertex baseV, long long comp) const {
    auto it = index.find(comp * baseVertices + baseV);
    return it == index.end() ? -1 : it->second;
  }
};

VertexCompProduct build_vertex_comp_product(const Arena& a, long long compCount,
                                            long long zeroComp,
                                            std::function<long long(long long, Vertex)> step,
                                            long long budget = kDefaultNodeBudget);

/**
 * Turns a strategy over the product into one over the base game. Memory is
 * the pair (component, product-strategy memory), so the bound is the product
 * of the component count and the inner memory size.
 */
MooreStrategy lift_vertex_comp(const VertexCompProduct& prod, const MooreStrategy& productStrategy);

/** Product states whose component satisfies a predicate. */
VertexSet product_states_where(const VertexCompProduct& prod,
                               const std::function<bool(Vertex, long long)>& pred);

}  // namespace hetgames
