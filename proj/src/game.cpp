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

#include "hetgames/game.hpp"

#include <algorithm>
#include <cstdlib>

namespace hetgames {

GameStructure GameStructure::build(std::vector<Player> owners, std::vector<Edge> edges) {
  GameStructure g;
  const int n = static_cast<int>(owners.size());
  if (n == 0) throw BadEndpointError("game must have at least one vertex");
  int dim = -1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw BadEndpointError("edge " + std::to_string(i) + " has endpoint outside the vertex range");
    }
    if (dim < 0) {
      dim = static_cast<int>(e.w.size());
    } else if (static_cast<int>(e.w.size()) != dim) {
      throw DimensionMismatchError("edge " + std::to_string(i) + " has " +
                                   std::to_string(e.w.size()) + " weights, expected " +
                                   std::to_string(dim));
    }
  }
  if (dim < 0) dim = 0;
  g.owners_ = std::move(owners);
  g.edges_ = std::move(edges);
  g.dim_ = dim;
  g.out_.assign(n, {});
  for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
    g.out_[g.edges_[e].src].push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    if (g.out_[v].empty()) {
      throw DeadlockVertexError(v, "vertex " + std::to_string(v) + " has no outgoing edge");
    }
  }
  g.maxAbs_ = 0;
  for (const Edge& e : g.edges_) {
    for (Weight w : e.w) g.maxAbs_ = std::max<Weight>(g.maxAbs_, std::llabs(w));
  }
  return g;
}

Weight GameStructure::max_abs_weight_dim(int m) const {
  if (m < 1 || m > dim_) throw BadDimensionError("dimension " + std::to_string(m) + " out of range");
  Weight r = 0;
  for (const Edge& e : edges_) r = std::max<Weight>(r, std::llabs(e.w[m - 1]));
  return r;
}

GameStructure GameStructure::project_dimension(int m) const {
  if (m < 1 || m > dim_) throw BadDimensionError("dimension " + std::to_string(m) + " out of range");
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const Edge& e : edges_) es.push_back({e.src, e.dst, {e.w[m - 1]}});
  GameStructure g = build(owners_, std::move(es));
  g.names = names;
  return g;
}

SubgameView induced_subgame(const GameStructure& g, const VertexSet& retained, Player closedFor) {
  if (retained.universe() != g.num_vertices()) {
    throw BadEndpointError("retained set universe does not match the game");
  }
  for (Vertex v : retained.elements()) {
    bool anyIn = false;
    bool allIn = true;
    for (int e : g.out(v)) {
      if (retained.test(g.edge(e).dst)) anyIn = true;
      else allIn = false;
    }
    if (g.owner(v) == closedFor) {
      if (!allIn) throw NotClosedError(v, "vertex " + g.name_of(v) + " lets " +
                                              player_name(closedFor) + " exit the set");
    } else {
      if (!anyIn) throw NotClosedError(v, "vertex " + g.name_of(v) +
                                              " forces the opponent out of the set");
    }
  }
  return SubgameView{&g, retained, closedFor};
}

Lasso make_lasso(const GameStructure& g, std::vector<Vertex> stem, std::vector<Vertex> period,
                 std::vector<int> stemEdges, std::vector<int> periodEdges) {
  if (period.empty()) throw BadEndpointError("lasso period must be nonempty");
  if (stemEdges.size() != stem.size() || periodEdges.size() != period.size()) {
    throw BadEndpointError("lasso edge list lengths do not match vertex lists");
  }
  auto checkEdge = [&](int e, Vertex from, Vertex to) {
    if (e < 0 || e >= g.num_edges()) throw BadEndpointError("lasso edge index out of range");
    if (g.edge(e).src != from || g.edge(e).dst != to) {
      throw BadEndpointError("lasso edge does not join consecutive vertices");
    }
  };
  for (std::size_t i = 0; i < stem.size(); ++i) {
    Vertex to = (i + 1 < stem.size()) ? stem[i + 1] : period[0];
    checkEdge(stemEdges[i], stem[i], to);
  }
  for (std::size_t j = 0; j < period.size(); ++j) {
    checkEdge(periodEdges[j], period[j], period[(j + 1) % period.size()]);
  }
  Lasso l;
  l.stem = std::move(stem);
  l.period = std::move(period);
  l.stemEdges = std::move(stemEdges);
  l.periodEdges = std::move(periodEdges);
  return l;
}

}  // namespace hetgames
