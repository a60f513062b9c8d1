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

#include "hetgames/base.hpp"

namespace hetgames {

struct Edge {
  Vertex src = -1;
  Vertex dst = -1;
  std::vector<Weight> w;
};

/**
 * Two-player turn-based game on a finite multi-weighted graph.
 * Every vertex has at least one outgoing edge; multi-edges are allowed.
 */
class GameStructure {
 public:
  /**
   * Validates and builds a game.
   * Throws DeadlockVertexError, DimensionMismatchError, BadEndpointError.
   */
  static GameStructure build(std::vector<Player> owners, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(owners_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int dimension() const { return dim_; }
  Player owner(Vertex v) const { return owners_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<int>& out(Vertex v) const { return out_[v]; }

  /** Largest absolute weight over all edges and dimensions (0 if none). */
  Weight max_abs_weight() const { return maxAbs_; }

  /** Largest absolute weight in one dimension (1-based). */
  Weight max_abs_weight_dim(int m) const;

  /** Keeps one dimension (1-based), producing a 1-weighted copy. */
  GameStructure project_dimension(int m) const;

  /** Optional display names (empty when not loaded from a file). */
  std::vector<std::string> names;

  std::string name_of(Vertex v) const {
    if (v >= 0 && v < static_cast<int>(names.size()) && !names[v].empty()) return names[v];
    return "v" + std::to_string(v);
  }

 private:
  std::vector<Player> owners_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  int dim_ = 0;
  Weight maxAbs_ = 0;
};

/**
 * Restriction of a game to a vertex subset, checked to be closed for
 * `closedFor`: that player cannot exit and the opponent can always stay.
 */
struct SubgameView {
  const GameStructure* base = nullptr;
  VertexSet retained;
  Player closedFor = Player::P1;
};

/** Throws NotClosedError if `retained` is not closed for `closedFor`. */
SubgameView induced_subgame(const GameStructure& g, const VertexSet& retained,
                            Player closedFor);

/**
 * Ultimately periodic play: stem vertices, then the period repeated forever.
 * stemEdges[i] joins stem[i] to stem[i+1] (or to period[0] at the end);
 * periodEdges[j] joins period[j] to period[(j+1) % |period|].
 */
struct Lasso {
  std::vector<Vertex> stem;
  std::vector<Vertex> period;
  std::vector<int> stemEdges;
  std::vector<int> periodEdges;

  long long total_len() const {
    return static_cast<long long>(stem.size() + period.size());
  }

  Vertex vertex_at(long long t) const {
    if (t < static_cast<long long>(stem.size())) return stem[t];
    t -= static_cast<long long>(stem.size());
    return period[t % period.size()];
  }

  /** Edge taken from position t to position t+1. */
  int edge_at(long long t) const {
    if (t < static_cast<long long>(stemEdges.size())) return stemEdges[t];
    t -= static_cast<long long>(stemEdges.size());
    return periodEdges[t % periodEdges.size()];
  }
};

/** Validates adjacency and nonempty period; throws BadEndpointError. */
Lasso make_lasso(const GameStructure& g, std::vector<Vertex> stem,
                 std::vector<Vertex> period, std::vector<int> stemEdges,
                 std::vector<int> periodEdges);

}  // namespace hetgames
