// Copyright 2026 The hetgames authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <string>

#include "hetgames/game.hpp"
#include "hetgames/io.hpp"

using namespace hetgames;

namespace {

std::string data_path(const std::string& name) {
  return std::string(HETGAMES_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("game: load fixture and inspect structure") {
  GameStructure g = load_game(data_path("fig1.game"));
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 6);
  CHECK(g.dimension() == 3);
  CHECK(g.max_abs_weight() == 2);
  CHECK(g.owner(0) == Player::P1);
  CHECK(g.owner(1) == Player::P1);
  CHECK(g.owner(2) == Player::P2);
  CHECK(g.name_of(0) == "v0");
  // Out-edge lists are sorted by destination, so iteration order is stable.
  const auto& out0 = g.out(0);
  REQUIRE(out0.size() == 2);
  CHECK(g.edge(out0[0]).dst == 1);
  CHECK(g.edge(out0[1]).dst == 2);
}

TEST_CASE("game: single self-loop vertex is a valid arena") {
  GameStructure g = GameStructure::build({Player::P1}, {{0, 0, {}}});
  CHECK(g.num_vertices() == 1);
  CHECK(g.num_edges() == 1);
  CHECK(g.dimension() == 0);
  CHECK(g.max_abs_weight() == 0);
}

TEST_CASE("game: deadlock vertex is rejected") {
  CHECK_THROWS_AS(GameStructure::build({Player::P1, Player::P2}, {{0, 1, {1}}}),
                  DeadlockVertexError);
  try {
    GameStructure::build({Player::P1, Player::P2}, {{0, 1, {1}}});
  } catch (const DeadlockVertexError& e) {
    CHECK(e.vertex() == 1);
  }
}

TEST_CASE("game: mismatched weight dimension is rejected") {
  CHECK_THROWS_AS(
      GameStructure::build({Player::P1}, {{0, 0, {1}}, {0, 0, {1, 2}}}),
      DimensionMismatchError);
}

TEST_CASE("game: edge endpoints must exist") {
  CHECK_THROWS_AS(GameStructure::build({Player::P1}, {{0, 3, {1}}}),
                  BadEndpointError);
}

TEST_CASE("game: project_dimension keeps structure and picks one weight") {
  GameStructure g = load_game(data_path("fig1.game"));
  GameStructure p = project_dimension(g, 2);
  CHECK(p.num_vertices() == g.num_vertices());
  CHECK(p.num_edges() == g.num_edges());
  CHECK(p.dimension() == 1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(p.owner(v) == g.owner(v));
  // Dimension 2 of the fixture is -1 everywhere except the v1 self-loop.
  for (Edge e = 0; e < g.num_edges(); ++e) {
    const EdgeData& ed = p.edge(e);
    if (ed.src == 1 && ed.dst == 1) {
      CHECK(ed.weights[0] == 0);
    } else {
      CHECK(ed.weights[0] == -1);
    }
  }
  CHECK(p.max_abs_weight() == 1);
}

TEST_CASE("game: project_dimension validates the index") {
  GameStructure g = load_game(data_path("fig1.game"));
  CHECK_THROWS_AS(project_dimension(g, 4), BadDimensionError);
  CHECK_THROWS_AS(project_dimension(g, 0), BadDimensionError);
  GameStructure one = project_dimension(g, 1);
  GameStructure same = project_dimension(one, 1);
  CHECK(write_game(one) == write_game(same));
}

TEST_CASE("game: induced subgame keeps ids dense and checks closure") {
  GameStructure g = load_game(data_path("fig1.game"));
  VertexSet keep(3);
  keep.set(0);
  keep.set(1);
  // P2 has no vertex inside, so the region is closed for P2.
  GameStructure sub = induced_subgame(g, keep, Player::P2);
  CHECK(sub.num_vertices() == 2);
  CHECK(sub.num_edges() == 3);
  CHECK(sub.name_of(0) == "v0");
  CHECK(sub.name_of(1) == "v1");

  VertexSet all = VertexSet::all(3);
  GameStructure whole = induced_subgame(g, all, Player::P1);
  CHECK(write_game(whole) == write_game(g));

  VertexSet bad(3);
  bad.set(1);
  // v1 owns only edges that leave {v1} except its self-loop; {v0} alone is the
  // clean non-closed case: v0 is P1's and both edges exit.
  VertexSet only0(3);
  only0.set(0);
  CHECK_THROWS_AS(induced_subgame(g, only0, Player::P1), NotClosedError);
}

TEST_CASE("game: lasso construction validates adjacency") {
  GameStructure g = load_game(data_path("fig1.game"));
  Lasso l = make_lasso(g, {0}, {1, 0});
  CHECK(l.total_len() == 3);
  CHECK(l.vertex_at(0) == 0);
  CHECK(l.vertex_at(1) == 1);
  CHECK(l.vertex_at(2) == 0);
  CHECK(l.vertex_at(3) == 1);
  CHECK(g.edge(l.edge_at(0)).dst == 1);
  // v1 has no edge to v2.
  CHECK_THROWS_AS(make_lasso(g, {0}, {1, 2}), BadEndpointError);
  CHECK_THROWS_AS(make_lasso(g, {}, {}), TooShortError);
}

TEST_CASE("game: state packer round-trips mixed radices") {
  StatePacker p;
  p.add(3);
  p.add(1);
  p.add(5);
  CHECK(p.size() == 15);
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 5; ++c) {
      int s = p.pack({a, 0, c});
      auto parts = p.unpack(s);
      REQUIRE(parts.size() == 3);
      CHECK(parts[0] == a);
      CHECK(parts[1] == 0);
      CHECK(parts[2] == c);
    }
  }
}
