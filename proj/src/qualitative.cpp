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

#include "hetgames/qualitative.hpp"

#include <deque>
#include <memory>

#include "hetgames/product.hpp"
#include "hetgames/rabin.hpp"

namespace hetgames {

namespace {

/** First out-edge staying inside the domain; falls back to the first edge. */
int lowest_in(const Arena& a, Vertex v) {
  for (int e : a.g->out(v)) {
    if (a.in(a.g->edge(e).dst)) return e;
  }
  return a.g->out(v)[0];
}

/** First out-edge into `target` (must exist inside the domain). */
int lowest_into(const Arena& a, Vertex v, const VertexSet& target) {
  for (int e : a.g->out(v)) {
    Vertex d = a.g->edge(e).dst;
    if (a.in(d) && target.test(d)) return e;
  }
  assert(false && "no edge into the requested set");
  return a.g->out(v)[0];
}

std::vector<int> default_choice(const Arena& a) {
  std::vector<int> c(a.g->num_vertices());
  for (Vertex v = 0; v < a.g->num_vertices(); ++v) c[v] = a.g->out(v)[0];
  return c;
}

// Product constructions need a nonempty domain; an empty one loses trivially.
SolveResult empty_domain_result(const Arena& a) {
  SolveResult r;
  r.regions.w1 = VertexSet(a.g->num_vertices());
  r.regions.w2 = VertexSet(a.g->num_vertices());
  r.s1 = lowest_edge_strategy(*a.g, Player::P1);
  r.s2 = lowest_edge_strategy(*a.g, Player::P2);
  return r;
}

}  // namespace

AttractorResult attractor(const Arena& a, Player p, const VertexSet& target) {
  const GameStructure& g = *a.g;
  const int n = g.num_vertices();
  AttractorResult r;
  r.attractor = VertexSet(n);
  r.rank.assign(n, -1);
  r.witnessEdge.assign(n, -1);

  std::vector<std::vector<int>> inEdges(n);
  std::vector<int> cnt(n, 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    Vertex u = g.edge(e).src;
    Vertex d = g.edge(e).dst;
    if (a.in(u) && a.in(d)) {
      inEdges[d].push_back(e);
      ++cnt[u];
    }
  }

  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (a.in(v) && target.test(v)) {
      r.attractor.set(v);
      r.rank[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (int e : inEdges[v]) {
      Vertex u = g.edge(e).src;
      if (r.rank[u] >= 0) continue;
      if (g.owner(u) == p) {
        r.rank[u] = r.rank[v] + 1;
        r.witnessEdge[u] = e;
        r.attractor.set(u);
        queue.push_back(u);
      } else if (--cnt[u] == 0) {
        r.rank[u] = r.rank[v] + 1;
        r.attractor.set(u);
        queue.push_back(u);
      }
    }
  }
  return r;
}

SolveResult solve_reach(const Arena& a, const VertexSet& U) {
  const GameStructure& g = *a.g;
  AttractorResult ar = attractor(a, Player::P1, U);
  SolveResult res;
  res.regions.w1 = ar.attractor;
  res.regions.w2 = a.domain - ar.attractor;

  std::vector<int> c1 = default_choice(a);
  for (Vertex v : res.regions.w1.elements()) {
    if (g.owner(v) == Player::P1) {
      c1[v] = ar.witnessEdge[v] >= 0 ? ar.witnessEdge[v] : lowest_in(a, v);
    }
  }
  std::vector<int> c2 = default_choice(a);
  for (Vertex v : res.regions.w2.elements()) {
    if (g.owner(v) == Player::P2) c2[v] = lowest_into(a, v, res.regions.w2);
  }
  res.s1 = memoryless_strategy(g, Player::P1, std::move(c1));
  res.s2 = memoryless_strategy(g, Player::P2, std::move(c2));
  return res;
}

SolveResult solve_safe(const Arena& a, const VertexSet& U) {
  const GameStructure& g = *a.g;
  VertexSet unsafe = a.domain - U;
  AttractorResult ar = attractor(a, Player::P2, unsafe);
  SolveResult res;
  res.regions.w2 = ar.attractor;
  res.regions.w1 = a.domain - ar.attractor;

  std::vector<int> c1 = default_choice(a);
  for (Vertex v : res.regions.w1.elements()) {
    if (g.owner(v) == Player::P1) c1[v] = lowest_into(a, v, res.regions.w1);
  }
  std::vector<int> c2 = default_choice(a);
  for (Vertex v : res.regions.w2.elements()) {
    if (g.owner(v) == Player::P2) {
      c2[v] = ar.witnessEdge[v] >= 0 ? ar.witnessEdge[v] : lowest_in(a, v);
    }
  }
  res.s1 = memoryless_strategy(g, Player::P1, std::move(c1));
  res.s2 = memoryless_strategy(g, Player::P2, std::move(c2));
  return res;
}

namespace {

struct BuchiInternal {
  VertexSet winP;
  MooreStrategy sp;    // winner-side (player p) strategy
  MooreStrategy sopp;  // opponent strategy
};

/**
 * Repeated trap removal: strip the opponent attractor of the region from
 * which p cannot reach B, until p can reach B from everywhere that remains.
 */
BuchiInternal buchi_for(const Arena& a, Player p, const VertexSet& B) {
  const GameStructure& g = *a.g;
  Player q = opponent(p);
  VertexSet D = a.domain;

  struct Layer {
    VertexSet tr;       // subgame region with no p-path to B
    VertexSet removed;  // q-attractor of tr inside the layer's domain
    AttractorResult pull;
  };
  std::vector<Layer> layers;

  for (;;) {
    if (D.empty()) break;
    Arena ad(g, D);
    AttractorResult toB = attractor(ad, p, B & D);
    VertexSet tr = D - toB.attractor;
    if (tr.empty()) break;
    AttractorResult pull = attractor(ad, q, tr);
    layers.push_back({tr, pull.attractor, pull});
    D.subtract(pull.attractor);
  }

  BuchiInternal r;
  r.winP = D;

  std::vector<int> cp = default_choice(a);
  if (!D.empty()) {
    Arena ad(g, D);
    AttractorResult toB = attractor(ad, p, B & D);
    for (Vertex v : D.elements()) {
      if (g.owner(v) != p) continue;
      if (toB.rank[v] > 0) cp[v] = toB.witnessEdge[v];
      else cp[v] = lowest_into(ad, v, D);  // on B: restart the pull while staying inside
    }
  }
  r.sp = memoryless_strategy(g, p, std::move(cp));

  std::vector<int> cq = default_choice(a);
  for (const Layer& layer : layers) {
    for (Vertex v : layer.removed.elements()) {
      if (g.owner(v) != q) continue;
      if (layer.tr.test(v)) {
        // tr traps p in its layer domain; q keeps the play inside it.
        cq[v] = lowest_into(Arena(g, layer.tr), v, layer.tr);
      } else {
        cq[v] = layer.pull.witnessEdge[v] >= 0 ? layer.pull.witnessEdge[v] : lowest_in(a, v);
      }
    }
  }
  r.sopp = memoryless_strategy(g, q, std::move(cq));
  return r;
}

}  // namespace

SolveResult solve_buchi(const Arena& a, const VertexSet& U) {
  BuchiInternal b = buchi_for(a, Player::P1, U);
  SolveResult res;
  res.regions.w1 = b.winP;
  res.regions.w2 = a.domain - b.winP;
  res.s1 = std::move(b.sp);
  res.s2 = std::move(b.sopp);
  return res;
}

SolveResult solve_cobuchi(const Arena& a, const VertexSet& U) {
  BuchiInternal b = buchi_for(a, Player::P2, a.domain - U);
  SolveResult res;
  res.regions.w2 = b.winP;
  res.regions.w1 = a.domain - b.winP;
  res.s2 = std::move(b.sp);
  res.s1 = std::move(b.sopp);
  return res;
}

VertexCompProduct build_vertex_comp_product(const Arena& a, long long compCount,
                                            long long zeroComp,
                                            std::function<long long(long long, Vertex)> step,
                                            long long budget) {
  const GameStructure& g = *a.g;
  const int n = g.num_vertices();
  VertexCompProduct P;
  P.compCount = compCount;
  P.zeroComp = zeroComp;
  P.step = step;
  P.baseVertices = n;
  P.fwd.assign(n, -1);
  P.baseFallback.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) P.baseFallback[v] = lowest_in(a, v);

  std::vector<Player> owners;
  std::vector<std::string> names;
  auto intern = [&](Vertex v, long long c) {
    auto it = P.index.find(c * n + v);
    if (it != P.index.end()) return it->second;
    Vertex id = static_cast<Vertex>(P.baseOf.size());
    if (id >= budget) throw ProductTooLargeError("product exceeds the node budget");
    P.index.emplace(c * n + v, id);
    P.baseOf.push_back(v);
    P.compOf.push_back(c);
    owners.push_back(g.owner(v));
    names.push_back(g.name_of(v) + "#" + std::to_string(c));
    return id;
  };

  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (!a.in(v)) continue;
    Vertex id = intern(v, step(zeroComp, v));
    P.fwd[v] = id;
    queue.push_back(id);
  }
  // Frontier may include states interned before their edges are emitted.
  std::vector<bool> expanded;
  std::vector<Edge> edges;
  while (!queue.empty()) {
    Vertex pid = queue.front();
    queue.pop_front();
    if (pid < static_cast<Vertex>(expanded.size()) && expanded[pid]) continue;
    if (pid >= static_cast<Vertex>(expanded.size())) expanded.resize(pid + 1, false);
    if (expanded[pid]) continue;
    expanded[pid] = true;
    Vertex v = P.baseOf[pid];
    long long c = P.compOf[pid];
    for (int e : g.out(v)) {
      Vertex d = g.edge(e).dst;
      if (!a.in(d)) continue;
      long long cd = step(c, d);
      std::size_t before = P.baseOf.size();
      Vertex did = intern(d, cd);
      if (P.baseOf.size() > before) queue.push_back(did);
      edges.push_back({pid, did, g.edge(e).w});
      P.baseEdge.push_back(e);
    }
  }
  P.game = GameStructure::build(std::move(owners), std::move(edges));
  P.game.names = std::move(names);
  return P;
}

MooreStrategy lift_vertex_comp(const VertexCompProduct& prod, const MooreStrategy& inner) {
  auto P = std::make_shared<VertexCompProduct>(prod);
  auto innerS = std::make_shared<MooreStrategy>(inner);
  const long long pmSize = inner.memorySize;
  MooreStrategy s;
  s.owner = inner.owner;
  s.memorySize = prod.compCount * pmSize;
  s.initialState = prod.zeroComp * pmSize + inner.initialState;
  s.update = [P, innerS, pmSize](long long m, Vertex v) {
    long long c = m / pmSize;
    long long pm = m % pmSize;
    long long c2 = P->step(c, v);
    Vertex pid = P->id_of(v, c2);
    long long pm2 = pid >= 0 ? innerS->update(pm, pid) : pm;
    return c2 * pmSize + pm2;
  };
  s.action = [P, innerS, pmSize](long long m, Vertex v) {
    long long c = m / pmSize;
    long long pm = m % pmSize;
    Vertex pid = P->id_of(v, P->step(c, v));
    // Configurations outside the materialized product never occur along
    // consistent plays; fall back to a legal move.
    if (pid < 0) return P->baseFallback[v];
    int pe = innerS->action(pm, pid);
    assert(pe >= 0 && pe < static_cast<int>(P->baseEdge.size()));
    return P->baseEdge[pe];
  };
  return s;
}

VertexSet product_states_where(const VertexCompProduct& prod,
                               const std::function<bool(Vertex, long long)>& pred) {
  VertexSet s(prod.game.num_vertices());
  for (Vertex pid = 0; pid < prod.game.num_vertices(); ++pid) {
    if (pred(prod.baseOf[pid], prod.compOf[pid])) s.set(pid);
  }
  return s;
}

SolveResult solve_gen_reach(const Arena& a, const std::vector<VertexSet>& sets, long long budget) {
  if (a.domain.count() == 0) return empty_domain_result(a);
  const GameStructure& g = *a.g;
  const int k = static_cast<int>(sets.size());
  assert(k < 62);
  auto setsCopy = std::make_shared<std::vector<VertexSet>>(sets);
  auto bits = [setsCopy, k](Vertex v) {
    long long b = 0;
    for (int i = 0; i < k; ++i) {
      if ((*setsCopy)[i].test(v)) b |= (1ll << i);
    }
    return b;
  };
  VertexCompProduct P = build_vertex_comp_product(
      a, 1ll << k, 0, [bits](long long m, Vertex v) { return m | bits(v); }, budget);
  const long long full = (1ll << k) - 1;
  VertexSet target = product_states_where(P, [full](Vertex, long long c) { return c == full; });
  SolveResult inner = solve_reach(Arena(P.game), target);

  SolveResult res;
  res.regions.w1 = VertexSet(g.num_vertices());
  res.regions.w2 = VertexSet(g.num_vertices());
  for (Vertex v : a.domain.elements()) {
    if (inner.regions.w1.test(P.fwd[v])) res.regions.w1.set(v);
    else res.regions.w2.set(v);
  }
  res.s1 = lift_vertex_comp(P, inner.s1);
  res.s2 = lift_vertex_comp(P, inner.s2);
  return res;
}

namespace {

VertexCompProduct build_counter_product(const Arena& a, const std::vector<VertexSet>& sets,
                                        long long budget) {
  const int k = static_cast<int>(sets.size());
  auto setsCopy = std::make_shared<std::vector<VertexSet>>(sets);
  auto step = [setsCopy, k](long long c, Vertex v) {
    if (c == k) c = 0;
    if (c < k && (*setsCopy)[c].test(v)) ++c;
    return c;
  };
  return build_vertex_comp_product(a, k + 1, 0, step, budget);
}

}  // namespace

SolveResult solve_gen_buchi(const Arena& a, const std::vector<VertexSet>& sets) {
  if (a.domain.count() == 0) return empty_domain_result(a);
  const GameStructure& g = *a.g;
  const long long k = static_cast<long long>(sets.size());
  VertexCompProduct P = build_counter_product(a, sets, kDefaultNodeBudget);
  // The counter wraps exactly when every set has been revisited once more.
  VertexSet wrap = product_states_where(P, [k](Vertex, long long c) { return c == k; });
  SolveResult inner = solve_buchi(Arena(P.game), wrap);

  SolveResult res;
  res.regions.w1 = VertexSet(g.num_vertices());
  res.regions.w2 = VertexSet(g.num_vertices());
  for (Vertex v : a.domain.elements()) {
    if (inner.regions.w1.test(P.fwd[v])) res.regions.w1.set(v);
    else res.regions.w2.set(v);
  }
  res.s1 = lift_vertex_comp(P, inner.s1);
  res.s2 = lift_vertex_comp(P, inner.s2);
  return res;
}

SolveResult solve_gen_buchi_cobuchi(const Arena& a, const std::vector<VertexSet>& sets,
                                    const VertexSet& C, long long budget) {
  if (a.domain.count() == 0) return empty_domain_result(a);
  const GameStructure& g = *a.g;
  const long long k = static_cast<long long>(sets.size());
  VertexCompProduct P = build_counter_product(a, sets, budget);
  VertexSet wrap = product_states_where(P, [k](Vertex, long long c) { return c == k; });
  VertexSet inC = product_states_where(P, [&C](Vertex b, long long) { return C.test(b); });
  RabinCondition cond;
  cond.pairs.push_back({inC.complement(), wrap});
  SolveResult inner = solve_rabin(Arena(P.game), cond, Player::P1);

  SolveResult res;
  res.regions.w1 = VertexSet(g.num_vertices());
  res.regions.w2 = VertexSet(g.num_vertices());
  for (Vertex v : a.domain.elements()) {
    if (inner.regions.w1.test(P.fwd[v])) res.regions.w1.set(v);
    else res.regions.w2.set(v);
  }
  res.s1 = lift_vertex_comp(P, inner.s1);
  res.s2 = lift_vertex_comp(P, inner.s2);
  return res;
}

}  // namespace hetgames
