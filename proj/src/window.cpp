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

#include "hetgames/window.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hetgames/product.hpp"
#include "hetgames/reductions.hpp"

namespace hetgames {

Weight oplus(Weight a, Weight b) {
  if (a == kNegInf || b == kNegInf) return kNegInf;
  Weight s = a + b;
  return s >= 0 ? s : kNegInf;
}

WindowClass window_classify(const std::vector<Weight>& w, int lambda) {
  assert(lambda >= 1);
  if (static_cast<int>(w.size()) < lambda) {
    throw TooShortError("need at least " + std::to_string(lambda) + " weights, got " +
                        std::to_string(w.size()));
  }
  Weight total = 0;
  for (int j = 1; j <= lambda; ++j) {
    total += w[j - 1];
    if (total >= 0) return {true, j};
  }
  return {false, -1};
}

DecompositionResult good_decomposition(const std::vector<Weight>& stem,
                                       const std::vector<Weight>& period, int lambda) {
  assert(lambda >= 1);
  assert(!period.empty());
  const long long s = static_cast<long long>(stem.size());
  const long long p = static_cast<long long>(period.size());
  auto seq = [&](long long t) { return t < s ? stem[t] : period[(t - s) % p]; };

  DecompositionResult r;
  std::vector<char> seen(period.size(), 0);
  long long pos = 0;
  while (true) {
    if (pos >= s) {
      long long c = (pos - s) % p;
      if (seen[c]) {
        r.ok = true;
        return r;
      }
      seen[c] = 1;
    }
    r.positions.push_back(pos);
    Weight total = 0;
    long long next = -1;
    for (int j = 1; j <= lambda; ++j) {
      total += seq(pos + j - 1);
      if (total >= 0) {
        next = pos + j;
        break;
      }
    }
    if (next < 0) {
      r.failPosition = pos;
      return r;
    }
    pos = next;
  }
}

namespace {

using Table = std::vector<std::vector<Weight>>;

/** Parallel edges collapse to (min, max) first-dimension weight per pair. */
struct EdgeInfo {
  int n = 0;
  std::unordered_map<long long, std::pair<Weight, Weight>> mm;

  bool lookup(Vertex u, Vertex v, bool wantMin, Weight& out) const {
    auto it = mm.find(static_cast<long long>(u) * n + v);
    if (it == mm.end()) return false;
    out = wantMin ? it->second.first : it->second.second;
    return true;
  }
};

EdgeInfo build_edge_info(const GameStructure& g, const VertexSet& dom, Weight* maxAbs) {
  EdgeInfo info;
  info.n = g.num_vertices();
  Weight big = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (!dom.test(ed.src) || !dom.test(ed.dst)) continue;
    Weight w = ed.w[0];
    big = std::max(big, w < 0 ? -w : w);
    long long key = static_cast<long long>(ed.src) * info.n + ed.dst;
    auto it = info.mm.find(key);
    if (it == info.mm.end()) {
      info.mm.emplace(key, std::make_pair(w, w));
    } else {
      it->second.first = std::min(it->second.first, w);
      it->second.second = std::max(it->second.second, w);
    }
  }
  if (maxAbs) *maxAbs = big;
  return info;
}

Table icw_tables(const Arena& a, const VertexSet& U, int lambda) {
  const GameStructure& g = *a.g;
  Table C(lambda + 1, std::vector<Weight>(g.num_vertices(), kNegInf));
  for (Vertex v : a.domain.elements()) {
    if (U.test(v)) C[0][v] = 0;
  }
  for (int l = 1; l <= lambda; ++l) {
    for (Vertex v : a.domain.elements()) {
      bool first = true;
      Weight best = kNegInf;
      for (int e : g.out(v)) {
        Vertex d = g.edge(e).dst;
        if (!a.domain.test(d)) continue;
        Weight val = oplus(g.edge(e).w[0], std::max(C[0][d], C[l - 1][d]));
        if (first) {
          best = val;
          first = false;
        } else {
          best = g.owner(v) == Player::P1 ? std::max(best, val) : std::min(best, val);
        }
      }
      C[l][v] = best;
      assert(l < 2 || best >= C[l - 1][v]);
    }
  }
  return C;
}

/** Edge realizing the chain value at v with l steps left; optimizes for owner(v). */
int icw_choice(const GameStructure& g, const VertexSet& dom, const Table& C, int l,
               Vertex v) {
  assert(l >= 1 && l < static_cast<int>(C.size()));
  int best = -1;
  Weight bestVal = kNegInf;
  for (int e : g.out(v)) {
    Vertex d = g.edge(e).dst;
    if (!dom.test(d)) continue;
    Weight val = oplus(g.edge(e).w[0], std::max(C[0][d], C[l - 1][d]));
    bool better = best < 0 || (g.owner(v) == Player::P1 ? val > bestVal : val < bestVal);
    if (better) {
      best = e;
      bestVal = val;
    }
  }
  return best;
}

MooreStrategy keep_alive(MooreStrategy s, std::shared_ptr<const void> holder) {
  auto u = s.update;
  auto act = s.action;
  s.update = [u, holder](long long m, Vertex v) { return u(m, v); };
  s.action = [act, holder](long long m, Vertex v) { return act(m, v); };
  return s;
}

// Product constructions need a nonempty domain; an empty one loses trivially.
SolveResult lose_all(const Arena& a) {
  SolveResult r;
  r.regions.w1 = VertexSet(a.g->num_vertices());
  r.regions.w2 = VertexSet(a.g->num_vertices());
  r.s1 = lowest_edge_strategy(*a.g, Player::P1);
  r.s2 = lowest_edge_strategy(*a.g, Player::P2);
  return r;
}

template <typename M>
MooreStrategy wrap_machine(M mach, Player owner, long long size, long long init) {
  auto m = std::make_shared<const M>(std::move(mach));
  MooreStrategy s;
  s.owner = owner;
  s.memorySize = std::max<long long>(size, 1);
  s.initialState = init;
  s.update = [m](long long mm, Vertex v) { return m->store(m->settle(mm, v)); };
  s.action = [m](long long mm, Vertex v) { return m->act(m->settle(mm, v), v); };
  return s;
}

MooreStrategy icw_machine(const Arena& a, std::shared_ptr<const Table> C, int lambda,
                          Player who) {
  struct Ctx {
    const GameStructure* g;
    VertexSet dom;
    std::shared_ptr<const Table> C;
  };
  auto ctx = std::make_shared<Ctx>(Ctx{a.g, a.domain, std::move(C)});
  MooreStrategy s;
  s.owner = who;
  s.memorySize = lambda + 1;
  s.initialState = lambda;
  s.update = [](long long m, Vertex) { return m > 0 ? m - 1 : 0; };
  s.action = [ctx](long long m, Vertex v) {
    if (m >= 1) {
      int e = icw_choice(*ctx->g, ctx->dom, *ctx->C, static_cast<int>(m), v);
      if (e >= 0) return e;
    }
    return lowest_staying(*ctx->g, ctx->dom, v);
  };
  return s;
}

// ---------------------------------------------------------------------------
// Segment-decomposition core.

struct GdData {
  const GameStructure* g = nullptr;
  std::shared_ptr<const void> keepAlive;
  VertexSet domain;
  int lambda = 1;
  Weight span = 0;  // lambda * max |w| over the domain
  std::vector<VertexSet> iterates;
  VertexSet win;
  std::vector<int> layerOf;  // min k with v in iterates[k]; -1 outside
  std::vector<std::shared_ptr<const Table>> tables;  // per layer k >= 1
  std::shared_ptr<const Table> finalTable;           // targets the fixpoint
  EdgeInfo edges;
};

std::shared_ptr<const GdData> gd_solve(const Arena& a, const VertexSet& U, int lambda,
                                       std::shared_ptr<const void> keepAlive = nullptr) {
  auto d = std::make_shared<GdData>();
  d->g = a.g;
  d->keepAlive = std::move(keepAlive);
  d->domain = a.domain;
  d->lambda = lambda;
  Weight maxAbs = 0;
  d->edges = build_edge_info(*a.g, a.domain, &maxAbs);
  d->span = static_cast<Weight>(lambda) * maxAbs;

  VertexSet X = U & a.domain;
  d->iterates.push_back(X);
  d->tables.push_back(nullptr);
  while (true) {
    auto C = std::make_shared<const Table>(icw_tables(a, X, lambda));
    VertexSet X2 = X;
    for (Vertex v : a.domain.elements()) {
      if ((*C)[lambda][v] >= 0) X2.set(v);
    }
    if (X2 == X) {
      d->finalTable = C;
      break;
    }
    d->tables.push_back(C);
    d->iterates.push_back(X2);
    X = X2;
  }
  d->win = X;
  d->layerOf.assign(a.g->num_vertices(), -1);
  for (std::size_t k = 0; k < d->iterates.size(); ++k) {
    for (Vertex v : d->iterates[k].elements()) {
      if (d->layerOf[v] < 0) d->layerOf[v] = static_cast<int>(k);
    }
  }
  return d;
}

/**
 * Phase machine toward decreasing layers.  A phase at layer k plays the chain
 * recursion toward layer k-1; the monitored worst suffix total detects the
 * closure that lets the phase end at a lower layer within lambda steps.
 */
struct GdP1 {
  std::shared_ptr<const GdData> d;

  struct S {
    bool done = false;
    bool reached = false;  // done by arriving in the layer-0 target
    int k = 1;
    int l = 1;  // settled steps left, in [1, lambda]
    Weight r = 0;
    bool fresh = true;
    Vertex last = -1;
  };

  long long rSlots() const { return 2 * d->span + 2; }
  int layers() const { return static_cast<int>(d->iterates.size()) - 1; }
  long long runStates() const {
    return static_cast<long long>(layers()) * d->lambda * rSlots() * d->g->num_vertices();
  }
  long long size() const { return 2 + runStates(); }
  long long bot() const { return 0; }

  S start_at(Vertex v) const {
    S s;
    int k = d->layerOf[v];
    if (k <= 0) {
      s.done = true;
      s.reached = k == 0;
      return s;
    }
    s.k = k;
    s.l = d->lambda;
    s.fresh = true;
    s.last = v;
    return s;
  }

  S settle(long long m, Vertex v) const {
    if (m == 1) {
      S s;
      s.done = true;
      return s;
    }
    if (m == 0) return start_at(v);
    long long run = m - 2;
    Vertex last = static_cast<Vertex>(run % d->g->num_vertices());
    run /= d->g->num_vertices();
    long long ri = run % rSlots();
    run /= rSlots();
    int l = static_cast<int>(run % d->lambda);
    int k = static_cast<int>(run / d->lambda) + 1;

    Weight w;
    if (!d->edges.lookup(last, v, /*wantMin=*/true, w)) return start_at(v);
    Weight r2 = ri == rSlots() - 1 ? w : std::min(ri - d->span + w, w);
    r2 = std::clamp(r2, -d->span, d->span);
    int kv = d->layerOf[v];
    if (r2 >= 0 && kv >= 0 && kv < k) return start_at(v);
    if (l == 0) return start_at(v);
    S s;
    s.k = k;
    s.l = l;
    s.r = r2;
    s.fresh = false;
    s.last = v;
    return s;
  }

  int act(const S& s, Vertex v) const {
    if (!s.done) {
      int e = icw_choice(*d->g, d->domain, *d->tables[s.k], s.l, v);
      if (e >= 0) return e;
    }
    return lowest_staying(*d->g, d->domain, v);
  }

  long long store(const S& s) const {
    if (s.done) return 1;
    long long ri = s.fresh ? rSlots() - 1 : s.r + d->span;
    long long run = (static_cast<long long>(s.k - 1) * d->lambda + (s.l - 1)) * rSlots() + ri;
    return 2 + run * d->g->num_vertices() + s.last;
  }
};

/**
 * Counter machine against decompositions: restart at every first closure,
 * which by construction lands outside the fixpoint; a window that stays open
 * lambda steps wins outright.
 */
struct GdP2 {
  std::shared_ptr<const GdData> d;

  struct S {
    bool done = false;
    bool restarted = false;  // this settle began a new phase at a closure
    int l = 1;
    Weight s = 0;
    bool fresh = true;
    Vertex last = -1;
  };

  long long sSlots() const { return d->span + 1; }
  long long runStates() const {
    return static_cast<long long>(d->lambda) * sSlots() * d->g->num_vertices();
  }
  long long size() const { return 2 + runStates(); }
  long long bot() const { return 0; }

  S start_at(Vertex v, bool viaClosure) const {
    S s;
    s.l = d->lambda;
    s.fresh = true;
    s.last = v;
    s.restarted = viaClosure;
    return s;
  }

  S settle(long long m, Vertex v) const {
    if (m == 1) {
      S s;
      s.done = true;
      return s;
    }
    if (m == 0) return start_at(v, false);
    long long run = m - 2;
    Vertex last = static_cast<Vertex>(run % d->g->num_vertices());
    run /= d->g->num_vertices();
    long long si = run % sSlots();
    int l = static_cast<int>(run / sSlots());

    Weight w;
    if (!d->edges.lookup(last, v, /*wantMin=*/false, w)) return start_at(v, false);
    Weight s2 = si == sSlots() - 1 ? w : -(si + 1) + w;
    if (s2 >= 0) return start_at(v, true);
    if (l == 0) {
      S s;
      s.done = true;
      return s;
    }
    s2 = std::max(s2, -d->span);
    S s;
    s.l = l;
    s.s = s2;
    s.fresh = false;
    s.last = v;
    return s;
  }

  int act(const S& s, Vertex v) const {
    if (!s.done) {
      int e = icw_choice(*d->g, d->domain, *d->finalTable, s.l, v);
      if (e >= 0) return e;
    }
    return lowest_staying(*d->g, d->domain, v);
  }

  long long store(const S& s) const {
    if (s.done) return 1;
    long long si = s.fresh ? sSlots() - 1 : -(s.s) - 1;
    long long run = (static_cast<long long>(s.l - 1) * sSlots() + si);
    return 2 + run * d->g->num_vertices() + s.last;
  }
};

// ---------------------------------------------------------------------------
// Safety-or-descend core.

struct ObjFData {
  const GameStructure* g = nullptr;
  std::shared_ptr<const void> keepAlive;
  VertexSet domain, U, X, marked;
  int lambda = 1;
  Weight span = 0;
  std::shared_ptr<const GdData> gd;  // descend target X
  VertexSet wgd;
  std::shared_ptr<VertexCompProduct> prod;  // left-U flag
  std::vector<VertexSet> zTrace;
  VertexSet win;
  std::vector<int> kOf;  // per vertex outside the fixpoint: first dropped step
  std::vector<std::shared_ptr<const Table>> endTables;  // [j] computed from zTrace[j]
  std::shared_ptr<const Table> finalTable;
  EdgeInfo edges;
  int J = 1;

  Vertex pid(Vertex v, int b) const { return prod->id_of(v, b); }
};

std::shared_ptr<const ObjFData> obj_f_solve(const Arena& a, const VertexSet& uIn,
                                            const VertexSet& xIn, int lambda,
                                            long long budget,
                                            std::shared_ptr<const void> keepAlive = nullptr) {
  auto d = std::make_shared<ObjFData>();
  d->g = a.g;
  d->keepAlive = std::move(keepAlive);
  d->domain = a.domain;
  d->U = uIn & a.domain;
  d->X = xIn & a.domain;
  d->marked = a.domain - d->U;
  d->lambda = lambda;
  Weight maxAbs = 0;
  d->edges = build_edge_info(*a.g, a.domain, &maxAbs);
  d->span = static_cast<Weight>(lambda) * maxAbs;

  d->gd = gd_solve(a, d->X, lambda);
  d->wgd = d->gd->win;

  VertexSet marked = d->marked;
  d->prod = std::make_shared<VertexCompProduct>(build_vertex_comp_product(
      a, 2, 0,
      [marked](long long c, Vertex v) { return c | (marked.test(v) ? 1 : 0); }, budget));
  const GameStructure& pg = d->prod->game;
  Arena pa(pg);

  VertexSet Z = a.domain;
  d->zTrace.push_back(Z);
  while (true) {
    VertexSet uprime(pg.num_vertices());
    for (Vertex s = 0; s < pg.num_vertices(); ++s) {
      Vertex b = d->prod->baseOf[s];
      if (d->wgd.test(b) || (d->prod->compOf[s] == 0 && Z.test(b))) uprime.set(s);
    }
    auto C = std::make_shared<const Table>(icw_tables(pa, uprime, lambda));
    d->endTables.push_back(C);
    VertexSet Z2 = d->X;
    for (Vertex v : a.domain.elements()) {
      Vertex s = d->prod->fwd[v];
      if (s >= 0 && (*C)[lambda][s] >= 0) Z2.set(v);
    }
    assert(Z2.subset_of(Z));
    if (Z2 == Z) {
      d->finalTable = C;
      break;
    }
    d->zTrace.push_back(Z2);
    Z = Z2;
  }
  d->win = Z;
  d->J = std::max<int>(1, static_cast<int>(d->zTrace.size()) - 1);
  d->kOf.assign(a.g->num_vertices(), -1);
  for (Vertex v : a.domain.elements()) {
    for (std::size_t j = 1; j < d->zTrace.size(); ++j) {
      if (!d->zTrace[j].test(v)) {
        d->kOf[v] = static_cast<int>(j);
        break;
      }
    }
  }
  return d;
}

/**
 * Plays segment phases over the flag product; a closure either enters the
 * descend region (hand over to the layer machine) or restarts a phase still
 * inside U and the fixpoint.
 */
struct ObjFP1 {
  std::shared_ptr<const ObjFData> d;
  GdP1 gd;

  explicit ObjFP1(std::shared_ptr<const ObjFData> data) : d(std::move(data)) {
    gd.d = d->gd;
  }

  enum Mode { kEnd = 0, kGd = 1, kDone = 2 };
  struct S {
    int mode = kDone;
    bool restarted = false;    // a closure started a fresh phase at this vertex
    bool viaGdTarget = false;  // done because the descend target was reached
    int l = 1;
    int b = 0;
    Weight r = 0;
    bool fresh = true;
    Vertex last = -1;
    GdP1::S gs;
  };

  long long rSlots() const { return 2 * d->span + 2; }
  long long endStates() const {
    return static_cast<long long>(d->lambda) * 2 * rSlots() * d->g->num_vertices();
  }
  long long size() const { return 2 + gd.size() + endStates(); }
  long long bot() const { return 0; }

  S start_at(Vertex v) const {
    S s;
    if (d->wgd.test(v)) {
      s.gs = gd.settle(gd.bot(), v);
      if (s.gs.done) {
        s.mode = kDone;
        s.viaGdTarget = s.gs.reached;
      } else {
        s.mode = kGd;
      }
      return s;
    }
    if (d->win.test(v)) {
      s.mode = kEnd;
      s.l = d->lambda;
      s.b = d->marked.test(v) ? 1 : 0;
      s.fresh = true;
      s.last = v;
      return s;
    }
    s.mode = kDone;
    return s;
  }

  S settle(long long m, Vertex v) const {
    if (m == 0) return start_at(v);
    if (m == 1) return S{};
    if (m < 2 + gd.size()) {
      S s;
      s.gs = gd.settle(m - 2, v);
      if (s.gs.done) {
        s.mode = kDone;
        s.viaGdTarget = s.gs.reached;
      } else {
        s.mode = kGd;
      }
      return s;
    }
    long long run = m - 2 - gd.size();
    Vertex last = static_cast<Vertex>(run % d->g->num_vertices());
    run /= d->g->num_vertices();
    long long ri = run % rSlots();
    run /= rSlots();
    int b = static_cast<int>(run % 2);
    int l = static_cast<int>(run / 2);

    Weight w;
    if (!d->edges.lookup(last, v, /*wantMin=*/true, w)) return start_at(v);
    Weight r2 = ri == rSlots() - 1 ? w : std::min(ri - d->span + w, w);
    r2 = std::clamp(r2, -d->span, d->span);
    int b2 = b | (d->marked.test(v) ? 1 : 0);
    if (r2 >= 0) {
      if (d->wgd.test(v)) {
        S s;
        s.restarted = true;
        s.gs = gd.settle(gd.bot(), v);
        if (s.gs.done) {
          s.mode = kDone;
          s.viaGdTarget = s.gs.reached;
        } else {
          s.mode = kGd;
        }
        return s;
      }
      if (b2 == 0 && d->win.test(v)) {
        S s = start_at(v);
        s.restarted = true;
        return s;
      }
    }
    if (l == 0) return start_at(v);
    S s;
    s.mode = kEnd;
    s.l = l;
    s.b = b2;
    s.r = r2;
    s.fresh = false;
    s.last = v;
    return s;
  }

  int act(const S& s, Vertex v) const {
    if (s.mode == kGd) return gd.act(s.gs, v);
    if (s.mode == kEnd) {
      Vertex pid = d->pid(v, s.b);
      if (pid >= 0) {
        int pe = icw_choice(d->prod->game, VertexSet::all(d->prod->game.num_vertices()),
                            *d->finalTable, s.l, pid);
        if (pe >= 0) return d->prod->baseEdge[pe];
      }
    }
    return lowest_staying(*d->g, d->domain, v);
  }

  long long store(const S& s) const {
    if (s.mode == kDone) return 1;
    if (s.mode == kGd) return 2 + gd.store(s.gs);
    long long ri = s.fresh ? rSlots() - 1 : s.r + d->span;
    long long run = ((static_cast<long long>(s.l - 1) * 2 + s.b) * rSlots() + ri);
    return 2 + gd.size() + run * d->g->num_vertices() + s.last;
  }
};

/**
 * Counter phases keyed by the step at which a vertex fell out of the inner
 * fixpoint.  Closures still inside U descend a level; closures that left U
 * either hand over to the decomposition counter (stand-alone mode) or start
 * a fresh phase (layered mode); a full open window ends the argument.
 */
struct ObjFP2 {
  std::shared_ptr<const ObjFData> d;
  GdP2 gd;
  bool gdOnUnsafeExit = true;

  ObjFP2(std::shared_ptr<const ObjFData> data, bool gdExit)
      : d(std::move(data)), gdOnUnsafeExit(gdExit) {
    gd.d = d->gd;
  }

  enum Mode { kEnd = 0, kGd = 1, kDone = 2 };
  struct S {
    int mode = kDone;
    int k = 1;
    int l = 1;
    Weight s = 0;
    bool fresh = true;
    int b = 0;
    Vertex last = -1;
    GdP2::S gs;
  };

  long long sSlots() const { return d->span + 1; }
  long long endStates() const {
    return static_cast<long long>(d->J) * d->lambda * 2 * sSlots() * d->g->num_vertices();
  }
  long long size() const { return 2 + gd.size() + endStates(); }
  long long bot() const { return 0; }

  S start_at(Vertex v) const {
    S s;
    int k = d->kOf[v];
    if (k < 1) return s;  // inside the fixpoint: nothing to defend
    s.mode = kEnd;
    s.k = k;
    s.l = d->lambda;
    s.fresh = true;
    s.b = d->marked.test(v) ? 1 : 0;
    s.last = v;
    return s;
  }

  S settle(long long m, Vertex v) const {
    if (m == 0) return start_at(v);
    if (m == 1) return S{};
    if (m < 2 + gd.size()) {
      S s;
      s.mode = kGd;
      s.gs = gd.settle(m - 2, v);
      return s;
    }
    long long run = m - 2 - gd.size();
    Vertex last = static_cast<Vertex>(run % d->g->num_vertices());
    run /= d->g->num_vertices();
    long long si = run % sSlots();
    run /= sSlots();
    int b = static_cast<int>(run % 2);
    run /= 2;
    int l = static_cast<int>(run % d->lambda);
    int k = static_cast<int>(run / d->lambda) + 1;

    Weight w;
    if (!d->edges.lookup(last, v, /*wantMin=*/false, w)) return start_at(v);
    Weight s2 = si == sSlots() - 1 ? w : -(si + 1) + w;
    int b2 = b | (d->marked.test(v) ? 1 : 0);
    if (s2 >= 0) {
      if (b2 == 1 && gdOnUnsafeExit) {
        S s;
        s.mode = kGd;
        s.gs = gd.settle(gd.bot(), v);
        return s;
      }
      return start_at(v);
    }
    if (l == 0) return S{};  // open window: argument complete
    S s;
    s.mode = kEnd;
    s.k = k;
    s.l = l;
    s.s = std::max(s2, -d->span);
    s.fresh = false;
    s.b = b2;
    s.last = v;
    return s;
  }

  int act(const S& s, Vertex v) const {
    if (s.mode == kGd) return gd.act(s.gs, v);
    if (s.mode == kEnd) {
      Vertex pid = d->pid(v, s.b);
      if (pid >= 0) {
        int pe = icw_choice(d->prod->game, VertexSet::all(d->prod->game.num_vertices()),
                            *d->endTables[s.k - 1], s.l, pid);
        if (pe >= 0) return d->prod->baseEdge[pe];
      }
    }
    return lowest_staying(*d->g, d->domain, v);
  }

  long long store(const S& s) const {
    if (s.mode == kDone) return 1;
    if (s.mode == kGd) return 2 + gd.store(s.gs);
    long long si = s.fresh ? sSlots() - 1 : -(s.s) - 1;
    long long run =
        (((static_cast<long long>(s.k - 1) * d->lambda + (s.l - 1)) * 2 + s.b) * sSlots() +
         si);
    return 2 + gd.size() + run * d->g->num_vertices() + s.last;
  }
};

}  // namespace

IcwResult icw_end(const Arena& a, const VertexSet& U, int lambda,
                  const SolveOptions& opts) {
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  IcwResult r;
  auto C = std::make_shared<const Table>(icw_tables(a, U & a.domain, lambda));
  r.values = *C;
  r.win = VertexSet(a.g->num_vertices());
  for (Vertex v : a.domain.elements()) {
    if ((*C)[lambda][v] >= 0) r.win.set(v);
  }
  if (opts.strategies) {
    r.s1 = icw_machine(a, C, lambda, Player::P1);
    r.s2 = icw_machine(a, C, lambda, Player::P2);
  }
  return r;
}

GdResult gd_end(const Arena& a, const VertexSet& U, int lambda, const SolveOptions& opts) {
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  auto d = gd_solve(a, U, lambda);
  GdResult r;
  r.win = d->win;
  r.iterates = d->iterates;
  if (opts.strategies) {
    GdP1 p1{d};
    r.s1 = wrap_machine(p1, Player::P1, p1.size(), p1.bot());
    GdP2 p2{d};
    r.s2 = wrap_machine(p2, Player::P2, p2.size(), p2.bot());
  }
  return r;
}

EndResult end_lambda(const Arena& a, const VertexSet& U, const VertexSet& X,
                     const VertexSet& Z, int lambda, const SolveOptions& opts) {
  if (a.domain.count() == 0) {
    EndResult r;
    r.win = VertexSet(a.g->num_vertices());
    r.s1 = lowest_edge_strategy(*a.g, Player::P1);
    r.s2 = lowest_edge_strategy(*a.g, Player::P2);
    return r;
  }
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  auto gd = gd_solve(a, X & a.domain, lambda);
  VertexSet marked = a.domain - (U & a.domain);
  auto P = std::make_shared<VertexCompProduct>(build_vertex_comp_product(
      a, 2, 0,
      [marked](long long c, Vertex v) { return c | (marked.test(v) ? 1 : 0); },
      opts.budget));
  const GameStructure& pg = P->game;
  VertexSet uprime(pg.num_vertices());
  for (Vertex s = 0; s < pg.num_vertices(); ++s) {
    Vertex b = P->baseOf[s];
    if (gd->win.test(b) || (P->compOf[s] == 0 && Z.test(b))) uprime.set(s);
  }
  IcwResult inner = icw_end(Arena(pg), uprime, lambda, opts);
  EndResult r;
  r.win = VertexSet(a.g->num_vertices());
  for (Vertex v : a.domain.elements()) {
    Vertex s = P->fwd[v];
    if (s >= 0 && inner.win.test(s)) r.win.set(v);
  }
  if (opts.strategies) {
    r.s1 = keep_alive(lift_vertex_comp(*P, inner.s1), P);
    r.s2 = keep_alive(lift_vertex_comp(*P, inner.s2), P);
  }
  return r;
}

ObjFResult obj_f(const Arena& a, const VertexSet& U, const VertexSet& X, int lambda,
                 const SolveOptions& opts) {
  if (a.domain.count() == 0) {
    ObjFResult r;
    r.win = VertexSet(a.g->num_vertices());
    r.zTrace = {r.win};
    r.s1 = lowest_edge_strategy(*a.g, Player::P1);
    r.s2 = lowest_edge_strategy(*a.g, Player::P2);
    return r;
  }
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  auto d = obj_f_solve(a, U, X, lambda, opts.budget);
  ObjFResult r;
  r.win = d->win;
  r.zTrace = d->zTrace;
  if (opts.strategies) {
    ObjFP1 p1(d);
    r.s1 = wrap_machine(p1, Player::P1, p1.size(), p1.bot());
    ObjFP2 p2(d, /*gdExit=*/true);
    r.s2 = wrap_machine(p2, Player::P2, p2.size(), p2.bot());
  }
  return r;
}

SolveResult solve_wmp_single(const Arena& a, int lambda, const SolveOptions& opts) {
  if (a.domain.count() == 0) return lose_all(a);
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  auto d = obj_f_solve(a, a.domain, VertexSet(a.g->num_vertices()), lambda, opts.budget);
  SolveResult r;
  r.regions.w1 = d->win;
  r.regions.w2 = a.domain - d->win;
  if (opts.strategies) {
    ObjFP1 p1(d);
    r.s1 = wrap_machine(p1, Player::P1, p1.size(), p1.bot());
    ObjFP2 p2(d, /*gdExit=*/true);
    r.s2 = wrap_machine(p2, Player::P2, p2.size(), p2.bot());
  }
  return r;
}

SolveResult wmp_safe(const Arena& a, const VertexSet& U, int lambda,
                     const SolveOptions& opts) {
  SolveResult safe = solve_safe(a, U & a.domain);
  Arena sub(*a.g, safe.regions.w1);
  SolveResult inner = solve_wmp_single(sub, lambda, opts);
  SolveResult r;
  r.regions.w1 = inner.regions.w1;
  r.regions.w2 = a.domain - r.regions.w1;
  if (opts.strategies) {
    r.s1 = inner.s1;
    std::vector<int> positional(a.g->num_vertices(), -1);
    for (Vertex v : (a.domain - safe.regions.w1).elements()) {
      positional[v] = safe.s2.action(0, v);
    }
    std::vector<int> fallback(a.g->num_vertices(), 0);
    for (Vertex v = 0; v < a.g->num_vertices(); ++v) {
      fallback[v] = lowest_staying(*a.g, a.domain, v);
    }
    CompositePart part{safe.regions.w1 - inner.regions.w1, inner.s2, std::move(positional)};
    r.s2 = build_switching_machine(*a.g, Player::P2, {std::move(part)},
                                   [](int, Vertex) { return 0; }, std::move(fallback));
  }
  return r;
}

namespace {

/** Product, window data and descent data behind the visit-once solver. */
struct ReachData {
  std::shared_ptr<VertexCompProduct> P;
  std::shared_ptr<const ObjFData> single;  // window core over the product
  std::shared_ptr<const GdData> gd;        // descent toward the visited layer
  VertexSet win;                           // base-level
};

ReachData build_reach_data(const Arena& a, const VertexSet& U, int lambda,
                           long long budget) {
  ReachData rd;
  VertexSet target = U & a.domain;
  rd.P = std::make_shared<VertexCompProduct>(build_vertex_comp_product(
      a, 2, 0,
      [target](long long c, Vertex v) { return c | (target.test(v) ? 1 : 0); }, budget));
  const GameStructure& pg = rd.P->game;
  Arena pa(pg);
  rd.single = obj_f_solve(pa, pa.domain, VertexSet(pg.num_vertices()), lambda, budget, rd.P);
  VertexSet xprime(pg.num_vertices());
  for (Vertex s = 0; s < pg.num_vertices(); ++s) {
    if (rd.P->compOf[s] == 1 && rd.single->win.test(s)) xprime.set(s);
  }
  rd.gd = gd_solve(pa, xprime, lambda, rd.P);
  rd.win = VertexSet(a.g->num_vertices());
  for (Vertex v : a.domain.elements()) {
    Vertex s = rd.P->fwd[v];
    if (s >= 0 && rd.gd->win.test(s)) rd.win.set(v);
  }
  return rd;
}

/** Descend to the visited layer, then keep windows closing forever. */
struct ReachP1 {
  GdP1 r;
  ObjFP1 tail;

  ReachP1(const ReachData& rd) : tail(rd.single) { r.d = rd.gd; }

  struct S {
    bool tailMode = false;
    GdP1::S rs;
    ObjFP1::S ts;
  };

  long long size() const { return r.size() + tail.size(); }
  long long bot() const { return 0; }

  S settle(long long m, Vertex pv) const {
    if (m < r.size()) {
      S s;
      s.rs = r.settle(m, pv);
      if (!s.rs.done) return s;
      s.tailMode = true;
      s.ts = tail.settle(tail.bot(), pv);
      return s;
    }
    S s;
    s.tailMode = true;
    s.ts = tail.settle(m - r.size(), pv);
    return s;
  }

  int act(const S& s, Vertex pv) const {
    return s.tailMode ? tail.act(s.ts, pv) : r.act(s.rs, pv);
  }

  long long store(const S& s) const {
    return s.tailMode ? r.size() + tail.store(s.ts) : r.store(s.rs);
  }
};

/** Counter phases; once a closure happens with the visit flag raised, the
 * play sits outside the window winning region and the window counter takes
 * over for good. */
struct ReachP2 {
  std::shared_ptr<VertexCompProduct> P;
  GdP2 r;
  ObjFP2 tail;

  ReachP2(const ReachData& rd) : P(rd.P), tail(rd.single, /*gdExit=*/true) { r.d = rd.gd; }

  struct S {
    bool tailMode = false;
    GdP2::S rs;
    ObjFP2::S ts;
  };

  long long size() const { return r.size() + tail.size(); }
  long long bot() const { return 0; }

  S settle(long long m, Vertex pv) const {
    if (m < r.size()) {
      S s;
      s.rs = r.settle(m, pv);
      if (s.rs.restarted && P->compOf[pv] == 1) {
        s.tailMode = true;
        s.ts = tail.settle(tail.bot(), pv);
      }
      return s;
    }
    S s;
    s.tailMode = true;
    s.ts = tail.settle(m - r.size(), pv);
    return s;
  }

  int act(const S& s, Vertex pv) const {
    return s.tailMode ? tail.act(s.ts, pv) : r.act(s.rs, pv);
  }

  long long store(const S& s) const {
    return s.tailMode ? r.size() + tail.store(s.ts) : r.store(s.rs);
  }
};

}  // namespace

SolveResult wmp_reach(const Arena& a, const VertexSet& U, int lambda,
                      const SolveOptions& opts) {
  if (a.domain.count() == 0) return lose_all(a);
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  ReachData rd = build_reach_data(a, U, lambda, opts.budget);
  SolveResult r;
  r.regions.w1 = rd.win;
  r.regions.w2 = a.domain - rd.win;
  if (opts.strategies) {
    ReachP1 p1(rd);
    r.s1 = keep_alive(
        lift_vertex_comp(*rd.P, wrap_machine(p1, Player::P1, p1.size(), p1.bot())), rd.P);
    ReachP2 p2(rd);
    r.s2 = keep_alive(
        lift_vertex_comp(*rd.P, wrap_machine(p2, Player::P2, p2.size(), p2.bot())), rd.P);
  }
  return r;
}

SolveResult wmp_gen_reach(const Arena& a, const std::vector<VertexSet>& targets,
                          int lambda, const SolveOptions& opts) {
  if (a.domain.count() == 0) return lose_all(a);
  assert(!targets.empty());
  const int k = static_cast<int>(targets.size());
  assert(k < 20);
  std::vector<long long> bits(a.g->num_vertices(), 0);
  for (int i = 0; i < k; ++i) {
    for (Vertex v : targets[i].elements()) bits[v] |= 1ll << i;
  }
  const long long full = (1ll << k) - 1;
  auto P = std::make_shared<VertexCompProduct>(build_vertex_comp_product(
      a, 1ll << k, 0, [bits](long long c, Vertex v) { return c | bits[v]; },
      opts.budget));
  VertexSet done(P->game.num_vertices());
  for (Vertex s = 0; s < P->game.num_vertices(); ++s) {
    if (P->compOf[s] == full) done.set(s);
  }
  SolveResult inner = wmp_reach(Arena(P->game), done, lambda, opts);
  SolveResult r;
  r.regions.w1 = VertexSet(a.g->num_vertices());
  for (Vertex v : a.domain.elements()) {
    Vertex s = P->fwd[v];
    if (s >= 0 && inner.regions.w1.test(s)) r.regions.w1.set(v);
  }
  r.regions.w2 = a.domain - r.regions.w1;
  if (opts.strategies) {
    r.s1 = keep_alive(lift_vertex_comp(*P, inner.s1), P);
    r.s2 = keep_alive(lift_vertex_comp(*P, inner.s2), P);
  }
  return r;
}

namespace {

/**
 * Repeats visit phases: descend to the visit layer with a phase-local flag,
 * take one closed stepping segment, then restart with a fresh flag so each
 * round witnesses a new visit.
 */
struct BuchiP1 {
  std::shared_ptr<VertexCompProduct> P;
  VertexSet uset;
  const GameStructure* bg = nullptr;
  VertexSet bdom;
  GdP1 r;
  ObjFP1 step;

  BuchiP1(const Arena& base, const ReachData& rd, VertexSet u)
      : P(rd.P), uset(std::move(u)), bg(base.g), bdom(base.domain), step(rd.single) {
    r.d = rd.gd;
  }

  struct S {
    int b = 0;
    bool stepMode = false;
    GdP1::S rs;
    ObjFP1::S ss;
  };

  long long half() const { return r.size() + step.size(); }
  long long size() const { return 2 * half(); }
  long long bot() const { return r.bot(); }  // b = 0, descend mode

  S reinit(Vertex v) const {
    S s;
    s.b = uset.test(v) ? 1 : 0;
    Vertex pid = P->id_of(v, s.b);
    if (pid < 0) {
      s.stepMode = true;  // degenerate; acts through the fallback
      return s;
    }
    s.rs = r.settle(r.bot(), pid);
    if (s.rs.done) {
      s.stepMode = true;
      s.ss = step.settle(step.bot(), pid);
    }
    return s;
  }

  S settle(long long m, Vertex v) const {
    int b = static_cast<int>(m / half());
    long long sub = m % half();
    int b2 = b | (uset.test(v) ? 1 : 0);
    Vertex pid = P->id_of(v, b2);
    if (pid < 0) return reinit(v);
    if (sub < r.size()) {
      S s;
      s.b = b2;
      s.rs = r.settle(sub, pid);
      if (s.rs.done) {
        s.stepMode = true;
        s.ss = step.settle(step.bot(), pid);
      }
      return s;
    }
    S s;
    s.b = b2;
    s.stepMode = true;
    s.ss = step.settle(sub - r.size(), pid);
    if (s.ss.restarted) return reinit(v);
    return s;
  }

  int act(const S& s, Vertex v) const {
    Vertex pid = P->id_of(v, s.b);
    if (pid >= 0) {
      int pe = s.stepMode ? step.act(s.ss, pid) : r.act(s.rs, pid);
      if (pe >= 0 && pe < static_cast<int>(P->baseEdge.size()) &&
          P->game.edge(pe).src == pid) {
        return P->baseEdge[pe];
      }
    }
    return lowest_staying(*bg, bdom, v);
  }

  long long store(const S& s) const {
    long long sub = s.stepMode ? r.size() + step.store(s.ss) : r.store(s.rs);
    return static_cast<long long>(s.b) * half() + sub;
  }
};

}  // namespace

SolveResult wmp_buchi(const Arena& a, const VertexSet& U, int lambda,
                      const SolveOptions& opts) {
  if (a.domain.count() == 0) return lose_all(a);
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  VertexSet X = a.domain;
  std::vector<VertexSet> xs{X};
  std::vector<VertexSet> subDoms;
  std::vector<AttractorResult> pulls;
  std::vector<MooreStrategy> taus;
  while (true) {
    AttractorResult y = attractor(a, Player::P2, a.domain - X);
    Arena sub(*a.g, a.domain - y.attractor);
    SolveOptions subOpts = opts;
    VertexSet X2(a.g->num_vertices());
    SolveResult reach;
    if (!sub.domain.empty()) {
      reach = wmp_reach(sub, U & sub.domain, lambda, subOpts);
      X2 = reach.regions.w1;
    }
    assert(X2.subset_of(X));
    subDoms.push_back(sub.domain);
    pulls.push_back(std::move(y));
    taus.push_back(std::move(reach.s2));
    xs.push_back(X2);
    if (X2 == X) break;
    X = X2;
  }

  SolveResult r;
  r.regions.w1 = X;
  r.regions.w2 = a.domain - X;
  if (!opts.strategies) return r;

  // Winner side: rebuild the product data on the fixpoint subgame.
  if (!X.empty()) {
    Arena core(*a.g, X);
    ReachData rd = build_reach_data(core, U & X, lambda, opts.budget);
    BuchiP1 p1(core, rd, U & X);
    r.s1 = keep_alive(wrap_machine(p1, Player::P1, p1.size(), p1.bot()), rd.P);
  } else {
    r.s1 = lowest_edge_strategy(*a.g, Player::P1);
  }

  // Opponent side: alternate per-level spoilers with memoryless pulls, walking
  // down the shrinking subgame chain.  Even parts spoil inside a subgame, odd
  // parts drag the play out of it; the part index never decreases along a play,
  // so some spoiler eventually runs forever from a vertex it covers.
  const int levels = static_cast<int>(subDoms.size());
  std::vector<CompositePart> parts;
  for (int p = levels; p >= 1; --p) {
    CompositePart spoil;
    spoil.inner = subDoms[p - 1];
    spoil.sub = taus[p - 1].update ? taus[p - 1]
                                   : lowest_edge_strategy(*a.g, Player::P2);
    spoil.positional.assign(a.g->num_vertices(), -1);
    parts.push_back(std::move(spoil));
    if (p == 1) break;
    CompositePart pull;
    pull.inner = VertexSet(a.g->num_vertices());
    pull.sub = lowest_edge_strategy(*a.g, Player::P2);
    pull.positional.assign(a.g->num_vertices(), -1);
    for (Vertex v : pulls[p - 1].attractor.elements()) {
      if (pulls[p - 1].witnessEdge[v] >= 0) {
        pull.positional[v] = pulls[p - 1].witnessEdge[v];
      }
    }
    parts.push_back(std::move(pull));
  }
  std::vector<int> fallback(a.g->num_vertices(), 0);
  for (Vertex v = 0; v < a.g->num_vertices(); ++v) {
    fallback[v] = lowest_staying(*a.g, a.domain, v);
  }
  struct Hier {
    std::vector<VertexSet> xs;
    std::vector<VertexSet> subs;
    std::vector<VertexSet> pullSets;
    int levels = 0;
  };
  auto h = std::make_shared<Hier>();
  h->xs = xs;
  h->subs = subDoms;
  h->levels = levels;
  h->pullSets.reserve(pulls.size());
  for (const AttractorResult& pr : pulls) h->pullSets.push_back(pr.attractor);
  r.s2 = build_switching_machine(
      *a.g, Player::P2, std::move(parts),
      [h](int i, Vertex v) {
        // Part 2*(levels-p) spoils subgame p, part 2*(levels-p)+1 pulls out of
        // it.  A spoiler keeps the part while the play stays in its subgame; a
        // pull keeps it until the target is hit, then hands over to the next
        // level down, entering its pull region or its spoiler as appropriate.
        while (true) {
          int p = h->levels - i / 2;
          if (i % 2 == 0) {
            if (p <= 1 || h->subs[p - 1].test(v)) return i;
            ++i;
          } else {
            if (h->xs[p - 1].test(v)) return i;
            if (p >= 2 && h->pullSets[p - 2].test(v)) {
              i += 2;
            } else {
              ++i;
            }
          }
        }
      },
      std::move(fallback));
  return r;
}

SolveResult wmp_gen_buchi(const Arena& a, const std::vector<VertexSet>& targets,
                          int lambda, const SolveOptions& opts) {
  if (a.domain.count() == 0) return lose_all(a);
  assert(!targets.empty());
  const int k = static_cast<int>(targets.size());
  auto sets = std::make_shared<std::vector<VertexSet>>(targets);
  auto P = std::make_shared<VertexCompProduct>(build_vertex_comp_product(
      a, k + 1, 0,
      [sets, k](long long c, Vertex v) {
        long long c2 = c == k ? 0 : c;
        if (c2 < k && (*sets)[c2].test(v)) ++c2;
        return c2;
      },
      opts.budget));
  VertexSet wrap(P->game.num_vertices());
  for (Vertex s = 0; s < P->game.num_vertices(); ++s) {
    if (P->compOf[s] == k) wrap.set(s);
  }
  SolveResult inner = wmp_buchi(Arena(P->game), wrap, lambda, opts);
  SolveResult r;
  r.regions.w1 = VertexSet(a.g->num_vertices());
  for (Vertex v : a.domain.elements()) {
    Vertex s = P->fwd[v];
    if (s >= 0 && inner.regions.w1.test(s)) r.regions.w1.set(v);
  }
  r.regions.w2 = a.domain - r.regions.w1;
  if (opts.strategies) {
    r.s1 = keep_alive(lift_vertex_comp(*P, inner.s1), P);
    r.s2 = keep_alive(lift_vertex_comp(*P, inner.s2), P);
  }
  return r;
}

namespace {

/** Leveled descent: each level runs its own safety-or-descend machine, and
 * reaching a descend target re-enters the machine of the target's level. */
struct CoLevelP1 {
  std::vector<ObjFP1> levels;  // level j stored at index j-1
  std::vector<long long> base;
  std::vector<int> levelOf;
  const GameStructure* g = nullptr;
  VertexSet domain;

  struct S {
    bool dead = false;
    int level = 1;
    ObjFP1::S is;
  };

  long long size() const {
    return 2 + (levels.empty() ? 0 : base.back() + levels.back().size());
  }
  long long bot() const { return 0; }

  S enter(Vertex v) const {
    S s;
    int lv = v >= 0 && v < static_cast<int>(levelOf.size()) ? levelOf[v] : -1;
    if (lv < 1) {
      s.dead = true;
      return s;
    }
    s.level = lv;
    s.is = levels[lv - 1].settle(levels[lv - 1].bot(), v);
    if (s.is.mode == ObjFP1::kDone && s.is.viaGdTarget) s.dead = true;  // defensive
    return s;
  }

  S settle(long long m, Vertex v) const {
    if (m == 0) return enter(v);
    if (m == 1) {
      S s;
      s.dead = true;
      return s;
    }
    long long sub = m - 2;
    int level = 1;
    for (std::size_t i = levels.size(); i-- > 0;) {
      if (sub >= base[i]) {
        level = static_cast<int>(i) + 1;
        sub -= base[i];
        break;
      }
    }
    S s;
    s.level = level;
    s.is = levels[level - 1].settle(sub, v);
    if (s.is.mode == ObjFP1::kDone && s.is.viaGdTarget) return enter(v);
    return s;
  }

  int act(const S& s, Vertex v) const {
    if (s.dead) return lowest_staying(*g, domain, v);
    return levels[s.level - 1].act(s.is, v);
  }

  long long store(const S& s) const {
    if (s.dead) return 1;
    return 2 + base[s.level - 1] + levels[s.level - 1].store(s.is);
  }
};

}  // namespace

SolveResult wmp_cobuchi(const Arena& a, const VertexSet& U, int lambda,
                        const SolveOptions& opts, CobuchiTrace* trace) {
  if (a.domain.count() == 0) {
    if (trace) {
      trace->outer = {VertexSet(a.g->num_vertices())};
      trace->inner.clear();
    }
    return lose_all(a);
  }
  assert(lambda >= 1);
  assert(a.g->dimension() >= 1);
  VertexSet X(a.g->num_vertices());
  std::vector<VertexSet> xs{X};
  std::vector<std::shared_ptr<const ObjFData>> calls;
  while (true) {
    auto d = obj_f_solve(a, U, X, lambda, opts.budget);
    VertexSet X2 = X | d->win;
    calls.push_back(d);
    xs.push_back(X2);
    if (X2 == X) break;
    X = X2;
  }
  if (trace) {
    trace->outer = xs;
    trace->inner.clear();
    for (const auto& c : calls) trace->inner.push_back(c->zTrace);
  }

  SolveResult r;
  r.regions.w1 = X;
  r.regions.w2 = a.domain - X;
  if (!opts.strategies) return r;

  if (X.empty()) {
    r.s1 = lowest_edge_strategy(*a.g, Player::P1);
  } else {
    // The last call is the confirming fixpoint pass; levels come from the
    // growth passes before it.
    CoLevelP1 p1;
    p1.g = a.g;
    p1.domain = a.domain;
    p1.levelOf.assign(a.g->num_vertices(), -1);
    const int usedLevels = static_cast<int>(calls.size()) - 1;
    assert(usedLevels >= 1);
    long long off = 0;
    for (int j = 1; j <= usedLevels; ++j) {
      for (Vertex v : xs[j].elements()) {
        if (p1.levelOf[v] < 0) p1.levelOf[v] = j;
      }
      p1.levels.push_back(ObjFP1(calls[j - 1]));
      p1.base.push_back(off);
      off += p1.levels.back().size();
    }
    r.s1 = wrap_machine(p1, Player::P1, p1.size(), p1.bot());
  }

  ObjFP2 p2(calls.back(), /*gdExit=*/false);
  r.s2 = wrap_machine(p2, Player::P2, p2.size(), p2.bot());
  return r;
}

SolveResult solve_one_wmp_fragment(const GameStructure& g,
                                   const AtomicObjective& wmpAtom,
                                   const std::vector<AtomicObjective>& otherAtoms,
                                   const SolveOptions& opts) {
  if (wmpAtom.measure != Measure::WMP) {
    throw FragmentMismatchError("fragment solver needs exactly one window atom");
  }
  for (const AtomicObjective& o : otherAtoms) {
    if (o.measure == Measure::WMP) {
      throw FragmentMismatchError("fragment solver accepts only one window atom");
    }
  }
  std::vector<AtomicObjective> atoms{wmpAtom};
  atoms.insert(atoms.end(), otherAtoms.begin(), otherAtoms.end());
  // Machines below keep raw pointers into the split game; hold it on the heap.
  auto splitP = std::make_shared<const EdgeSplitResult>(reduce_edge_split(g, atoms));
  const EdgeSplitResult& split = *splitP;
  const int lambda2 = split.wmpAtoms[0].lambda;
  const GameStructure& sg = split.game;

  std::vector<VertexSet> reaches, buchis, cobuchis;
  VertexSet safes = VertexSet::all(sg.num_vertices());
  bool anySafe = false;
  for (const QualAtom& q : split.qualAtoms) {
    switch (q.kind) {
      case QualKind::Safe:
        safes &= q.set;
        anySafe = true;
        break;
      case QualKind::Reach: reaches.push_back(q.set); break;
      case QualKind::Buchi: buchis.push_back(q.set); break;
      case QualKind::CoBuchi: cobuchis.push_back(q.set); break;
    }
  }
  if ((!reaches.empty()) + (!buchis.empty()) + (!cobuchis.empty()) > 1 ||
      cobuchis.size() > 1) {
    throw FragmentMismatchError("unsupported mix of value atoms");
  }

  Arena whole(sg);
  SolveResult safeSolve;
  Arena core = whole;
  if (anySafe) {
    safeSolve = solve_safe(whole, safes);
    core = Arena(sg, safeSolve.regions.w1);
  }

  SolveResult inner;
  if (!reaches.empty()) {
    if (reaches.size() == 1) {
      inner = wmp_reach(core, reaches[0] & core.domain, lambda2, opts);
    } else {
      std::vector<VertexSet> cut;
      for (const VertexSet& s : reaches) cut.push_back(s & core.domain);
      inner = wmp_gen_reach(core, cut, lambda2, opts);
    }
  } else if (!buchis.empty()) {
    if (buchis.size() == 1) {
      inner = wmp_buchi(core, buchis[0] & core.domain, lambda2, opts);
    } else {
      std::vector<VertexSet> cut;
      for (const VertexSet& s : buchis) cut.push_back(s & core.domain);
      inner = wmp_gen_buchi(core, cut, lambda2, opts);
    }
  } else if (!cobuchis.empty()) {
    inner = wmp_cobuchi(core, cobuchis[0] & core.domain, lambda2, opts);
  } else {
    inner = solve_wmp_single(core, lambda2, opts);
  }

  MooreStrategy splitS1 = inner.s1;
  MooreStrategy splitS2 = inner.s2;
  if (anySafe && opts.strategies) {
    std::vector<int> positional(sg.num_vertices(), -1);
    for (Vertex v : (whole.domain - safeSolve.regions.w1).elements()) {
      positional[v] = safeSolve.s2.action(0, v);
    }
    std::vector<int> fallback(sg.num_vertices(), 0);
    for (Vertex v = 0; v < sg.num_vertices(); ++v) fallback[v] = sg.out(v)[0];
    CompositePart part{safeSolve.regions.w1 - inner.regions.w1, splitS2,
                       std::move(positional)};
    splitS2 = build_switching_machine(sg, Player::P2, {std::move(part)},
                                      [](int, Vertex) { return 0; }, std::move(fallback));
  }

  SolveResult r;
  r.regions.w1 = VertexSet(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (inner.regions.w1.test(v)) r.regions.w1.set(v);
  }
  r.regions.w2 = VertexSet::all(g.num_vertices()) - r.regions.w1;
  if (opts.strategies) {
    r.s1 = keep_alive(lift_edge_split(split, g, splitS1), splitP);
    r.s2 = keep_alive(lift_edge_split(split, g, splitS2), splitP);
  }
  return r;
}

}  // namespace hetgames
