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

// Everything here is a reference path: straightforward constructions solved
// by plain fixpoints, sharing nothing with the solver pipeline beyond the
// core game and objective types.

#include "hetgames/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hetgames {

namespace {

/** Iterate-to-fixpoint attractor for player p within `dom`. */
VertexSet o_attr(const GameStructure& g, const VertexSet& dom, Player p,
                 const VertexSet& target) {
  VertexSet a = target & dom;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : dom.elements()) {
      if (a.test(v)) continue;
      bool any = false, allIn = true, hasIn = false;
      for (int e : g.out(v)) {
        Vertex d = g.edge(e).dst;
        if (!dom.test(d)) continue;
        hasIn = true;
        if (a.test(d)) any = true; else allIn = false;
      }
      bool pulled = g.owner(v) == p ? any : (hasIn && allIn);
      if (pulled) {
        a.set(v);
        changed = true;
      }
    }
  }
  return a;
}

struct OTracker {
  Measure measure;
  int dim;
  int lambda = 1;
  Weight span = 0;
  long long radix = 2;
  long long dead = 0;

  long long step(long long c, Weight w) const {
    switch (measure) {
      case Measure::Inf: return (c == 1 || w < 0) ? 1 : 0;
      case Measure::Sup: return (c == 1 || w >= 0) ? 1 : 0;
      case Measure::LimInf:
      case Measure::LimSup: return w < 0 ? 1 : 0;
      case Measure::WMP: {
        if (c == dead) return dead;
        Weight s = -(c % (span + 1));
        long long l = c / (span + 1);
        Weight t = s + w;
        if (t >= 0) return 0;
        if (l + 1 >= lambda) return dead;
        return (l + 1) * (span + 1) + (-t);
      }
    }
    return 0;
  }
  bool good(long long c) const {
    switch (measure) {
      case Measure::Inf:
      case Measure::LimInf:
      case Measure::LimSup: return c == 0;
      case Measure::Sup: return c == 1;
      case Measure::WMP: return c != dead;
    }
    return false;
  }
  bool settleKind() const {
    // true: the leaf asks the play to settle in its good states;
    // false: it asks to revisit them forever.
    switch (measure) {
      case Measure::Inf:
      case Measure::LimInf:
      case Measure::WMP: return true;
      default: return false;
    }
  }
};

struct OProduct {
  GameStructure game;
  std::vector<Vertex> fwd;                    // base -> start state
  std::vector<Vertex> baseOf;                 // state -> base vertex
  std::vector<std::vector<long long>> comps;  // state -> per-leaf tracker value
};

OProduct build_product(const GameStructure& g, const std::vector<OTracker>& trackers,
                       long long budget) {
  const int n = g.num_vertices();
  auto code = [&](const std::vector<long long>& cs) {
    long long id = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) id = id * trackers[i].radix + cs[i];
    return id;
  };
  OProduct p;
  p.fwd.assign(n, -1);
  std::unordered_map<long long, int> seen;
  std::vector<std::pair<Vertex, std::vector<long long>>> states;
  auto intern = [&](Vertex v, std::vector<long long> cs) {
    long long key = code(cs) * n + v;
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    int id = static_cast<int>(states.size());
    if (id >= budget) {
      throw ProductTooLargeError("reference product exceeded the budget of " +
                                 std::to_string(budget) + " states");
    }
    seen.emplace(key, id);
    states.emplace_back(v, std::move(cs));
    return id;
  };
  for (Vertex v = 0; v < n; ++v) {
    p.fwd[v] = intern(v, std::vector<long long>(trackers.size(), 0));
  }
  std::vector<Player> owners;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < states.size(); ++i) {
    Vertex v = states[i].first;
    owners.push_back(g.owner(v));
    for (int e : g.out(v)) {
      std::vector<long long> next = states[i].second;
      for (std::size_t k = 0; k < trackers.size(); ++k) {
        next[k] = trackers[k].step(next[k], g.edge(e).w[trackers[k].dim]);
      }
      edges.push_back({static_cast<Vertex>(i), intern(g.edge(e).dst, std::move(next)), {}});
    }
  }
  p.game = GameStructure::build(owners, edges);
  p.baseOf.resize(p.game.num_vertices());
  p.comps.resize(p.game.num_vertices());
  for (int i = 0; i < p.game.num_vertices(); ++i) {
    p.baseOf[i] = states[i].first;
    p.comps[i] = states[i].second;
  }
  return p;
}

/** Evaluates the objective tree given which leaves hold. */
bool eval_tree(const ObjectiveExpr& e, const std::vector<char>& leafTruth, int& leaf) {
  switch (e.kind) {
    case ObjectiveExpr::Kind::Atom: return leafTruth[leaf++];
    case ObjectiveExpr::Kind::And: {
      bool r = true;
      for (const auto& k : e.kids) r = eval_tree(k, leafTruth, leaf) && r;
      return r;
    }
    case ObjectiveExpr::Kind::Or: {
      bool r = false;
      for (const auto& k : e.kids) r = eval_tree(k, leafTruth, leaf) || r;
      return r;
    }
  }
  return false;
}

struct MullerCtx {
  const GameStructure* g;
  const ObjectiveExpr* expr;
  int leaves;
  std::vector<char> settle;            // per leaf
  std::vector<std::uint32_t> profile;  // per state: leaf membership bits
  std::vector<int> colorOf;            // per state
  std::vector<std::uint32_t> colorBits;  // per color: leaf membership bits
  std::vector<char> phi;               // memo over color masks, 0 unset / 1 false / 2 true

  bool winnerP1(std::uint32_t colorMask) {
    char& memo = phi[colorMask];
    if (memo != 0) return memo == 2;
    std::vector<char> truth(leaves);
    for (int k = 0; k < leaves; ++k) {
      bool all = true, any = false;
      for (std::size_t c = 0; c < colorBits.size(); ++c) {
        if (!(colorMask >> c & 1)) continue;
        if (colorBits[c] >> k & 1) any = true; else all = false;
      }
      truth[k] = settle[k] ? all : any;
    }
    int leaf = 0;
    bool r = eval_tree(*expr, truth, leaf);
    memo = r ? 2 : 1;
    return r;
  }

  std::vector<std::uint32_t> maximal_flipped(std::uint32_t S) {
    bool base = winnerP1(S);
    std::vector<std::uint32_t> found;
    std::unordered_set<std::uint32_t> visited;
    std::function<void(std::uint32_t)> dfs = [&](std::uint32_t T) {
      if (!visited.insert(T).second) return;
      if (winnerP1(T) != base) {
        found.push_back(T);
        return;
      }
      for (std::size_t c = 0; c < colorBits.size(); ++c) {
        if (T >> c & 1) dfs(T & ~(std::uint32_t{1} << c));
      }
    };
    for (std::size_t c = 0; c < colorBits.size(); ++c) {
      if (S >> c & 1) dfs(S & ~(std::uint32_t{1} << c));
    }
    std::sort(found.begin(), found.end(), [](std::uint32_t a, std::uint32_t b) {
      return __builtin_popcount(a) > __builtin_popcount(b);
    });
    std::vector<std::uint32_t> maximal;
    for (std::uint32_t T : found) {
      bool covered = false;
      for (std::uint32_t M : maximal) {
        if ((T & M) == T) { covered = true; break; }
      }
      if (!covered) maximal.push_back(T);
    }
    return maximal;
  }

  void solve(VertexSet dom, VertexSet& w1, VertexSet& w2) {
    while (!dom.empty()) {
      std::uint32_t S = 0;
      for (Vertex v : dom.elements()) S |= std::uint32_t{1} << colorOf[v];
      Player p = winnerP1(S) ? Player::P1 : Player::P2;
      Player q = opponent(p);
      bool progressed = false;
      for (std::uint32_t T : maximal_flipped(S)) {
        VertexSet bad(dom.universe());
        for (Vertex v : dom.elements()) {
          if (!(T >> colorOf[v] & 1)) bad.set(v);
        }
        VertexSet h = dom - o_attr(*g, dom, p, bad);
        if (h.empty()) continue;
        VertexSet h1(dom.universe()), h2(dom.universe());
        solve(h, h1, h2);
        const VertexSet& wq = q == Player::P1 ? h1 : h2;
        if (!wq.empty()) {
          VertexSet grab = o_attr(*g, dom, q, wq);
          (q == Player::P1 ? w1 : w2) |= grab;
          dom.subtract(grab);
          progressed = true;
          break;
        }
      }
      if (!progressed) {
        (p == Player::P1 ? w1 : w2) |= dom;
        return;
      }
    }
  }
};

}  // namespace

WinningRegions oracle_solve(const GameStructure& g, const ObjectiveExpr& expr,
                            long long budget) {
  NormalizedObjective norm = normalize(expr, g);
  std::vector<const AtomicObjective*> leaves = leaves_of(norm.expr);

  std::vector<OTracker> trackers;
  for (const AtomicObjective* ap : leaves) {
    const AtomicObjective& a = *ap;
    OTracker t;
    t.measure = a.measure;
    t.dim = a.dimension - 1;
    if (a.measure == Measure::WMP) {
      t.lambda = a.lambda;
      t.span = static_cast<Weight>(a.lambda) * norm.game.max_abs_weight_dim(a.dimension);
      t.dead = (t.span + 1) * t.lambda;
      t.radix = t.dead + 1;
    }
    trackers.push_back(t);
  }
  OProduct prod = build_product(norm.game, trackers, budget);
  const int ps = prod.game.num_vertices();

  MullerCtx ctx;
  ctx.g = &prod.game;
  ctx.expr = &norm.expr;
  ctx.leaves = static_cast<int>(leaves.size());
  for (const OTracker& t : trackers) ctx.settle.push_back(t.settleKind());
  ctx.profile.resize(ps);
  ctx.colorOf.resize(ps);
  std::unordered_map<std::uint32_t, int> colorId;
  for (int i = 0; i < ps; ++i) {
    std::uint32_t bits = 0;
    for (int k = 0; k < ctx.leaves; ++k) {
      if (trackers[k].good(prod.comps[i][k])) bits |= std::uint32_t{1} << k;
    }
    ctx.profile[i] = bits;
    auto it = colorId.find(bits);
    if (it == colorId.end()) {
      it = colorId.emplace(bits, static_cast<int>(ctx.colorBits.size())).first;
      ctx.colorBits.push_back(bits);
    }
    ctx.colorOf[i] = it->second;
  }
  if (ctx.colorBits.size() > 20) {
    throw ProductTooLargeError("reference solver limited to 20 tracker profiles, got " +
                               std::to_string(ctx.colorBits.size()));
  }
  ctx.phi.assign(std::size_t{1} << ctx.colorBits.size(), 0);

  VertexSet pw1(ps), pw2(ps);
  ctx.solve(VertexSet::all(ps), pw1, pw2);

  WinningRegions r;
  r.w1 = VertexSet(g.num_vertices());
  r.w2 = VertexSet(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    (pw1.test(prod.fwd[v]) ? r.w1 : r.w2).set(v);
  }
  return r;
}

Weight depth_limited_minmax(const GameStructure& g, const VertexSet& U, int lambda,
                            Vertex from) {
  assert(g.dimension() >= 1);
  const int n = g.num_vertices();
  std::vector<std::vector<char>> known(lambda + 1, std::vector<char>(n, 0));
  std::vector<std::vector<Weight>> memo(lambda + 1, std::vector<Weight>(n, kNegInf));
  std::function<Weight(Vertex, int)> rec = [&](Vertex v, int l) -> Weight {
    if (l == 0) return kNegInf;
    if (known[l][v]) return memo[l][v];
    bool first = true;
    Weight best = kNegInf;
    for (int e : g.out(v)) {
      Vertex d = g.edge(e).dst;
      Weight w = g.edge(e).w[0];
      Weight m = std::max(U.test(d) ? Weight{0} : kNegInf, rec(d, l - 1));
      Weight val = (m == kNegInf || w + m < 0) ? kNegInf : w + m;
      if (first) {
        best = val;
        first = false;
      } else {
        best = g.owner(v) == Player::P1 ? std::max(best, val) : std::min(best, val);
      }
    }
    known[l][v] = 1;
    memo[l][v] = best;
    return best;
  };
  return rec(from, lambda);
}

VertexSet oracle_gd_reach(const GameStructure& g, const VertexSet& U, int lambda) {
  assert(g.dimension() >= 1);
  const int n = g.num_vertices();
  const Weight W = g.max_abs_weight_dim(1);
  // Worst suffix total r lives in [-lambda*W, W]; one extra slot means "no
  // edge taken yet in this segment".
  const long long rSlots = static_cast<Weight>(lambda) * W + W + 2;
  auto rIdx = [&](Weight r) { return r + static_cast<Weight>(lambda) * W; };
  const long long fresh = rSlots - 1;
  auto id = [&](Vertex v, int l, long long ri) {
    return (static_cast<long long>(v) * lambda + (l - 1)) * rSlots + ri;
  };
  const long long states = static_cast<long long>(n) * lambda * rSlots;
  const long long winSink = states, loseSink = states + 1;

  std::vector<Player> owners(states + 2);
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (int l = 1; l <= lambda; ++l) {
      for (long long ri = 0; ri < rSlots; ++ri) {
        long long s = id(v, l, ri);
        owners[s] = g.owner(v);
        for (int e : g.out(v)) {
          Vertex d = g.edge(e).dst;
          Weight w = g.edge(e).w[0];
          Weight r2 = ri == fresh ? w : std::min(ri - static_cast<Weight>(lambda) * W + w, w);
          // Reachable states keep r2 in range; clamping only touches the
          // enumerated-but-unreachable rest.
          r2 = std::max(r2, -static_cast<Weight>(lambda) * W);
          long long dst;
          if (r2 >= 0) {
            dst = U.test(d) ? winSink : id(d, lambda, fresh);
          } else if (l == 1) {
            dst = loseSink;
          } else {
            dst = id(d, l - 1, rIdx(r2));
          }
          edges.push_back({static_cast<Vertex>(s), static_cast<Vertex>(dst), {}});
        }
      }
    }
  }
  owners[winSink] = owners[loseSink] = Player::P1;
  edges.push_back({static_cast<Vertex>(winSink), static_cast<Vertex>(winSink), {}});
  edges.push_back({static_cast<Vertex>(loseSink), static_cast<Vertex>(loseSink), {}});

  GameStructure unfolded = GameStructure::build(owners, edges);
  VertexSet target(unfolded.num_vertices());
  target.set(static_cast<Vertex>(winSink));
  VertexSet reach =
      o_attr(unfolded, VertexSet::all(unfolded.num_vertices()), Player::P1, target);

  VertexSet out(n);
  for (Vertex v = 0; v < n; ++v) {
    if (U.test(v) || reach.test(static_cast<Vertex>(id(v, lambda, fresh)))) out.set(v);
  }
  return out;
}

GameStructure random_game(std::uint64_t seed, const RandomGameParams& p) {
  std::mt19937_64 rng(seed);
  const int n = p.vertices;
  std::vector<Player> owners(n);
  for (Vertex v = 0; v < n; ++v) {
    owners[v] = (rng() % 1000) < static_cast<std::uint64_t>(p.p2Fraction * 1000)
                    ? Player::P2
                    : Player::P1;
  }
  std::vector<Edge> edges;
  std::vector<Vertex> pool(n);
  for (Vertex v = 0; v < n; ++v) {
    int deg = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                      std::min(p.maxOutDegree, n)));
    for (Vertex u = 0; u < n; ++u) pool[u] = u;
    for (int i = 0; i < deg; ++i) {
      int pick = i + static_cast<int>(rng() % (n - i));
      std::swap(pool[i], pool[pick]);
      Edge e;
      e.src = v;
      e.dst = pool[i];
      e.w.resize(p.dimension);
      for (int m = 0; m < p.dimension; ++m) {
        e.w[m] = static_cast<Weight>(rng() % (2 * p.maxAbsWeight + 1)) - p.maxAbsWeight;
      }
      edges.push_back(std::move(e));
    }
  }
  return GameStructure::build(owners, edges);
}

}  // namespace hetgames
