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

#include "hetgames/reductions.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>

namespace hetgames {

namespace {

void require_normal_atom(const AtomicObjective& a, const GameStructure& g) {
  if (a.rel != Rel::Ge || a.threshold.num != 0) {
    throw Error("reductions expect atoms in normal form (>= 0)");
  }
  if (a.dimension < 1 || a.dimension > g.dimension()) {
    throw BadDimensionError("atom dimension " + std::to_string(a.dimension) +
                            " out of range 1.." + std::to_string(g.dimension()));
  }
}

std::unordered_map<long long, int> edge_index(const GameStructure& g) {
  std::unordered_map<long long, int> idx;
  idx.reserve(static_cast<std::size_t>(g.num_edges()) * 2);
  for (int e = g.num_edges(); e-- > 0;) {
    const Edge& ed = g.edge(e);
    idx[static_cast<long long>(ed.src) * g.num_vertices() + ed.dst] = e;
  }
  return idx;
}

std::vector<int> edge_positions(const GameStructure& g) {
  std::vector<int> pos(g.num_edges(), -1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto& out = g.out(v);
    for (std::size_t i = 0; i < out.size(); ++i) pos[out[i]] = static_cast<int>(i);
  }
  return pos;
}

}  // namespace

const char* qual_kind_name(QualKind k) {
  switch (k) {
    case QualKind::Reach: return "Reach";
    case QualKind::Safe: return "Safe";
    case QualKind::Buchi: return "Buchi";
    case QualKind::CoBuchi: return "CoBuchi";
  }
  return "?";
}

EdgeSplitResult reduce_edge_split(const GameStructure& g,
                                  const std::vector<AtomicObjective>& atoms) {
  const int n = g.num_vertices();
  const int ne = g.num_edges();
  std::vector<int> wmpDims;
  for (const AtomicObjective& a : atoms) {
    require_normal_atom(a, g);
    if (a.measure == Measure::WMP) wmpDims.push_back(a.dimension);
  }
  const int outDim = static_cast<int>(wmpDims.size());

  std::vector<Player> owners(n + ne);
  for (Vertex v = 0; v < n; ++v) owners[v] = g.owner(v);
  for (int e = 0; e < ne; ++e) owners[n + e] = Player::P1;

  std::vector<Edge> edges;
  edges.reserve(2 * ne);
  for (int e = 0; e < ne; ++e) {
    Edge half;
    half.src = g.edge(e).src;
    half.dst = n + e;
    half.w.assign(outDim, -1);
    edges.push_back(std::move(half));
  }
  for (int e = 0; e < ne; ++e) {
    Edge half;
    half.src = n + e;
    half.dst = g.edge(e).dst;
    half.w.resize(outDim);
    for (int j = 0; j < outDim; ++j) half.w[j] = 1 + g.edge(e).w[wmpDims[j] - 1];
    edges.push_back(std::move(half));
  }

  EdgeSplitResult r;
  r.game = GameStructure::build(owners, edges);
  r.game.names.resize(n + ne);
  for (Vertex v = 0; v < n; ++v) r.game.names[v] = g.name_of(v);
  for (int e = 0; e < ne; ++e) r.game.names[n + e] = "m" + std::to_string(e);

  r.midpointOfEdge.resize(ne);
  for (int e = 0; e < ne; ++e) r.midpointOfEdge[e] = n + e;
  r.baseEdgeOfPart.resize(2 * ne);
  r.entersMidpoint.resize(2 * ne);
  for (int e = 0; e < ne; ++e) {
    r.baseEdgeOfPart[e] = e;
    r.entersMidpoint[e] = true;
    r.baseEdgeOfPart[ne + e] = e;
    r.entersMidpoint[ne + e] = false;
  }

  VertexSet originals(n + ne);
  for (Vertex v = 0; v < n; ++v) originals.set(v);
  int wmpNext = 0;
  for (const AtomicObjective& a : atoms) {
    if (a.measure == Measure::WMP) {
      r.wmpIndexOfLeaf.push_back(static_cast<int>(r.wmpAtoms.size()));
      r.qualIndexOfLeaf.push_back(-1);
      r.wmpAtoms.push_back({++wmpNext, 2 * a.lambda});
      continue;
    }
    VertexSet goodMid(n + ne);
    for (int e = 0; e < ne; ++e) {
      if (g.edge(e).w[a.dimension - 1] >= 0) goodMid.set(n + e);
    }
    QualAtom q;
    switch (a.measure) {
      case Measure::Inf: q = {QualKind::Safe, originals | goodMid}; break;
      case Measure::Sup: q = {QualKind::Reach, goodMid}; break;
      case Measure::LimInf: q = {QualKind::CoBuchi, originals | goodMid}; break;
      case Measure::LimSup: q = {QualKind::Buchi, goodMid}; break;
      default: break;
    }
    r.wmpIndexOfLeaf.push_back(-1);
    r.qualIndexOfLeaf.push_back(static_cast<int>(r.qualAtoms.size()));
    r.qualAtoms.push_back(std::move(q));
  }
  return r;
}

MooreStrategy lift_edge_split(const EdgeSplitResult& r, const GameStructure& base,
                              const MooreStrategy& splitStrategy) {
  // Owns copies; the returned machine must not depend on the caller's locals.
  struct Ctx {
    EdgeSplitResult r;
    GameStructure base;
    MooreStrategy inner;
    std::unordered_map<long long, int> edgeIdx;
    long long pendSlots;

    std::pair<long long, Vertex> decode(long long m) const {
      return {m / pendSlots, static_cast<Vertex>(m % pendSlots) - 1};
    }
    long long settle(long long sm, Vertex pending, Vertex v) const {
      if (pending < 0) return sm;
      auto it = edgeIdx.find(static_cast<long long>(pending) * base.num_vertices() + v);
      if (it == edgeIdx.end()) return sm;
      long long s = inner.update(sm, pending);
      return inner.update(s, r.midpointOfEdge[it->second]);
    }
  };
  auto ctx = std::make_shared<Ctx>();
  ctx->r = r;
  ctx->base = base;
  ctx->inner = splitStrategy;
  ctx->edgeIdx = edge_index(base);
  ctx->pendSlots = base.num_vertices() + 1;

  MooreStrategy s;
  s.owner = splitStrategy.owner;
  s.memorySize = splitStrategy.memorySize * ctx->pendSlots;
  s.initialState = splitStrategy.initialState * ctx->pendSlots;
  s.update = [ctx](long long m, Vertex v) {
    auto [sm, pending] = ctx->decode(m);
    return ctx->settle(sm, pending, v) * ctx->pendSlots + (v + 1);
  };
  s.action = [ctx](long long m, Vertex v) {
    auto [sm, pending] = ctx->decode(m);
    long long now = ctx->settle(sm, pending, v);
    int se = ctx->inner.action(now, v);
    if (se >= 0 && se < static_cast<int>(ctx->r.baseEdgeOfPart.size()) &&
        ctx->r.entersMidpoint[se] && ctx->r.game.edge(se).src == v) {
      return ctx->r.baseEdgeOfPart[se];
    }
    return ctx->base.out(v)[0];
  };
  return s;
}

namespace {

struct Tracker {
  Measure measure;
  int dim;          // 0-based into base weights
  int lambda = 1;
  Weight span = 0;  // lambda * max |w| on dim, window atoms only
  long long radix = 2;
  long long dead = 0;  // window atoms: code of the dead tracker

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
        assert(-t <= span);
        return (l + 1) * (span + 1) + (-t);
      }
    }
    return 0;
  }
  bool holds(long long c) const {
    // Membership in the atom's good set of product states.
    switch (measure) {
      case Measure::Inf:
      case Measure::LimInf:
      case Measure::LimSup: return c == 0;
      case Measure::Sup: return c == 1;
      case Measure::WMP: return c != dead;
    }
    return false;
  }
  QualKind kind() const {
    switch (measure) {
      case Measure::Inf:
      case Measure::LimInf:
      case Measure::WMP: return QualKind::CoBuchi;
      default: return QualKind::Buchi;
    }
  }
};

}  // namespace

ExpandResult reduce_expand(const GameStructure& g,
                           const std::vector<AtomicObjective>& atoms,
                           long long budget) {
  const int n = g.num_vertices();
  std::vector<Tracker> trackers;
  StatePacker packer;
  long long bound = n;
  for (const AtomicObjective& a : atoms) {
    require_normal_atom(a, g);
    Tracker t;
    t.measure = a.measure;
    t.dim = a.dimension - 1;
    if (a.measure == Measure::WMP) {
      t.lambda = a.lambda;
      t.span = static_cast<Weight>(a.lambda) * g.max_abs_weight_dim(a.dimension);
      t.dead = (t.span + 1) * t.lambda;
      t.radix = t.dead + 1;
    }
    packer.add(t.radix);
    trackers.push_back(t);
    if (bound > budget || t.radix > budget || bound * t.radix / t.radix != bound) {
      bound = budget + 1;
    } else {
      bound *= t.radix;
    }
  }
  if (bound > budget) {
    throw ProductTooLargeError("tracker product needs up to " + std::to_string(bound) +
                               " states, budget is " + std::to_string(budget));
  }

  auto stepComp = [&](long long c, int baseEdge) {
    std::vector<long long> parts = packer.unpack(c);
    for (std::size_t i = 0; i < trackers.size(); ++i) {
      parts[i] = trackers[i].step(parts[i], g.edge(baseEdge).w[trackers[i].dim]);
    }
    return packer.pack(parts);
  };

  ExpandResult r;
  r.packer = packer;
  r.stateBound = bound;
  r.fwd.assign(n, -1);

  std::unordered_map<long long, int> seen;
  std::vector<std::pair<Vertex, long long>> states;
  auto intern = [&](Vertex v, long long c) {
    long long key = c * n + v;
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    int id = static_cast<int>(states.size());
    if (id >= budget) {
      throw ProductTooLargeError("tracker product exceeded the budget of " +
                                 std::to_string(budget) + " states");
    }
    seen.emplace(key, id);
    states.emplace_back(v, c);
    return id;
  };
  for (Vertex v = 0; v < n; ++v) r.fwd[v] = intern(v, 0);

  std::vector<Player> owners;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [v, c] = states[i];
    owners.push_back(g.owner(v));
    for (int e : g.out(v)) {
      int dst = intern(g.edge(e).dst, stepComp(c, e));
      edges.push_back({static_cast<Vertex>(i), dst, {}});
      r.baseEdge.push_back(e);
    }
  }
  r.game = GameStructure::build(owners, edges);
  const int ps = r.game.num_vertices();
  r.baseOf.resize(ps);
  r.compOf.resize(ps);
  r.game.names.resize(ps);
  for (int i = 0; i < ps; ++i) {
    r.baseOf[i] = states[i].first;
    r.compOf[i] = states[i].second;
    r.game.names[i] = g.name_of(states[i].first) + "#" + std::to_string(states[i].second);
  }
  for (std::size_t k = 0; k < trackers.size(); ++k) {
    VertexSet target(ps);
    for (int i = 0; i < ps; ++i) {
      if (trackers[k].holds(packer.unpack(r.compOf[i])[k])) target.set(i);
    }
    r.kinds.push_back(trackers[k].kind());
    r.targets.push_back(std::move(target));
  }
  return r;
}

ExpandResult reduce_complement_expand(const GameStructure& g,
                                      const std::vector<AtomicObjective>& atoms,
                                      long long budget) {
  ExpandResult r = reduce_expand(g, atoms, budget);
  for (std::size_t k = 0; k < r.kinds.size(); ++k) {
    r.kinds[k] = r.kinds[k] == QualKind::Buchi ? QualKind::CoBuchi : QualKind::Buchi;
    r.targets[k] = r.targets[k].complement();
  }
  return r;
}

MooreStrategy lift_expand(const ExpandResult& r, const GameStructure& base,
                          const MooreStrategy& productStrategy) {
  // Owns copies; the returned machine must not depend on the caller's locals.
  struct Ctx {
    ExpandResult r;
    GameStructure base;
    MooreStrategy inner;
    std::unordered_map<long long, int> edgeIdx;
    std::vector<int> posOf;
    long long slots;

    Vertex track(Vertex prev, Vertex v) const {
      if (prev < 0) return r.fwd[v];
      auto it = edgeIdx.find(static_cast<long long>(r.baseOf[prev]) * base.num_vertices() + v);
      if (it == edgeIdx.end()) return r.fwd[v];
      return r.game.edge(r.game.out(prev)[posOf[it->second]]).dst;
    }
  };
  auto ctx = std::make_shared<Ctx>();
  ctx->r = r;
  ctx->base = base;
  ctx->inner = productStrategy;
  ctx->edgeIdx = edge_index(base);
  ctx->posOf = edge_positions(base);
  ctx->slots = r.game.num_vertices() + 1;

  MooreStrategy s;
  s.owner = productStrategy.owner;
  s.memorySize = productStrategy.memorySize * ctx->slots;
  s.initialState = productStrategy.initialState * ctx->slots;
  s.update = [ctx](long long m, Vertex v) {
    long long pm = m / ctx->slots;
    Vertex pid = ctx->track(static_cast<Vertex>(m % ctx->slots) - 1, v);
    return ctx->inner.update(pm, pid) * ctx->slots + (pid + 1);
  };
  s.action = [ctx](long long m, Vertex v) {
    long long pm = m / ctx->slots;
    Vertex pid = ctx->track(static_cast<Vertex>(m % ctx->slots) - 1, v);
    int pe = ctx->inner.action(pm, pid);
    if (pe >= 0 && pe < static_cast<int>(ctx->r.baseEdge.size()) &&
        ctx->r.game.edge(pe).src == pid) {
      return ctx->r.baseEdge[pe];
    }
    return ctx->base.out(v)[0];
  };
  return s;
}

WeightedRecoding reduce_qual_to_weighted(const GameStructure& g,
                                         const std::vector<QualAtom>& atoms) {
  const int dims = static_cast<int>(atoms.size());
  std::vector<Player> owners(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) owners[v] = g.owner(v);
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    Edge ed;
    ed.src = g.edge(e).src;
    ed.dst = g.edge(e).dst;
    ed.w.resize(dims);
    for (int m = 0; m < dims; ++m) ed.w[m] = atoms[m].set.test(ed.src) ? 0 : -1;
    edges.push_back(std::move(ed));
  }
  WeightedRecoding out;
  out.game = GameStructure::build(owners, edges);
  out.game.names = g.names;
  for (int m = 0; m < dims; ++m) {
    Measure meas = Measure::Sup;
    switch (atoms[m].kind) {
      case QualKind::Reach: meas = Measure::Sup; break;
      case QualKind::Safe: meas = Measure::Inf; break;
      case QualKind::Buchi: meas = Measure::LimSup; break;
      case QualKind::CoBuchi: meas = Measure::LimInf; break;
    }
    out.atoms.push_back({meas, m + 1, Rel::Ge, {0, 1}, 1});
  }
  return out;
}

}  // namespace hetgames
