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

#include "hetgames/rabin.hpp"

#include <memory>

namespace hetgames {

namespace {

struct RecOut {
  VertexSet winP, winQ;
  std::vector<int> pChoice;  // -1 where unset
  MooreStrategy qMachine;
};

struct RabinCtx {
  const GameStructure* g;
  const std::vector<RabinPair>* pairs;
  Player p, q;
};

bool is_favorable(const RabinCtx& ctx, const VertexSet& S) {
  for (const RabinPair& pr : *ctx.pairs) {
    if (!pr.E.intersects(S) && pr.F.intersects(S)) return true;
  }
  return false;
}

/** Largest subset of S on which no pair can be satisfied by a full support. */
VertexSet max_unfavorable_subsupport(const RabinCtx& ctx, const VertexSet& S) {
  VertexSet T = S;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const RabinPair& pr : *ctx.pairs) {
      if (!pr.E.intersects(T) && pr.F.intersects(T)) {
        T.subtract(pr.F);
        changed = true;
        break;
      }
    }
  }
  return T;
}

RecOut solve_rec(const RabinCtx& ctx, const VertexSet& S);

/** Support is favorable: p wins whenever the play keeps leaving T*. */
RecOut solve_favorable(const RabinCtx& ctx, const VertexSet& S) {
  const GameStructure& g = *ctx.g;
  const int n = g.num_vertices();
  VertexSet Tstar = max_unfavorable_subsupport(ctx, S);

  RecOut out;
  out.winP = VertexSet(n);
  out.winQ = VertexSet(n);
  out.pChoice.assign(n, -1);

  struct Layer {
    VertexSet core;  // q's sub-win inside the trapped subgame
    AttractorResult pull;
    MooreStrategy sub;
  };
  std::vector<Layer> layers;
  std::vector<int> layerOf(n, -1);

  VertexSet G0 = S;
  for (;;) {
    if (G0.empty()) break;
    Arena a0(g, G0);
    VertexSet outside = G0 - Tstar;
    AttractorResult toOut = attractor(a0, ctx.p, outside);
    VertexSet D = G0 - toOut.attractor;
    RecOut sub;
    if (!D.empty()) sub = solve_rec(ctx, D);
    if (D.empty() || sub.winQ.empty()) {
      // Remainder is p's: pull to the outside; inside D the sub-choice wins.
      out.winP = G0;
      for (Vertex v : G0.elements()) {
        if (g.owner(v) != ctx.p) continue;
        if (outside.test(v)) out.pChoice[v] = lowest_staying(g, G0, v);
        else if (toOut.attractor.test(v)) out.pChoice[v] = toOut.witnessEdge[v];
        else out.pChoice[v] = sub.pChoice[v];
      }
      break;
    }
    AttractorResult pull = attractor(a0, ctx.q, sub.winQ);
    int idx = static_cast<int>(layers.size());
    for (Vertex v : pull.attractor.elements()) layerOf[v] = idx;
    layers.push_back({sub.winQ, pull, sub.qMachine});
    out.winQ |= pull.attractor;
    G0.subtract(pull.attractor);
  }

  std::vector<int> fallback(n);
  for (Vertex v = 0; v < n; ++v) fallback[v] = lowest_staying(g, S, v);
  std::vector<CompositePart> parts;
  for (Layer& l : layers) {
    CompositePart part;
    part.inner = l.core;
    part.sub = std::move(l.sub);
    part.positional.assign(n, -1);
    for (Vertex v = 0; v < n; ++v) {
      if (l.pull.witnessEdge[v] >= 0) part.positional[v] = l.pull.witnessEdge[v];
    }
    parts.push_back(std::move(part));
  }
  auto layerOfPtr = std::make_shared<std::vector<int>>(std::move(layerOf));
  out.qMachine = build_switching_machine(
      g, ctx.q, std::move(parts),
      [layerOfPtr](int k, Vertex v) {
        int l = (*layerOfPtr)[v];
        return l >= 0 ? l : k;
      },
      std::move(fallback));
  return out;
}

/** Support is unfavorable: q wins whenever p cannot commit to a child trap. */
RecOut solve_unfavorable(const RabinCtx& ctx, const VertexSet& S) {
  const GameStructure& g = *ctx.g;
  const int n = g.num_vertices();

  // Child supports: drop one E_k; duplicates collapse.
  std::vector<VertexSet> childSets;
  for (const RabinPair& pr : *ctx.pairs) {
    VertexSet Tk = S - pr.E;
    if (Tk.empty()) continue;
    bool dup = false;
    for (const VertexSet& c : childSets) {
      if (c == Tk) {
        dup = true;
        break;
      }
    }
    if (!dup) childSets.push_back(std::move(Tk));
  }

  RecOut out;
  out.winP = VertexSet(n);
  out.winQ = VertexSet(n);
  out.pChoice.assign(n, -1);

  VertexSet G0 = S;
  bool progress = true;
  while (progress && !G0.empty()) {
    progress = false;
    Arena a0(g, G0);
    for (const VertexSet& Tk : childSets) {
      VertexSet Tk0 = Tk & G0;
      bool viable = false;
      for (const RabinPair& pr : *ctx.pairs) {
        if (!pr.E.intersects(Tk0) && pr.F.intersects(Tk0)) {
          viable = true;
          break;
        }
      }
      if (!viable) continue;
      VertexSet outSet = G0 - Tk0;
      AttractorResult pull = attractor(a0, ctx.q, outSet);
      VertexSet D = G0 - pull.attractor;
      if (D.empty()) continue;
      RecOut sub = solve_rec(ctx, D);
      if (!sub.winP.empty()) {
        AttractorResult grab = attractor(a0, ctx.p, sub.winP);
        out.winP |= grab.attractor;
        for (Vertex v : grab.attractor.elements()) {
          if (g.owner(v) != ctx.p) continue;
          if (sub.winP.test(v)) out.pChoice[v] = sub.pChoice[v];
          else out.pChoice[v] = grab.witnessEdge[v];
        }
        G0.subtract(grab.attractor);
        progress = true;
        break;
      }
    }
  }

  out.winQ = G0;
  std::vector<int> fallback(n);
  for (Vertex v = 0; v < n; ++v) fallback[v] = lowest_staying(g, G0.empty() ? S : G0, v);

  // One patrol part per child still viable on the settled remainder, including
  // those whose escape pull covers everything: rotating through their out-sets
  // revisits every avoid-set a satisfied pair would have to dodge for good.
  std::vector<CompositePart> parts;
  std::vector<VertexSet> outSets;
  if (!G0.empty()) {
    Arena a0(g, G0);
    for (const VertexSet& Tk : childSets) {
      VertexSet Tk0 = Tk & G0;
      bool viable = false;
      for (const RabinPair& pr : *ctx.pairs) {
        if (!pr.E.intersects(Tk0) && pr.F.intersects(Tk0)) {
          viable = true;
          break;
        }
      }
      if (!viable) continue;
      VertexSet outSet = G0 - Tk0;
      AttractorResult pull = attractor(a0, ctx.q, outSet);
      VertexSet D = G0 - pull.attractor;
      CompositePart part;
      part.inner = D;
      part.sub = D.empty() ? lowest_edge_strategy(g, ctx.q)
                           : solve_rec(ctx, D).qMachine;
      part.positional.assign(n, -1);
      for (Vertex v = 0; v < n; ++v) {
        if (pull.witnessEdge[v] >= 0) part.positional[v] = pull.witnessEdge[v];
      }
      parts.push_back(std::move(part));
      outSets.push_back(std::move(outSet));
    }
  }
  int nc = static_cast<int>(outSets.size());
  auto outsPtr = std::make_shared<std::vector<VertexSet>>(std::move(outSets));
  out.qMachine = build_switching_machine(
      g, ctx.q, std::move(parts),
      [outsPtr, nc](int k, Vertex v) {
        // Leaving the watched child support rotates to the next child.
        if (nc > 0 && (*outsPtr)[k].test(v)) return (k + 1) % nc;
        return k;
      },
      std::move(fallback));
  return out;
}

RecOut solve_rec(const RabinCtx& ctx, const VertexSet& S) {
  if (is_favorable(ctx, S)) return solve_favorable(ctx, S);
  return solve_unfavorable(ctx, S);
}

}  // namespace

SolveResult solve_rabin(const Arena& a, const RabinCondition& cond, Player rabinPlayer) {
  const GameStructure& g = *a.g;
  RabinCtx ctx{&g, &cond.pairs, rabinPlayer, opponent(rabinPlayer)};
  RecOut rec = solve_rec(ctx, a.domain);

  std::vector<int> pChoice(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    pChoice[v] = rec.pChoice[v] >= 0 ? rec.pChoice[v] : g.out(v)[0];
  }
  MooreStrategy sp = memoryless_strategy(g, rabinPlayer, std::move(pChoice));

  SolveResult res;
  if (rabinPlayer == Player::P1) {
    res.regions.w1 = rec.winP;
    res.regions.w2 = rec.winQ;
    res.s1 = std::move(sp);
    res.s2 = std::move(rec.qMachine);
  } else {
    res.regions.w2 = rec.winP;
    res.regions.w1 = rec.winQ;
    res.s2 = std::move(sp);
    res.s1 = std::move(rec.qMachine);
  }
  return res;
}

}  // namespace hetgames
