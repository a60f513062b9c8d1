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

#include "hetgames/boolean.hpp"

#include <memory>
#include <utility>

#include "hetgames/product.hpp"
#include "hetgames/reductions.hpp"

namespace hetgames {

namespace {

MooreStrategy keep_alive(MooreStrategy s, std::shared_ptr<const void> holder) {
  auto u = s.update;
  auto act = s.action;
  s.update = [u, holder](long long m, Vertex v) { return u(m, v); };
  s.action = [act, holder](long long m, Vertex v) { return act(m, v); };
  return s;
}

MooreStrategy staying_strategy(const Arena& a, Player who) {
  std::vector<int> stay(a.g->num_vertices());
  for (Vertex v = 0; v < a.g->num_vertices(); ++v) {
    stay[v] = lowest_staying(*a.g, a.domain, v);
  }
  return memoryless_strategy(*a.g, who, std::move(stay));
}

SolveResult trivial_win(const Arena& a) {
  SolveResult r;
  r.regions.w1 = a.domain;
  r.regions.w2 = VertexSet(a.g->num_vertices());
  r.s1 = staying_strategy(a, Player::P1);
  r.s2 = staying_strategy(a, Player::P2);
  return r;
}

/** Prefix-independent core: all Büchi sets infinitely often, eventually in C. */
SolveResult tail_solve(const Arena& a, const std::vector<VertexSet>& bs,
                       const VertexSet& c, bool anyCobuchi, long long budget) {
  if (bs.empty() && !anyCobuchi) return trivial_win(a);
  if (bs.empty()) return solve_cobuchi(a, c);
  if (!anyCobuchi) {
    return bs.size() == 1 ? solve_buchi(a, bs[0]) : solve_gen_buchi(a, bs);
  }
  return solve_gen_buchi_cobuchi(a, bs, c, budget);
}

std::vector<int> edge_fallbacks(const GameStructure& g) {
  std::vector<int> fb(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) fb[v] = g.out(v)[0];
  return fb;
}

/**
 * Reach the target set and then win a prefix-independent tail: equivalent to
 * reaching targets that are already tail-winning, with a mode switch there.
 */
struct ReachThenTail {
  SolveResult reach;  // toward goal ∩ tail winning
  SolveResult tail;
  VertexSet goal;      // raw target states
  VertexSet goalGood;  // goal ∩ tail W1

  MooreStrategy p1(const GameStructure& g) const {
    std::vector<int> pos(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) pos[v] = reach.s1.action(0, v);
    std::vector<CompositePart> parts;
    parts.push_back({VertexSet(g.num_vertices()), lowest_edge_strategy(g, Player::P1),
                     std::move(pos)});
    parts.push_back({VertexSet::all(g.num_vertices()), tail.s1, {}});
    VertexSet good = goalGood;
    return build_switching_machine(
        g, Player::P1, std::move(parts),
        [good](int cur, Vertex v) { return cur == 1 || good.test(v) ? 1 : 0; },
        edge_fallbacks(g));
  }

  MooreStrategy p2(const GameStructure& g) const {
    std::vector<int> pos(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) pos[v] = reach.s2.action(0, v);
    std::vector<CompositePart> parts;
    parts.push_back({VertexSet(g.num_vertices()), lowest_edge_strategy(g, Player::P2),
                     std::move(pos)});
    parts.push_back({VertexSet::all(g.num_vertices()), tail.s2, {}});
    VertexSet bad = goal - goalGood;  // reached, but the tail is losing there
    return build_switching_machine(
        g, Player::P2, std::move(parts),
        [bad](int cur, Vertex v) { return cur == 1 || bad.test(v) ? 1 : 0; },
        edge_fallbacks(g));
  }
};

struct QualSplit {
  VertexSet safes;
  bool anySafe = false;
  VertexSet cobuchi;
  bool anyCobuchi = false;
  std::vector<VertexSet> reaches;
  std::vector<VertexSet> buchis;
};

QualSplit classify(const std::vector<QualAtom>& atoms, int n) {
  QualSplit q;
  q.safes = VertexSet::all(n);
  q.cobuchi = VertexSet::all(n);
  for (const QualAtom& a : atoms) {
    switch (a.kind) {
      case QualKind::Safe:
        q.safes &= a.set;
        q.anySafe = true;
        break;
      case QualKind::CoBuchi:
        q.cobuchi &= a.set;
        q.anyCobuchi = true;
        break;
      case QualKind::Reach: q.reaches.push_back(a.set); break;
      case QualKind::Buchi: q.buchis.push_back(a.set); break;
    }
  }
  return q;
}

}  // namespace

SolveResult solve_isl_intersection(const GameStructure& g,
                                   const std::vector<AtomicObjective>& atoms,
                                   long long budget) {
  for (const AtomicObjective& a : atoms) {
    if (a.measure == Measure::WMP) {
      throw NotIslError("window atom in a settle/revisit-only intersection");
    }
  }
  if (atoms.empty()) return trivial_win(Arena(g));

  // Machines below keep raw pointers into the split game; hold it on the heap.
  auto splitP = std::make_shared<const EdgeSplitResult>(reduce_edge_split(g, atoms));
  const EdgeSplitResult& split = *splitP;
  const GameStructure& sg = split.game;
  QualSplit q = classify(split.qualAtoms, sg.num_vertices());

  Arena whole(sg);
  SolveResult safeSolve;
  Arena core = whole;
  if (q.anySafe) {
    safeSolve = solve_safe(whole, q.safes);
    core = Arena(sg, safeSolve.regions.w1);
  }

  SolveResult inner;
  if (core.domain.count() == 0) {
    inner.regions.w1 = VertexSet(sg.num_vertices());
    inner.regions.w2 = core.domain;
    inner.s1 = lowest_edge_strategy(sg, Player::P1);
    inner.s2 = lowest_edge_strategy(sg, Player::P2);
  } else if (q.reaches.empty()) {
    std::vector<VertexSet> bs;
    for (const VertexSet& b : q.buchis) bs.push_back(b & core.domain);
    inner = tail_solve(core, bs, q.cobuchi & core.domain, q.anyCobuchi, budget);
  } else {
    // Visited-set bitmask over the reach targets; full mask = all visited.
    const int k = static_cast<int>(q.reaches.size());
    std::vector<long long> bits(sg.num_vertices(), 0);
    for (int i = 0; i < k; ++i) {
      for (Vertex v : q.reaches[i].elements()) bits[v] |= 1ll << i;
    }
    const long long full = (1ll << k) - 1;
    auto P = std::make_shared<VertexCompProduct>(build_vertex_comp_product(
        core, 1ll << k, 0, [bits](long long c, Vertex v) { return c | bits[v]; },
        budget));
    const GameStructure& pg = P->game;
    Arena pa(pg);
    std::vector<VertexSet> bs;
    for (const VertexSet& b : q.buchis) {
      VertexSet lifted(pg.num_vertices());
      for (Vertex s = 0; s < pg.num_vertices(); ++s) {
        if (b.test(P->baseOf[s])) lifted.set(s);
      }
      bs.push_back(std::move(lifted));
    }
    VertexSet cLift(pg.num_vertices());
    for (Vertex s = 0; s < pg.num_vertices(); ++s) {
      if (q.cobuchi.test(P->baseOf[s])) cLift.set(s);
    }

    ReachThenTail rt;
    rt.tail = tail_solve(pa, bs, cLift, q.anyCobuchi, budget);
    rt.goal = VertexSet(pg.num_vertices());
    for (Vertex s = 0; s < pg.num_vertices(); ++s) {
      if (P->compOf[s] == full) rt.goal.set(s);
    }
    rt.goalGood = rt.goal & rt.tail.regions.w1;
    rt.reach = solve_reach(pa, rt.goalGood);

    inner.regions.w1 = VertexSet(sg.num_vertices());
    for (Vertex v : core.domain.elements()) {
      Vertex s = P->fwd[v];
      if (s >= 0 && rt.reach.regions.w1.test(s)) inner.regions.w1.set(v);
    }
    inner.regions.w2 = core.domain - inner.regions.w1;
    inner.s1 = keep_alive(lift_vertex_comp(*P, rt.p1(pg)), P);
    inner.s2 = keep_alive(lift_vertex_comp(*P, rt.p2(pg)), P);
  }

  MooreStrategy splitS1 = inner.s1;
  MooreStrategy splitS2 = inner.s2;
  if (q.anySafe) {
    std::vector<int> positional(sg.num_vertices(), -1);
    for (Vertex v : (whole.domain - safeSolve.regions.w1).elements()) {
      positional[v] = safeSolve.s2.action(0, v);
    }
    std::vector<CompositePart> parts;
    parts.push_back({safeSolve.regions.w1 - inner.regions.w1, splitS2,
                     std::move(positional)});
    splitS2 = build_switching_machine(sg, Player::P2, std::move(parts),
                                      [](int, Vertex) { return 0; },
                                      edge_fallbacks(sg));
  }

  SolveResult r;
  r.regions.w1 = VertexSet(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (inner.regions.w1.test(v)) r.regions.w1.set(v);
  }
  r.regions.w2 = VertexSet::all(g.num_vertices()) - r.regions.w1;
  r.s1 = keep_alive(lift_edge_split(split, g, splitS1), splitP);
  r.s2 = keep_alive(lift_edge_split(split, g, splitS2), splitP);
  return r;
}

SolveResult solve_intersection(const GameStructure& g,
                               const std::vector<AtomicObjective>& atoms,
                               const SolveOptions& opts) {
  if (atoms.empty()) return trivial_win(Arena(g));
  auto exP = std::make_shared<const ExpandResult>(reduce_expand(g, atoms, opts.budget));
  const ExpandResult& ex = *exP;
  Arena pa(ex.game);
  VertexSet c = VertexSet::all(ex.game.num_vertices());
  bool anyCo = false;
  std::vector<VertexSet> bs;
  for (std::size_t i = 0; i < ex.kinds.size(); ++i) {
    if (ex.kinds[i] == QualKind::CoBuchi) {
      c &= ex.targets[i];
      anyCo = true;
    } else {
      bs.push_back(ex.targets[i]);
    }
  }
  SolveResult inner = tail_solve(pa, bs, c, anyCo, opts.budget);
  SolveResult r;
  r.regions.w1 = VertexSet(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Vertex s = ex.fwd[v];
    if (s >= 0 && inner.regions.w1.test(s)) r.regions.w1.set(v);
  }
  r.regions.w2 = VertexSet::all(g.num_vertices()) - r.regions.w1;
  if (opts.strategies) {
    r.s1 = keep_alive(lift_expand(ex, g, inner.s1), exP);
    r.s2 = keep_alive(lift_expand(ex, g, inner.s2), exP);
  }
  return r;
}

namespace {

std::vector<std::vector<AtomicObjective>> disjuncts_of(const ObjectiveExpr& e) {
  std::vector<std::vector<AtomicObjective>> groups;
  auto leavesInto = [](const ObjectiveExpr& t, std::vector<AtomicObjective>& out) {
    for (const AtomicObjective* a : leaves_of(t)) out.push_back(*a);
  };
  if (e.kind == ObjectiveExpr::Kind::Or) {
    for (const ObjectiveExpr& kid : e.kids) {
      groups.emplace_back();
      leavesInto(kid, groups.back());
    }
  } else {
    groups.emplace_back();
    leavesInto(e, groups.back());
  }
  return groups;
}

/**
 * Shared engine for disjunctions over one tracker product: one cyclic
 * progress counter per group, one pair per group (avoid leaving the group's
 * settle sets, hit the counter wrap infinitely often).
 */
SolveResult solve_groups_rabin(const GameStructure& g, const ExpandResult& ex,
                               const std::vector<std::vector<AtomicObjective>>& groups,
                               Player rabinPlayer, const SolveOptions& opts) {
  const int d = static_cast<int>(groups.size());
  const GameStructure& eg = ex.game;

  // Per group: folded settle set and revisit sets, in flat-leaf order.
  std::vector<VertexSet> settle(d, VertexSet::all(eg.num_vertices()));
  std::vector<std::vector<VertexSet>> revisit(d);
  std::size_t flat = 0;
  for (int k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < groups[k].size(); ++i, ++flat) {
      if (ex.kinds[flat] == QualKind::CoBuchi) {
        settle[k] &= ex.targets[flat];
      } else {
        revisit[k].push_back(ex.targets[flat]);
      }
    }
  }

  std::vector<long long> radix(d), stride(d);
  long long compCount = 1;
  for (int k = 0; k < d; ++k) {
    radix[k] = static_cast<long long>(revisit[k].size()) + 1;
    stride[k] = compCount;
    compCount *= radix[k];
  }
  auto rev = std::make_shared<std::vector<std::vector<VertexSet>>>(revisit);
  auto rad = std::make_shared<std::vector<long long>>(radix);
  auto str = std::make_shared<std::vector<long long>>(stride);
  auto step = [rev, rad, str, d](long long comp, Vertex v) {
    long long out = 0;
    for (int k = 0; k < d; ++k) {
      long long c = (comp / (*str)[k]) % (*rad)[k];
      long long wrap = (*rad)[k] - 1;
      long long c2 = c == wrap ? 0 : c;
      if (c2 < wrap && (*rev)[k][c2].test(v)) ++c2;
      out += c2 * (*str)[k];
    }
    return out;
  };
  auto CP = std::make_shared<VertexCompProduct>(
      build_vertex_comp_product(Arena(eg), compCount, 0, step, opts.budget));
  const GameStructure& cg = CP->game;

  RabinCondition cond;
  for (int k = 0; k < d; ++k) {
    RabinPair pair;
    pair.E = VertexSet(cg.num_vertices());
    pair.F = VertexSet(cg.num_vertices());
    long long wrap = radix[k] - 1;
    for (Vertex s = 0; s < cg.num_vertices(); ++s) {
      if (!settle[k].test(CP->baseOf[s])) pair.E.set(s);
      if ((CP->compOf[s] / stride[k]) % radix[k] == wrap) pair.F.set(s);
    }
    cond.pairs.push_back(std::move(pair));
  }

  SolveResult rabin = solve_rabin(Arena(cg), cond, rabinPlayer);

  SolveResult r;
  r.regions.w1 = VertexSet(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Vertex s = ex.fwd[v];
    if (s < 0) continue;
    Vertex cs = CP->fwd[s];
    if (cs >= 0 && rabin.regions.w1.test(cs)) r.regions.w1.set(v);
  }
  r.regions.w2 = VertexSet::all(g.num_vertices()) - r.regions.w1;
  if (opts.strategies) {
    r.s1 = lift_expand(ex, g, keep_alive(lift_vertex_comp(*CP, rabin.s1), CP));
    r.s2 = lift_expand(ex, g, keep_alive(lift_vertex_comp(*CP, rabin.s2), CP));
  }
  return r;
}

std::vector<AtomicObjective> flatten(const std::vector<std::vector<AtomicObjective>>& groups) {
  std::vector<AtomicObjective> all;
  for (const auto& gr : groups) all.insert(all.end(), gr.begin(), gr.end());
  return all;
}

}  // namespace

SolveResult solve_dnf(const GameStructure& g, const ObjectiveExpr& expr,
                      const SolveOptions& opts) {
  auto groups = disjuncts_of(expr);
  ExpandResult ex = reduce_expand(g, flatten(groups), opts.budget);
  return solve_groups_rabin(g, ex, groups, Player::P1, opts);
}

SolveResult solve_cnf(const GameStructure& g, const ObjectiveExpr& expr,
                      const SolveOptions& opts) {
  // Negation turns the conjunction of clauses into a disjunction of groups of
  // complemented atoms; the opponent pursues it on the complement trackers.
  std::vector<std::vector<AtomicObjective>> groups;
  if (expr.kind == ObjectiveExpr::Kind::And) {
    for (const ObjectiveExpr& kid : expr.kids) {
      groups.emplace_back();
      for (const AtomicObjective* a : leaves_of(kid)) groups.back().push_back(*a);
    }
  } else {
    groups.emplace_back();
    for (const AtomicObjective* a : leaves_of(expr)) groups.back().push_back(*a);
  }
  ExpandResult ex = reduce_complement_expand(g, flatten(groups), opts.budget);
  return solve_groups_rabin(g, ex, groups, Player::P2, opts);
}

namespace {

void gather_terms(const ObjectiveExpr& e, std::vector<std::vector<ObjectiveExpr>>& acc) {
  switch (e.kind) {
    case ObjectiveExpr::Kind::Atom:
      acc.push_back({e});
      return;
    case ObjectiveExpr::Kind::Or: {
      for (const ObjectiveExpr& kid : e.kids) gather_terms(kid, acc);
      return;
    }
    case ObjectiveExpr::Kind::And: {
      std::vector<std::vector<ObjectiveExpr>> acc2{{}};
      for (const ObjectiveExpr& kid : e.kids) {
        std::vector<std::vector<ObjectiveExpr>> kidTerms;
        gather_terms(kid, kidTerms);
        std::vector<std::vector<ObjectiveExpr>> next;
        for (const auto& left : acc2) {
          for (const auto& right : kidTerms) {
            std::vector<ObjectiveExpr> row = left;
            row.insert(row.end(), right.begin(), right.end());
            next.push_back(std::move(row));
            if (next.size() > 4096) {
              throw BudgetExceededError("distributing the objective explodes");
            }
          }
        }
        acc2 = std::move(next);
      }
      for (auto& row : acc2) acc.push_back(std::move(row));
      return;
    }
  }
}

ObjectiveExpr distribute(const ObjectiveExpr& e) {
  std::vector<std::vector<ObjectiveExpr>> terms;
  gather_terms(e, terms);
  std::vector<ObjectiveExpr> ors;
  for (auto& row : terms) {
    ors.push_back(row.size() == 1 ? row[0] : ObjectiveExpr::make_and(std::move(row)));
  }
  return ors.size() == 1 ? ors[0] : ObjectiveExpr::make_or(std::move(ors));
}

}  // namespace

DispatchResult dispatch(const GameStructure& g, const ObjectiveExpr& expr,
                        const SolveOptions& opts) {
  NormalizedObjective norm = normalize(expr, g);
  Shape shape = shape_of(norm.expr);
  std::vector<AtomicObjective> atoms;
  for (const AtomicObjective* a : leaves_of(norm.expr)) atoms.push_back(*a);

  DispatchResult out;
  SolveResult res;
  switch (shape) {
    case Shape::Atom:
    case Shape::Intersection: {
      int wmp = 0;
      for (const AtomicObjective& a : atoms) wmp += a.measure == Measure::WMP;
      if (wmp == 0) {
        res = solve_isl_intersection(norm.game, atoms, opts.budget);
        out.route = "settle/revisit intersection on the split game";
      } else if (wmp == 1) {
        std::vector<AtomicObjective> others;
        AtomicObjective wa;
        for (const AtomicObjective& a : atoms) {
          if (a.measure == Measure::WMP) {
            wa = a;
          } else {
            others.push_back(a);
          }
        }
        try {
          res = solve_one_wmp_fragment(norm.game, wa, others, opts);
          out.route = "single-window fragment solver";
        } catch (const FragmentMismatchError&) {
          res = solve_intersection(norm.game, atoms, opts);
          out.route = "tracker-product intersection";
        }
      } else {
        res = solve_intersection(norm.game, atoms, opts);
        out.route = "tracker-product intersection";
      }
      break;
    }
    case Shape::Dnf: {
      res = solve_dnf(norm.game, norm.expr, opts);
      out.route = "disjunction on the tracker product with progress counters";
      break;
    }
    case Shape::Cnf: {
      res = solve_cnf(norm.game, norm.expr, opts);
      out.route = "clause conjunction via the complemented tracker product";
      break;
    }
    case Shape::General: {
      ObjectiveExpr d = distribute(norm.expr);
      std::size_t terms = d.kind == ObjectiveExpr::Kind::Or ? d.kids.size() : 1;
      res = solve_dnf(norm.game, d, opts);
      out.route = "distributed to a disjunction of " + std::to_string(terms) + " terms";
      break;
    }
  }
  out.regions = std::move(res.regions);
  out.s1 = std::move(res.s1);
  out.s2 = std::move(res.s2);
  return out;
}

}  // namespace hetgames
