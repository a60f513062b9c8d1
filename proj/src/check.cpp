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

#include "hetgames/check.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "hetgames/boolean.hpp"
#include "hetgames/io.hpp"
#include "hetgames/window.hpp"

namespace hetgames {

namespace {

struct CaseReport {
  bool regionMismatch = false;
  bool invariantViolation = false;
  bool strategyFailure = false;
  bool certified = false;
  long long plays = 0;
  std::string issue;
};

Weight w1_at(const GameStructure& g, const Lasso& l, long long t) {
  if (t < static_cast<long long>(l.stemEdges.size())) {
    return g.edge(l.stemEdges[t]).w[0];
  }
  t -= static_cast<long long>(l.stemEdges.size());
  return g.edge(l.periodEdges[t % l.periodEdges.size()]).w[0];
}

bool icw_lasso_win(const GameStructure& g, const Lasso& l, const VertexSet& U,
                   int lambda) {
  for (int j = 1; j <= lambda; ++j) {
    if (!U.test(l.vertex_at(j))) continue;
    Weight suffix = 0;
    bool closed = true;
    for (int i = j - 1; i >= 0; --i) {
      suffix += w1_at(g, l, i);
      if (suffix < 0) {
        closed = false;
        break;
      }
    }
    if (closed) return true;
  }
  return false;
}

bool gd_lasso_win(const GameStructure& g, const Lasso& l, const VertexSet& U,
                  int lambda) {
  // Segment starts repeat period offsets, so a generous horizon is exact.
  long long H = static_cast<long long>(l.stem.size()) +
                static_cast<long long>(l.period.size()) * (lambda + 2) + lambda + 2;
  std::vector<char> landing(H + lambda + 2, 0);
  landing[0] = 1;
  for (long long p = 0; p <= H; ++p) {
    if (!landing[p]) continue;
    if (U.test(l.vertex_at(p))) return true;
    for (int len = 1; len <= lambda; ++len) {
      Weight s = 0;
      bool closed = true;
      for (long long i = p + len - 1; i >= p; --i) {
        s += w1_at(g, l, i);
        if (s < 0) {
          closed = false;
          break;
        }
      }
      if (closed) landing[p + len] = 1;
    }
  }
  return false;
}

bool two_closed(const GameStructure& g, const VertexSet& S) {
  for (Vertex v : S.elements()) {
    bool stay = false, exit = false;
    for (int e : g.out(v)) {
      (S.test(g.edge(e).dst) ? stay : exit) = true;
    }
    if (g.owner(v) == Player::P2 ? exit : !stay) return false;
  }
  return true;
}

bool one_closed(const GameStructure& g, const VertexSet& S) {
  for (Vertex v : S.elements()) {
    bool stay = false, exit = false;
    for (int e : g.out(v)) {
      (S.test(g.edge(e).dst) ? stay : exit) = true;
    }
    if (g.owner(v) == Player::P1 ? exit : !stay) return false;
  }
  return true;
}

std::string region_diff(const GameStructure& g, const WinningRegions& got,
                        const WinningRegions& want) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (got.w1.test(v) != want.w1.test(v)) {
      return g.name_of(v) + ": got " + (got.w1.test(v) ? "P1" : "P2") + ", want " +
             (want.w1.test(v) ? "P1" : "P2");
    }
  }
  return "identical";
}

/** Everything needed to judge one generated instance. */
struct BuiltCase {
  // Strategy machines hold raw pointers into the game they were solved on,
  // so both the play-out game and the solver-side game must stay heap-held.
  std::shared_ptr<const GameStructure> game;
  std::shared_ptr<const void> keepAlive;
  WinningRegions got, want;
  MooreStrategy s1, s2;
  bool haveStrategies = true;
  bool w1TwoClosed = false, w2OneClosed = false;
  std::function<bool(const GameStructure&, const Lasso&)> p1Wins;
};

VertexSet random_subset(int n, std::mt19937_64& rng) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v) {
    if (rng() % 2 == 0) s.set(v);
  }
  return s;
}

GameStructure with_indicator_dims(const GameStructure& g,
                                  const std::vector<VertexSet>& sets) {
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    Edge ne = g.edge(e);
    for (const VertexSet& u : sets) ne.w.push_back(u.test(ne.src) ? 0 : -1);
    edges.push_back(std::move(ne));
  }
  std::vector<Player> owners;
  for (Vertex v = 0; v < g.num_vertices(); ++v) owners.push_back(g.owner(v));
  return GameStructure::build(std::move(owners), std::move(edges));
}

ObjectiveExpr wmp_with(int lambda, const std::vector<Measure>& qual) {
  std::vector<ObjectiveExpr> kids;
  AtomicObjective w;
  w.measure = Measure::WMP;
  w.dimension = 1;
  w.rel = Rel::Ge;
  w.threshold = {0, 1};
  w.lambda = lambda;
  kids.push_back(ObjectiveExpr::make_atom(w));
  for (std::size_t i = 0; i < qual.size(); ++i) {
    AtomicObjective q;
    q.measure = qual[i];
    q.dimension = 2 + static_cast<int>(i);
    q.rel = Rel::Ge;
    q.threshold = {0, 1};
    kids.push_back(ObjectiveExpr::make_atom(q));
  }
  if (kids.size() == 1) return kids[0];
  return ObjectiveExpr::make_and(std::move(kids));
}

AtomicObjective random_atom(std::mt19937_64& rng, int gameDim, bool allowWmp) {
  AtomicObjective a;
  switch (rng() % (allowWmp ? 5 : 4)) {
    case 0: a.measure = Measure::Inf; break;
    case 1: a.measure = Measure::Sup; break;
    case 2: a.measure = Measure::LimInf; break;
    case 3: a.measure = Measure::LimSup; break;
    default: a.measure = Measure::WMP; break;
  }
  a.dimension = 1 + static_cast<int>(rng() % gameDim);
  switch (rng() % 4) {
    case 0: a.rel = Rel::Ge; break;
    case 1: a.rel = Rel::Gt; break;
    case 2: a.rel = Rel::Le; break;
    default: a.rel = Rel::Lt; break;
  }
  a.threshold = {static_cast<long long>(rng() % 3) - 1,
                 1 + static_cast<long long>(rng() % 2)};
  if (a.measure == Measure::WMP) a.lambda = 1 + static_cast<int>(rng() % 3);
  return a;
}

void closure_flags_from(const ObjectiveExpr& normExpr, BuiltCase& c) {
  bool anySup = false, allLim = true;
  for (const AtomicObjective* a : leaves_of(normExpr)) {
    if (a->measure == Measure::Sup) anySup = true;
    if (a->measure != Measure::LimInf && a->measure != Measure::LimSup) allLim = false;
  }
  // A violated prefix can only be repaired for Sup-like atoms, so the other
  // combinations keep the opponent locked out of W1; full prefix independence
  // additionally locks W2.
  c.w1TwoClosed = !anySup;
  c.w2OneClosed = allLim;
}

std::function<bool(const GameStructure&, const Lasso&)> expr_judge(
    std::shared_ptr<const ObjectiveExpr> e) {
  return [e](const GameStructure& g, const Lasso& l) {
    return evaluate(g, l, *e).overall;
  };
}

BuiltCase build_case(const std::string& family, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  RandomGameParams p;
  p.vertices = 2 + static_cast<int>(rng() % 5);
  p.maxOutDegree = 2 + static_cast<int>(rng() % 2);
  p.maxAbsWeight = 1 + static_cast<int>(rng() % 2);
  p.dimension = 1;
  int lambda = 1 + static_cast<int>(rng() % 3);

  BuiltCase c;
  if (family == "icw" || family == "gd") {
    auto gp = std::make_shared<const GameStructure>(random_game(rng(), p));
    const GameStructure& g = *gp;
    VertexSet U = random_subset(g.num_vertices(), rng);
    Arena a(g);
    if (family == "icw") {
      IcwResult r = icw_end(a, U, lambda);
      c.got.w1 = r.win;
      c.want.w1 = VertexSet(g.num_vertices());
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        Weight ref = depth_limited_minmax(g, U, lambda, v);
        if (ref >= 0) c.want.w1.set(v);
        if (r.values[lambda][v] != ref) {
          // Force a reported mismatch with the vertex in the message.
          c.want.w1 = VertexSet::all(g.num_vertices()) - r.win;
          break;
        }
      }
      c.s1 = r.s1;
      c.s2 = r.s2;
      c.p1Wins = [U, lambda](const GameStructure& gg, const Lasso& l) {
        return icw_lasso_win(gg, l, U, lambda);
      };
    } else {
      GdResult r = gd_end(a, U, lambda);
      c.got.w1 = r.win;
      c.want.w1 = oracle_gd_reach(g, U, lambda);
      c.s1 = r.s1;
      c.s2 = r.s2;
      c.p1Wins = [U, lambda](const GameStructure& gg, const Lasso& l) {
        return gd_lasso_win(gg, l, U, lambda);
      };
    }
    c.got.w2 = VertexSet::all(g.num_vertices()) - c.got.w1;
    c.want.w2 = VertexSet::all(g.num_vertices()) - c.want.w1;
    c.game = gp;
    return c;
  }

  if (family.rfind("wmp-", 0) == 0) {
    auto gp = std::make_shared<const GameStructure>(random_game(rng(), p));
    const GameStructure& g = *gp;
    Arena a(g);
    std::vector<VertexSet> us;
    std::vector<Measure> quals;
    SolveResult r;
    if (family == "wmp-single") {
      r = solve_wmp_single(a, lambda);
    } else if (family == "wmp-safe") {
      us.push_back(random_subset(g.num_vertices(), rng));
      quals.push_back(Measure::Inf);
      r = wmp_safe(a, us[0], lambda);
    } else if (family == "wmp-reach") {
      us.push_back(random_subset(g.num_vertices(), rng));
      quals.push_back(Measure::Sup);
      r = wmp_reach(a, us[0], lambda);
    } else if (family == "wmp-gen-reach") {
      us.push_back(random_subset(g.num_vertices(), rng));
      us.push_back(random_subset(g.num_vertices(), rng));
      quals.assign(2, Measure::Sup);
      r = wmp_gen_reach(a, us, lambda);
    } else if (family == "wmp-buchi") {
      us.push_back(random_subset(g.num_vertices(), rng));
      quals.push_back(Measure::LimSup);
      r = wmp_buchi(a, us[0], lambda);
    } else if (family == "wmp-gen-buchi") {
      us.push_back(random_subset(g.num_vertices(), rng));
      us.push_back(random_subset(g.num_vertices(), rng));
      quals.assign(2, Measure::LimSup);
      r = wmp_gen_buchi(a, us, lambda);
    } else if (family == "wmp-cobuchi") {
      us.push_back(random_subset(g.num_vertices(), rng));
      quals.push_back(Measure::LimInf);
      r = wmp_cobuchi(a, us[0], lambda);
    } else {
      throw Error("unknown family '" + family + "'");
    }
    c.game = std::make_shared<const GameStructure>(with_indicator_dims(g, us));
    c.keepAlive = gp;
    auto expr = std::make_shared<const ObjectiveExpr>(wmp_with(lambda, quals));
    c.got = r.regions;
    c.want = oracle_solve(*c.game, *expr);
    c.s1 = r.s1;
    c.s2 = r.s2;
    closure_flags_from(*expr, c);
    c.p1Wins = expr_judge(expr);
    return c;
  }

  p.dimension = 1 + static_cast<int>(rng() % 2);
  GameStructure g = random_game(rng(), p);
  std::optional<ObjectiveExpr> expr;
  if (family == "isl" || family == "intersection") {
    bool allowWmp = family == "intersection";
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<ObjectiveExpr> kids;
    for (int i = 0; i < k; ++i) {
      kids.push_back(ObjectiveExpr::make_atom(random_atom(rng, p.dimension, allowWmp)));
    }
    expr = k == 1 ? kids[0] : ObjectiveExpr::make_and(std::move(kids));
  } else if (family == "dnf" || family == "cnf") {
    std::vector<ObjectiveExpr> groups;
    for (int d = 0; d < 2; ++d) {
      int k = 1 + static_cast<int>(rng() % 2);
      std::vector<ObjectiveExpr> kids;
      for (int i = 0; i < k; ++i) {
        kids.push_back(ObjectiveExpr::make_atom(random_atom(rng, p.dimension, true)));
      }
      groups.push_back(k == 1 ? kids[0] : (family == "dnf"
                                               ? ObjectiveExpr::make_and(std::move(kids))
                                               : ObjectiveExpr::make_or(std::move(kids))));
    }
    expr = family == "dnf" ? ObjectiveExpr::make_or(std::move(groups))
                           : ObjectiveExpr::make_and(std::move(groups));
  } else {
    throw Error("unknown family '" + family + "'");
  }

  auto norm = std::make_shared<NormalizedObjective>(normalize(*expr, g));
  std::vector<AtomicObjective> leaves;
  for (const AtomicObjective* ap : leaves_of(norm->expr)) leaves.push_back(*ap);
  SolveResult r;
  if (family == "isl") {
    r = solve_isl_intersection(norm->game, leaves);
  } else if (family == "intersection") {
    r = solve_intersection(norm->game, leaves);
  } else if (family == "dnf") {
    r = solve_dnf(norm->game, norm->expr);
  } else {
    r = solve_cnf(norm->game, norm->expr);
  }
  auto normExpr = std::make_shared<const ObjectiveExpr>(norm->expr);
  c.game = std::shared_ptr<const GameStructure>(norm, &norm->game);
  c.got = r.regions;
  c.want = oracle_solve(*c.game, *normExpr);
  c.s1 = r.s1;
  c.s2 = r.s2;
  closure_flags_from(*normExpr, c);
  c.p1Wins = expr_judge(normExpr);
  return c;
}

void certify_case(const BuiltCase& c, std::mt19937_64& rng,
                  const FamilyCheckOptions& opts, CaseReport& rep) {
  for (int side = 0; side < 2; ++side) {
    Player me = side == 0 ? Player::P1 : Player::P2;
    const VertexSet& mine = side == 0 ? c.got.w1 : c.got.w2;
    if (mine.count() == 0) continue;
    const MooreStrategy& sigma = side == 0 ? c.s1 : c.s2;
    Player opp = opponent(me);

    std::vector<MooreStrategy> opponents;
    MemorylessEnumerator en(*c.game, opp, 1 << 20);
    if (en.count() <= 4096) {
      while (auto t = en.next()) opponents.push_back(std::move(*t));
    }
    for (int k = 0; k < opts.sampledOpponents; ++k) {
      opponents.push_back(
          random_strategy(*c.game, opp, 1 + static_cast<long long>(rng() % 3), rng));
    }

    for (const MooreStrategy& tau : opponents) {
      for (Vertex v : mine.elements()) {
        Lasso l = side == 0 ? play_out(*c.game, v, sigma, tau)
                            : play_out(*c.game, v, tau, sigma);
        ++rep.plays;
        if (c.p1Wins(*c.game, l) != (me == Player::P1)) {
          rep.strategyFailure = true;
          rep.issue = std::string(player_name(me)) + " machine loses from " +
                      c.game->name_of(v);
          if (std::getenv("HETGAMES_DEBUG_CERT")) {
            std::ostringstream os;
            write_game(*c.game, os);
            os << "side " << player_name(me) << " from " << c.game->name_of(v)
               << "\nstem:";
            for (Vertex s : l.stem) os << ' ' << c.game->name_of(s);
            os << "\nperiod:";
            for (Vertex s : l.period) os << ' ' << c.game->name_of(s);
            os << "\ntau memory " << tau.memorySize << ":";
            for (long long m = 0; m < tau.memorySize; ++m) {
              for (Vertex u = 0; u < c.game->num_vertices(); ++u) {
                if (c.game->owner(u) == opp) {
                  os << " (" << m << "," << c.game->name_of(u) << ")->e"
                     << tau.action(m, u) << "/m" << tau.update(m, u);
                }
              }
            }
            os << "\n";
            std::cerr << os.str();
          }
          return;
        }
      }
    }
  }
  rep.certified = true;
}

CaseReport run_case(const std::string& family, std::uint64_t seed,
                    const FamilyCheckOptions& opts) {
  CaseReport rep;
  BuiltCase c = build_case(family, seed);

  if (!(c.got.w1 == c.want.w1) || !(c.got.w2 == c.want.w2)) {
    rep.regionMismatch = true;
    rep.issue = "region mismatch (" + region_diff(*c.game, c.got, c.want) + ")";
    return rep;
  }
  VertexSet both = c.got.w1 & c.got.w2;
  VertexSet either = c.got.w1 | c.got.w2;
  if (both.count() != 0 || !(either == VertexSet::all(c.game->num_vertices()))) {
    rep.invariantViolation = true;
    rep.issue = "regions do not partition the vertices";
    return rep;
  }
  if (c.w1TwoClosed && !two_closed(*c.game, c.got.w1)) {
    rep.invariantViolation = true;
    rep.issue = "W1 is not closed against the opponent";
    return rep;
  }
  if (c.w2OneClosed && !one_closed(*c.game, c.got.w2)) {
    rep.invariantViolation = true;
    rep.issue = "W2 is not closed against the opponent";
    return rep;
  }

  if (opts.certifyStrategies && c.haveStrategies &&
      c.game->num_vertices() <= opts.certifyMaxVertices) {
    std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dull + 99);
    certify_case(c, rng, opts, rep);
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& known_families() {
  static const std::vector<std::string> fams = {
      "icw",       "gd",           "wmp-safe",      "wmp-reach",
      "wmp-gen-reach", "wmp-buchi", "wmp-gen-buchi", "wmp-cobuchi",
      "wmp-single",    "isl",       "intersection",  "dnf",
      "cnf"};
  return fams;
}

FamilyOutcome check_family(const std::string& family, const FamilyCheckOptions& opts) {
  bool knownName = false;
  for (const std::string& f : known_families()) knownName |= f == family;
  if (!knownName) throw Error("unknown family '" + family + "'");

  FamilyOutcome out;
  out.family = family;
  int threads = opts.threads > 0
                    ? opts.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads > opts.count) threads = opts.count > 0 ? opts.count : 1;

  std::mutex mu;
  int firstIssueIndex = opts.count;
  auto worker = [&](int tid) {
    FamilyOutcome local;
    int localFirst = opts.count;
    std::string localIssue;
    for (int i = tid; i < opts.count; i += threads) {
      CaseReport rep = run_case(family, opts.baseSeed + i, opts);
      ++local.instances;
      local.regionMismatches += rep.regionMismatch;
      local.invariantViolations += rep.invariantViolation;
      local.strategyFailures += rep.strategyFailure;
      local.certifiedInstances += rep.certified;
      local.opponentPlays += rep.plays;
      if (!rep.issue.empty() && i < localFirst) {
        localFirst = i;
        localIssue = "seed " + std::to_string(opts.baseSeed + i) + ": " + rep.issue;
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    out.instances += local.instances;
    out.regionMismatches += local.regionMismatches;
    out.invariantViolations += local.invariantViolations;
    out.strategyFailures += local.strategyFailures;
    out.certifiedInstances += local.certifiedInstances;
    out.opponentPlays += local.opponentPlays;
    if (localFirst < firstIssueIndex) {
      firstIssueIndex = localFirst;
      out.firstIssue = localIssue;
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (std::thread& th : pool) th.join();
  return out;
}

}  // namespace hetgames
