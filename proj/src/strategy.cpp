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

#include "hetgames/strategy.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace hetgames {

MooreStrategy memoryless_strategy(const GameStructure& g, Player owner,
                                  std::vector<int> edgeOfVertex) {
  assert(static_cast<int>(edgeOfVertex.size()) == g.num_vertices());
  auto table = std::make_shared<std::vector<int>>(std::move(edgeOfVertex));
  MooreStrategy s;
  s.owner = owner;
  s.memorySize = 1;
  s.initialState = 0;
  s.update = [](long long, Vertex) { return 0ll; };
  s.action = [table](long long, Vertex v) { return (*table)[v]; };
  return s;
}

MooreStrategy lowest_edge_strategy(const GameStructure& g, Player owner) {
  std::vector<int> choice(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) choice[v] = g.out(v)[0];
  return memoryless_strategy(g, owner, std::move(choice));
}

MooreStrategy random_strategy(const GameStructure& g, Player owner, long long memorySize,
                              std::mt19937_64& rng) {
  assert(memorySize >= 1);
  const int n = g.num_vertices();
  auto upd = std::make_shared<std::vector<long long>>(memorySize * n);
  auto act = std::make_shared<std::vector<int>>(memorySize * n);
  std::uniform_int_distribution<long long> mdist(0, memorySize - 1);
  for (long long m = 0; m < memorySize; ++m) {
    for (Vertex v = 0; v < n; ++v) {
      (*upd)[m * n + v] = mdist(rng);
      const std::vector<int>& es = g.out(v);
      std::uniform_int_distribution<int> edist(0, static_cast<int>(es.size()) - 1);
      (*act)[m * n + v] = es[edist(rng)];
    }
  }
  MooreStrategy s;
  s.owner = owner;
  s.memorySize = memorySize;
  s.initialState = 0;
  s.update = [upd, n](long long m, Vertex v) { return (*upd)[m * n + v]; };
  s.action = [act, n](long long m, Vertex v) { return (*act)[m * n + v]; };
  return s;
}

TableStrategy explode(const GameStructure& g, const MooreStrategy& s, long long budget) {
  const int n = g.num_vertices();
  std::unordered_map<long long, long long> index;  // memory value -> dense id
  std::vector<long long> values;
  auto intern = [&](long long m) {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    long long id = static_cast<long long>(values.size());
    if (id >= budget) throw BudgetExceededError("strategy table exceeds the node budget");
    index.emplace(m, id);
    values.push_back(m);
    return id;
  };
  TableStrategy t;
  t.owner = s.owner;
  t.initialState = intern(s.initialState);
  for (std::size_t i = 0; i < values.size(); ++i) {
    long long m = values[i];
    t.update.emplace_back(n, 0);
    t.action.emplace_back(n, -1);
    for (Vertex v = 0; v < n; ++v) {
      t.update[i][v] = intern(s.update(m, v));
      if (g.owner(v) == s.owner) t.action[i][v] = s.action(m, v);
    }
  }
  t.states = static_cast<long long>(values.size());
  return t;
}

MooreStrategy from_table(const TableStrategy& t) {
  auto upd = std::make_shared<std::vector<std::vector<long long>>>(t.update);
  auto act = std::make_shared<std::vector<std::vector<int>>>(t.action);
  MooreStrategy s;
  s.owner = t.owner;
  s.memorySize = t.states;
  s.initialState = t.initialState;
  s.update = [upd](long long m, Vertex v) { return (*upd)[m][v]; };
  s.action = [act](long long m, Vertex v) { return (*act)[m][v]; };
  return s;
}

namespace {

struct PlayKey {
  Vertex v;
  long long m1, m2;
  bool operator==(const PlayKey&) const = default;
};

struct PlayKeyHash {
  std::size_t operator()(const PlayKey& k) const {
    std::size_t h = std::hash<long long>()(k.m1);
    h ^= std::hash<long long>()(k.m2) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<int>()(k.v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

Lasso play_out(const GameStructure& g, Vertex v0, const MooreStrategy& s1,
               const MooreStrategy& s2) {
  assert(s1.owner == Player::P1 && s2.owner == Player::P2);
  std::unordered_map<PlayKey, long long, PlayKeyHash> seen;
  std::vector<Vertex> vs;
  std::vector<int> es;
  Vertex v = v0;
  long long m1 = s1.initialState;
  long long m2 = s2.initialState;
  for (;;) {
    PlayKey key{v, m1, m2};
    auto it = seen.find(key);
    if (it != seen.end()) {
      long long t0 = it->second;
      Lasso l;
      l.stem.assign(vs.begin(), vs.begin() + t0);
      l.period.assign(vs.begin() + t0, vs.end());
      l.stemEdges.assign(es.begin(), es.begin() + t0);
      l.periodEdges.assign(es.begin() + t0, es.end());
      return l;
    }
    if (static_cast<long long>(vs.size()) >= kDefaultNodeBudget) {
      throw BudgetExceededError("play did not repeat within the step budget");
    }
    seen.emplace(key, static_cast<long long>(vs.size()));
    const MooreStrategy& turn = g.owner(v) == Player::P1 ? s1 : s2;
    int e = turn.action(g.owner(v) == Player::P1 ? m1 : m2, v);
    assert(e >= 0 && e < g.num_edges() && g.edge(e).src == v);
    vs.push_back(v);
    es.push_back(e);
    m1 = s1.update(m1, v);
    m2 = s2.update(m2, v);
    v = g.edge(e).dst;
  }
}

namespace {

bool compare_rel(Weight scaled, Rel rel) {
  switch (rel) {
    case Rel::Ge: return scaled >= 0;
    case Rel::Gt: return scaled > 0;
    case Rel::Le: return scaled <= 0;
    case Rel::Lt: return scaled < 0;
  }
  return false;
}

struct LeafEval {
  bool ok = false;
  std::optional<long long> badWindow;
};

LeafEval eval_leaf(const GameStructure& g, const Lasso& l, const AtomicObjective& a) {
  const long long S = static_cast<long long>(l.stem.size());
  const long long P = static_cast<long long>(l.period.size());
  const int d = a.dimension - 1;
  const long long b = a.threshold.den;
  const long long th = a.threshold.num;
  auto wAt = [&](long long t) { return g.edge(l.edge_at(t)).w[d]; };
  LeafEval r;
  if (a.measure == Measure::WMP) {
    // Periodicity: positions >= S repeat with period P.
    for (long long k = 0; k < S + P; ++k) {
      Weight tp = 0;
      bool good = false;
      for (int len = 1; len <= a.lambda; ++len) {
        tp += b * wAt(k + len - 1) - th;
        if (compare_rel(tp, a.rel)) {
          good = true;
          break;
        }
      }
      if (!good) {
        r.ok = false;
        r.badWindow = k;
        return r;
      }
    }
    r.ok = true;
    return r;
  }
  long long from = 0;
  if (a.measure == Measure::LimInf || a.measure == Measure::LimSup) from = S;
  bool lo = (a.measure == Measure::Inf || a.measure == Measure::LimInf);
  Weight val = wAt(from);
  for (long long t = from + 1; t < S + P; ++t) {
    Weight w = wAt(t);
    val = lo ? std::min(val, w) : std::max(val, w);
  }
  r.ok = compare_rel(b * val - th, a.rel);
  return r;
}

bool fold(const ObjectiveExpr& e, const std::vector<bool>& leafOk, int& next) {
  if (e.kind == ObjectiveExpr::Kind::Atom) return leafOk[next++];
  bool isAnd = e.kind == ObjectiveExpr::Kind::And;
  bool acc = isAnd;
  for (const ObjectiveExpr& k : e.kids) {
    bool v = fold(k, leafOk, next);
    acc = isAnd ? (acc && v) : (acc || v);
  }
  return acc;
}

}  // namespace

Verdict evaluate(const GameStructure& g, const Lasso& lasso, const ObjectiveExpr& e) {
  std::vector<const AtomicObjective*> ls = leaves_of(e);
  Verdict v;
  v.atomVerdicts.reserve(ls.size());
  for (const AtomicObjective* a : ls) {
    LeafEval le = eval_leaf(g, lasso, *a);
    v.atomVerdicts.push_back(le.ok);
    v.badWindowPosition.push_back(le.badWindow);
  }
  std::vector<bool> leafOk(v.atomVerdicts.begin(), v.atomVerdicts.end());
  int next = 0;
  v.overall = fold(e, leafOk, next);
  return v;
}

MemorylessEnumerator::MemorylessEnumerator(const GameStructure& g, Player p, long long budget)
    : g_(g), p_(p) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.owner(v) == p) owned_.push_back(v);
  }
  count_ = 1;
  for (Vertex v : owned_) {
    count_ *= static_cast<long long>(g.out(v).size());
    if (count_ > budget) {
      throw BudgetExceededError("memoryless strategy count exceeds the budget");
    }
  }
  choice_.assign(owned_.size(), 0);
}

std::optional<MooreStrategy> MemorylessEnumerator::next() {
  if (done_) return std::nullopt;
  std::vector<int> edgeOf(g_.num_vertices());
  for (Vertex v = 0; v < g_.num_vertices(); ++v) edgeOf[v] = g_.out(v)[0];
  for (std::size_t i = 0; i < owned_.size(); ++i) {
    edgeOf[owned_[i]] = g_.out(owned_[i])[choice_[i]];
  }
  MooreStrategy s = memoryless_strategy(g_, p_, std::move(edgeOf));
  // Odometer increment over per-vertex choices.
  std::size_t i = 0;
  for (; i < owned_.size(); ++i) {
    if (++choice_[i] < static_cast<int>(g_.out(owned_[i]).size())) break;
    choice_[i] = 0;
  }
  if (i == owned_.size()) done_ = true;
  return s;
}

void MemorylessEnumerator::rewind() {
  choice_.assign(owned_.size(), 0);
  done_ = false;
}

CertifyReport certify_region(const GameStructure& g, const ObjectiveExpr& e,
                             const VertexSet& w1, const VertexSet& w2,
                             const MooreStrategy& s1, const MooreStrategy& s2,
                             CertifyMode mode, int samples, int sampleMemory,
                             std::uint64_t seed) {
  CertifyReport report;
  auto check = [&](Vertex v, const MooreStrategy& mine, const MooreStrategy& opp,
                   bool expectWin, const std::string& desc) {
    const MooreStrategy& p1 = mine.owner == Player::P1 ? mine : opp;
    const MooreStrategy& p2 = mine.owner == Player::P2 ? mine : opp;
    Lasso l = play_out(g, v, p1, p2);
    bool won = evaluate(g, l, e).overall;
    ++report.playsChecked;
    if (won != expectWin) {
      report.ok = false;
      report.counterexamples.push_back({v, desc, std::move(l)});
    }
  };
  auto runSide = [&](const VertexSet& region, const MooreStrategy& mine, bool expectWin) {
    Player oppP = opponent(mine.owner);
    if (mode == CertifyMode::ExhaustiveMemoryless) {
      MemorylessEnumerator en(g, oppP);
      long long idx = 0;
      while (auto opp = en.next()) {
        for (Vertex v : region.elements()) {
          check(v, mine, *opp, expectWin,
                std::string(player_name(oppP)) + " memoryless #" + std::to_string(idx));
        }
        ++idx;
      }
    } else {
      std::mt19937_64 rng(seed);
      for (int i = 0; i < samples; ++i) {
        long long mem = 1 + static_cast<long long>(rng() % sampleMemory);
        MooreStrategy opp = random_strategy(g, oppP, mem, rng);
        for (Vertex v : region.elements()) {
          check(v, mine, opp, expectWin,
                std::string(player_name(oppP)) + " sampled #" + std::to_string(i));
        }
      }
    }
  };
  runSide(w1, s1, true);
  runSide(w2, s2, false);
  return report;
}

int lowest_staying(const GameStructure& g, const VertexSet& domain, Vertex v) {
  for (int e : g.out(v)) {
    if (domain.test(g.edge(e).dst)) return e;
  }
  return g.out(v)[0];
}

MooreStrategy build_switching_machine(const GameStructure& g, Player owner,
                                      std::vector<CompositePart> parts,
                                      std::function<int(int, Vertex)> partAfterArrival,
                                      std::vector<int> fallback) {
  (void)g;
  struct Ctx {
    std::vector<CompositePart> parts;
    std::vector<long long> base;
    std::function<int(int, Vertex)> next;
    std::vector<int> fallback;
    long long total = 1;

    std::pair<int, long long> decode(long long m) const {
      for (std::size_t i = parts.size(); i-- > 0;) {
        if (m >= base[i]) return {static_cast<int>(i), m - base[i]};
      }
      return {0, 0};
    }
    std::pair<int, long long> settle(long long m, Vertex v) const {
      auto [k, sub] = decode(m);
      int k2 = next(k, v);
      if (k2 != k) return {k2, parts[k2].sub.initialState};
      return {k, sub};
    }
  };
  auto ctx = std::make_shared<Ctx>();
  ctx->parts = std::move(parts);
  ctx->next = std::move(partAfterArrival);
  ctx->fallback = std::move(fallback);
  long long off = 0;
  for (const CompositePart& p : ctx->parts) {
    ctx->base.push_back(off);
    off += p.sub.memorySize;
  }
  ctx->total = std::max<long long>(off, 1);

  MooreStrategy s;
  s.owner = owner;
  s.memorySize = ctx->total;
  s.initialState = ctx->parts.empty() ? 0 : ctx->parts[0].sub.initialState;
  s.update = [ctx](long long m, Vertex v) {
    if (ctx->parts.empty()) return 0ll;
    auto [k, sub] = ctx->settle(m, v);
    const CompositePart& part = ctx->parts[k];
    sub = part.inner.test(v) ? part.sub.update(sub, v) : part.sub.initialState;
    return ctx->base[k] + sub;
  };
  s.action = [ctx](long long m, Vertex v) {
    if (ctx->parts.empty()) return ctx->fallback[v];
    auto [k, sub] = ctx->settle(m, v);
    const CompositePart& part = ctx->parts[k];
    if (part.inner.test(v)) return part.sub.action(sub, v);
    if (v < static_cast<int>(part.positional.size()) && part.positional[v] >= 0) {
      return part.positional[v];
    }
    return ctx->fallback[v];
  };
  return s;
}

}  // namespace hetgames
