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

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hetgames/boolean.hpp"
#include "hetgames/check.hpp"
#include "hetgames/io.hpp"
#include "hetgames/window.hpp"

namespace {

using namespace hetgames;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitDivergence = 4;

Vertex vertex_by_name(const GameStructure& g, const std::string& name) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.name_of(v) == name) return v;
  }
  throw IoError("no vertex named '" + name + "'");
}

void print_region(const GameStructure& g, const char* label, const VertexSet& s) {
  std::cout << label << ':';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (s.test(v)) std::cout << ' ' << g.name_of(v);
  }
  std::cout << '\n';
}

int cmd_solve(const std::string& gamePath, const std::string& objText,
              const std::string& fromName, const std::string& dotPath,
              long long budget) {
  GameStructure g = load_game(gamePath);
  ObjectiveExpr expr = parse_objective(objText, g.dimension());
  SolveOptions opts;
  opts.budget = budget;
  DispatchResult r = dispatch(g, expr, opts);
  std::cout << "route: " << r.route << '\n';
  print_region(g, "W1", r.regions.w1);
  print_region(g, "W2", r.regions.w2);
  if (!fromName.empty()) {
    Vertex v = vertex_by_name(g, fromName);
    std::cout << g.name_of(v) << ": WIN "
              << (r.regions.w1.test(v) ? "P1" : "P2") << '\n';
  }
  if (!dotPath.empty()) {
    std::ofstream out(dotPath);
    if (!out) throw IoError("cannot write '" + dotPath + "'");
    export_dot(g, &r.regions, &r.s1, &r.s2, out);
  }
  return kExitOk;
}

int cmd_strategy(const std::string& gamePath, const std::string& objText,
                 const std::string& s1Path, const std::string& s2Path,
                 long long budget) {
  GameStructure g = load_game(gamePath);
  ObjectiveExpr expr = parse_objective(objText, g.dimension());
  SolveOptions opts;
  opts.budget = budget;
  DispatchResult r = dispatch(g, expr, opts);
  if (!s1Path.empty()) {
    save_strategy(g, r.s1, s1Path);
  } else {
    write_strategy(g, r.s1, std::cout);
  }
  if (!s2Path.empty()) {
    save_strategy(g, r.s2, s2Path);
  } else {
    write_strategy(g, r.s2, std::cout);
  }
  return kExitOk;
}

int cmd_simulate(const std::string& gamePath, const std::string& s1Path,
                 const std::string& s2Path, const std::string& fromName,
                 const std::string& objText) {
  GameStructure g = load_game(gamePath);
  MooreStrategy s1 = load_strategy(g, s1Path);
  MooreStrategy s2 = load_strategy(g, s2Path);
  if (s1.owner != Player::P1 || s2.owner != Player::P2) {
    throw IoError("strategy files must provide a P1 machine then a P2 machine");
  }
  Vertex v0 = vertex_by_name(g, fromName);
  Lasso l = play_out(g, v0, s1, s2);
  std::cout << "stem:";
  for (Vertex v : l.stem) std::cout << ' ' << g.name_of(v);
  std::cout << "\nperiod:";
  for (Vertex v : l.period) std::cout << ' ' << g.name_of(v);
  std::cout << '\n';
  if (!objText.empty()) {
    ObjectiveExpr expr = parse_objective(objText, g.dimension());
    Verdict verdict = evaluate(g, l, expr);
    std::cout << "winner: " << (verdict.overall ? "P1" : "P2") << '\n';
  }
  return kExitOk;
}

int cmd_oracle_check(const std::string& family, int seeds, std::uint64_t baseSeed,
                     bool certify, int threads) {
  FamilyCheckOptions opts;
  opts.count = seeds;
  opts.baseSeed = baseSeed;
  opts.certifyStrategies = certify;
  opts.threads = threads;
  std::vector<std::string> fams;
  if (family == "all") {
    fams = known_families();
  } else {
    fams.push_back(family);
  }
  bool allOk = true;
  for (const std::string& f : fams) {
    FamilyOutcome out = check_family(f, opts);
    std::cout << f << ": " << out.instances << " instances";
    if (certify) {
      std::cout << ", " << out.certifiedInstances << " certified ("
                << out.opponentPlays << " plays)";
    }
    if (out.ok()) {
      std::cout << ", ok\n";
    } else {
      std::cout << ", FAILED: " << out.firstIssue << '\n';
      allOk = false;
    }
  }
  return allOk ? kExitOk : kExitDivergence;
}

int cmd_bench(const std::vector<int>& sizes, const std::vector<int>& lambdas,
              Weight maxW, const std::string& csvPath) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!csvPath.empty()) {
    file.open(csvPath);
    if (!file) throw IoError("cannot write '" + csvPath + "'");
    out = &file;
  }
  *out << "vertices,edges,lambda,maxw,seconds\n";
  for (int n : sizes) {
    for (int lambda : lambdas) {
      RandomGameParams p;
      p.vertices = n;
      p.maxOutDegree = 4;
      p.dimension = 1;
      p.maxAbsWeight = maxW;
      GameStructure g = random_game(0xbe9c5ull * n + lambda, p);
      SolveOptions opts;
      opts.strategies = false;
      auto t0 = std::chrono::steady_clock::now();
      solve_wmp_single(Arena(g), lambda, opts);
      auto t1 = std::chrono::steady_clock::now();
      double secs = std::chrono::duration<double>(t1 - t0).count();
      *out << n << ',' << g.num_edges() << ',' << lambda << ',' << maxW << ','
           << secs << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for multi-weighted two-player games"};
  app.require_subcommand(1);

  std::string gamePath, objText, fromName, dotPath, s1Path, s2Path;
  long long budget = kDefaultNodeBudget;

  CLI::App* solve = app.add_subcommand("solve", "Compute winning regions");
  solve->add_option("game", gamePath, "game file")->required();
  solve->add_option("--obj", objText, "objective expression")->required();
  solve->add_option("--from", fromName, "report the winner at this vertex");
  solve->add_option("--dot", dotPath, "write a Graphviz view");
  solve->add_option("--budget", budget, "product node budget");

  CLI::App* strat = app.add_subcommand("strategy", "Emit winning machines");
  strat->add_option("game", gamePath, "game file")->required();
  strat->add_option("--obj", objText, "objective expression")->required();
  strat->add_option("--s1", s1Path, "output file for the P1 machine");
  strat->add_option("--s2", s2Path, "output file for the P2 machine");
  strat->add_option("--budget", budget, "product node budget");

  CLI::App* sim = app.add_subcommand("simulate", "Play two machines against each other");
  sim->add_option("game", gamePath, "game file")->required();
  sim->add_option("--s1", s1Path, "P1 machine file")->required();
  sim->add_option("--s2", s2Path, "P2 machine file")->required();
  sim->add_option("--from", fromName, "start vertex")->required();
  sim->add_option("--obj", objText, "objective to judge the lasso");

  std::string family = "all";
  int seeds = 100;
  std::uint64_t baseSeed = 1;
  bool certify = false;
  int threads = 0;
  CLI::App* oc = app.add_subcommand("oracle-check",
                                    "Randomized equivalence against the reference solver");
  oc->add_option("--family", family, "solver family or 'all'");
  oc->add_option("--seeds", seeds, "instances per family");
  oc->add_option("--base-seed", baseSeed, "first seed");
  oc->add_flag("--certify", certify, "also run opponent tournaments");
  oc->add_option("--threads", threads, "worker threads (0 = auto)");

  std::vector<int> sizes{50, 100, 200};
  std::vector<int> lambdas{2, 4, 8, 16};
  Weight maxW = 4;
  std::string csvPath;
  CLI::App* bench = app.add_subcommand("bench", "Wall-time sweep as CSV");
  bench->add_option("--sizes", sizes, "vertex counts");
  bench->add_option("--lambdas", lambdas, "window lengths");
  bench->add_option("--maxw", maxW, "largest absolute weight");
  bench->add_option("--csv", csvPath, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(gamePath, objText, fromName, dotPath, budget);
    if (strat->parsed()) return cmd_strategy(gamePath, objText, s1Path, s2Path, budget);
    if (sim->parsed()) return cmd_simulate(gamePath, s1Path, s2Path, fromName, objText);
    if (oc->parsed()) return cmd_oracle_check(family, seeds, baseSeed, certify, threads);
    if (bench->parsed()) return cmd_bench(sizes, lambdas, maxW, csvPath);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ObjectiveSyntaxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BadDimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ProductTooLargeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
