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

#pragma once

#include <string>

#include "hetgames/rabin.hpp"
#include "hetgames/window.hpp"

namespace hetgames {

/**
 * Intersection of normal-form atoms of any measure, solved on one tracker
 * product as generalized Büchi ∩ coBüchi. Strategies are lifted back to the
 * input game. Throws ProductTooLargeError through the product builder.
 */
SolveResult solve_intersection(const GameStructure& g,
                               const std::vector<AtomicObjective>& atoms,
                               const SolveOptions& opts = {});

/**
 * Disjunction of intersections (normal-form leaves). One tracker product over
 * all leaf dimensions, one progress counter and one Rabin pair per disjunct.
 */
SolveResult solve_dnf(const GameStructure& g, const ObjectiveExpr& expr,
                      const SolveOptions& opts = {});

/**
 * Conjunction of disjunctions (normal-form leaves). Solved through the
 * complemented tracker product from the opponent's side; regions swap back.
 */
SolveResult solve_cnf(const GameStructure& g, const ObjectiveExpr& expr,
                      const SolveOptions& opts = {});

struct DispatchResult {
  WinningRegions regions;
  MooreStrategy s1, s2;
  std::string route;  // which solving path ran, for logs and the CLI
};

/**
 * Normalizes the objective, picks the cheapest applicable solver and runs it:
 * pure settle/revisit intersections use the split-game solver, intersections
 * with one window atom try the fragment solver, remaining intersections and
 * disjunctions use the tracker products, and everything else distributes to
 * a disjunction first. Strategies act on the input game.
 */
DispatchResult dispatch(const GameStructure& g, const ObjectiveExpr& expr,
                        const SolveOptions& opts = {});

}  // namespace hetgames
