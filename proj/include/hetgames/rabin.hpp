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

#include "hetgames/qualitative.hpp"

namespace hetgames {

/** A play satisfies the pair when Inf avoids E and meets F. */
struct RabinPair {
  VertexSet E, F;
};

struct RabinCondition {
  std::vector<RabinPair> pairs;
};

/**
 * Solves the game where `rabinPlayer` wants some pair satisfied. The Rabin
 * player wins memoryless; the opponent gets a finite-memory machine that
 * rotates over the ways the condition can fail.
 */
SolveResult solve_rabin(const Arena& a, const RabinCondition& cond,
                        Player rabinPlayer = Player::P1);

}  // namespace hetgames
