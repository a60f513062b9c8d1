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

#ifndef HETGAMES_CHECK_HPP
#define HETGAMES_CHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hetgames/oracle.hpp"

namespace hetgames {

struct FamilyCheckOptions {
  int count = 500;
  std::uint64_t baseSeed = 1;
  bool certifyStrategies = false;  // opponent tournaments on small instances
  int sampledOpponents = 200;      // per certified strategy
  int certifyMaxVertices = 5;
  int threads = 0;  // 0 picks the hardware concurrency
};

struct FamilyOutcome {
  std::string family;
  int instances = 0;
  int regionMismatches = 0;
  int invariantViolations = 0;  // determinacy or closure breaches
  int certifiedInstances = 0;
  long long opponentPlays = 0;
  int strategyFailures = 0;
  std::string firstIssue;

  bool ok() const {
    return regionMismatches == 0 && invariantViolations == 0 && strategyFailures == 0;
  }
};

/** Solver families with an independent reference answer. */
const std::vector<std::string>& known_families();

/**
 * Runs seeded random instances of one solver family against its reference
 * (depth-limited search for the value solvers, the tracker-product reference
 * for everything else), checking region equality plus determinacy and, where
 * the objective supports it, closure of the winning sets.  With
 * certifyStrategies set, extracted machines additionally face exhaustive
 * memoryless and sampled finite-memory opponents on small instances.
 */
FamilyOutcome check_family(const std::string& family, const FamilyCheckOptions& opts = {});

}  // namespace hetgames

#endif  // HETGAMES_CHECK_HPP
