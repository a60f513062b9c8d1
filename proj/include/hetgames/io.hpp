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

#ifndef HETGAMES_IO_HPP
#define HETGAMES_IO_HPP

#include <iosfwd>
#include <string>

#include "hetgames/qualitative.hpp"
#include "hetgames/strategy.hpp"

namespace hetgames {

/**
 * Line-oriented game format:
 *   game <|V|> <n>
 *   v <name> <P1|P2>        (one per vertex, file order fixes the index)
 *   e <src> <dst> w1 .. wn  (vertex names or indices)
 * Blank lines and lines starting with '#' are skipped.
 * Throws ParseError (with the offending line) and IoError.
 */
GameStructure load_game(const std::string& path);
GameStructure read_game(std::istream& in);

void save_game(const GameStructure& g, const std::string& path);
void write_game(const GameStructure& g, std::ostream& out);

/**
 * Explicit machine table:
 *   strategy <P1|P2> <states> <initial>
 *   t <state> <vertex> <nextState> <edge>   (edge is -1 for opponent vertices)
 * Saving explodes the machine first, so only reachable states appear.
 */
void save_strategy(const GameStructure& g, const MooreStrategy& s, const std::string& path);
void write_strategy(const GameStructure& g, const MooreStrategy& s, std::ostream& out);
MooreStrategy load_strategy(const GameStructure& g, const std::string& path);
MooreStrategy read_strategy(const GameStructure& g, std::istream& in);

/**
 * Graphviz export. Winning regions become fill colors; strategy edges of the
 * respective winner are drawn bold. Either strategy pointer may be null.
 */
void export_dot(const GameStructure& g, const WinningRegions* regions,
                const MooreStrategy* s1, const MooreStrategy* s2, std::ostream& out);

}  // namespace hetgames

#endif  // HETGAMES_IO_HPP
