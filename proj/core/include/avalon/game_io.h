// Copyright 2026 The Avalon Assassin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AVALON_GAME_IO_H_
#define AVALON_GAME_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "avalon/game.h"

namespace avalon {

enum class Strictness { kStrict, kLenient };

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

// A validated, canonicalized sequence of games.
struct GameStream {
  std::vector<GameLog> games;
  std::string source;
  std::vector<ParseIssue> parse_errors;
};

// Parses line-delimited JSON, one canonical game record per line. Blank lines
// are ignored. Strict mode throws SchemaError (or Error(kInvalidGame)) on the
// first bad line; lenient mode records it and moves on.
GameStream ParseGameStream(std::string_view text, Strictness strictness,
                           std::string source = "<memory>");
GameStream ReadGameStream(const std::filesystem::path& path,
                          Strictness strictness);

// Writes one compact JSON object per line with the documented key order.
// Returns the number of bytes written.
std::size_t WriteGameStream(const GameStream& stream, std::ostream& out);
std::size_t WriteGameStream(const GameStream& stream,
                            const std::filesystem::path& path);

GameStream FilterAssassinationEligible(const GameStream& stream);

// Single-record codecs. Parsing does not validate or canonicalize.
std::string GameToJson(const GameLog& log);
GameLog GameFromJson(std::string_view text, std::size_t line = 0);
std::string ViewToJson(const AssassinView& view);
AssassinView ViewFromJson(std::string_view text);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view data);

}  // namespace avalon

#endif  // AVALON_GAME_IO_H_
