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

#include "avalon/game_io.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "avalon/error.h"
#include "json_codec.h"

namespace avalon {

namespace {

nlohmann::json ParseJson(std::string_view text, std::size_t line) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = std::string("malformed JSON: ") + e.what();
    if (line > 0) msg = "line " + std::to_string(line) + ": " + msg;
    throw SchemaError(line, "<json>", msg);
  }
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

GameStream ParseGameStream(std::string_view text, Strictness strictness,
                           std::string source) {
  GameStream stream;
  stream.source = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (IsBlank(line)) continue;
    try {
      GameLog log = internal::GameFromJsonValue(ParseJson(line, line_no),
                                                line_no);
      const auto violations = ValidateGame(log);
      if (!violations.empty()) {
        const Violation& v = violations.front();
        throw SchemaError(line_no, v.location,
                          "line " + std::to_string(line_no) + ": game '" +
                              log.game_id + "' violates " + v.rule + " at " +
                              v.location + ": " + v.message);
      }
      stream.games.push_back(Canonicalize(log));
    } catch (const SchemaError& e) {
      if (strictness == Strictness::kStrict) throw;
      stream.parse_errors.push_back({line_no, e.what()});
    }
  }
  return stream;
}

GameStream ReadGameStream(const std::filesystem::path& path,
                          Strictness strictness) {
  return ParseGameStream(ReadFile(path), strictness, path.string());
}

std::size_t WriteGameStream(const GameStream& stream, std::ostream& out) {
  std::size_t bytes = 0;
  for (const GameLog& log : stream.games) {
    const std::string line = GameToJson(log);
    out << line << '\n';
    bytes += line.size() + 1;
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing game stream");
  return bytes;
}

std::size_t WriteGameStream(const GameStream& stream,
                            const std::filesystem::path& path) {
  std::ostringstream buffer;
  const std::size_t bytes = WriteGameStream(stream, buffer);
  WriteFile(path, buffer.str());
  return bytes;
}

GameStream FilterAssassinationEligible(const GameStream& stream) {
  GameStream out;
  out.source = stream.source;
  out.parse_errors = stream.parse_errors;
  for (const GameLog& log : stream.games) {
    if (IsAssassinationEligible(log)) out.games.push_back(log);
  }
  return out;
}

std::string GameToJson(const GameLog& log) {
  return internal::GameToJsonValue(log).dump();
}

GameLog GameFromJson(std::string_view text, std::size_t line) {
  return internal::GameFromJsonValue(ParseJson(text, line), line);
}

std::string ViewToJson(const AssassinView& view) {
  return internal::ViewToJsonValue(view).dump();
}

AssassinView ViewFromJson(std::string_view text) {
  return internal::ViewFromJsonValue(ParseJson(text, 0), 0);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

}  // namespace avalon
