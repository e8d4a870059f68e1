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

#include <sstream>

#include "avalon/error.h"
#include "avalon/simulator.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace avalon {
namespace {

using ::avalon::testing::FixtureGame;
using ::avalon::testing::FixtureGames;
using ::avalon::testing::FixturePath;
using ::avalon::testing::RotateRaw;
using ::avalon::testing::TempDir;

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Parse, ThreeValidLines) {
  const auto lines = Lines(ReadFile(FixturePath("games.jsonl")));
  const std::string text = lines[0] + "\n" + lines[1] + "\n\n" + lines[2] + "\n";
  const GameStream s = ParseGameStream(text, Strictness::kStrict);
  EXPECT_EQ(s.games.size(), 3u);
  EXPECT_TRUE(s.parse_errors.empty());
}

TEST(Parse, MissingRoles) {
  const auto lines = Lines(ReadFile(FixturePath("games.jsonl")));
  std::string broken = lines[1];
  const auto at = broken.find("\"roles\"");
  broken.replace(at, 7, "\"rolez\"");
  const std::string text = lines[0] + "\n" + broken + "\n" + lines[2] + "\n";

  const GameStream lenient = ParseGameStream(text, Strictness::kLenient);
  EXPECT_EQ(lenient.games.size(), 2u);
  ASSERT_EQ(lenient.parse_errors.size(), 1u);
  EXPECT_EQ(lenient.parse_errors[0].line, 2u);

  try {
    ParseGameStream(text, Strictness::kStrict);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "roles");
  }
}

TEST(Parse, MalformedJson) {
  EXPECT_THROW(ParseGameStream("{\"game_id\": \n", Strictness::kStrict),
               SchemaError);
  const GameStream s = ParseGameStream("not json\n", Strictness::kLenient);
  EXPECT_TRUE(s.games.empty());
  EXPECT_EQ(s.parse_errors.size(), 1u);
}

TEST(Parse, WrongTypeNamesField) {
  const auto lines = Lines(ReadFile(FixturePath("games.jsonl")));
  std::string broken = lines[0];
  broken.replace(broken.find("\"first_leader\":0"), 16, "\"first_leader\":\"x\"");
  try {
    ParseGameStream(broken, Strictness::kStrict);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "first_leader");
  }
}

TEST(Parse, InvalidGameSkippedWhenLenient) {
  GameLog bad = FixtureGame("G1");
  bad.missions[0].proposals[0].votes[0] = Vote::kReject;
  const std::string text =
      GameToJson(FixtureGame("G1")) + "\n" + GameToJson(bad) + "\n";
  const GameStream s = ParseGameStream(text, Strictness::kLenient);
  ASSERT_EQ(s.games.size(), 1u);
  ASSERT_EQ(s.parse_errors.size(), 1u);
  for (const GameLog& g : s.games) EXPECT_TRUE(ValidateGame(g).empty());
  EXPECT_THROW(ParseGameStream(text, Strictness::kStrict), Error);
}

TEST(Parse, CanonicalizesRawSeats) {
  const GameLog raw = RotateRaw(FixtureGame("G4"), 3);
  const GameStream s = ParseGameStream(GameToJson(raw), Strictness::kStrict);
  ASSERT_EQ(s.games.size(), 1u);
  EXPECT_EQ(s.games[0], FixtureGame("G4"));
}

TEST(Write, FixtureFileRoundTripsByteForByte) {
  const std::string original = ReadFile(FixturePath("games.jsonl"));
  const GameStream s = ParseGameStream(original, Strictness::kStrict);
  std::ostringstream out;
  const std::size_t bytes = WriteGameStream(s, out);
  EXPECT_EQ(out.str(), original);
  EXPECT_EQ(bytes, original.size());
}

TEST(Write, EmptyStreamWritesNothing) {
  std::ostringstream out;
  EXPECT_EQ(WriteGameStream(GameStream{}, out), 0u);
  EXPECT_TRUE(out.str().empty());
}

TEST(Write, OneGameOneLine) {
  GameStream s;
  s.games.push_back(FixtureGame("G1"));
  std::ostringstream out;
  WriteGameStream(s, out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Write, KeyOrder) {
  const std::string json = GameToJson(FixtureGame("G1"));
  std::size_t last = 0;
  for (const char* key : {"\"game_id\"", "\"num_players\"", "\"first_leader\"",
                          "\"roles\"", "\"missions\"", "\"winner\"",
                          "\"assassination\""}) {
    const std::size_t at = json.find(key);
    ASSERT_NE(at, std::string::npos) << key;
    EXPECT_GT(at, last == 0 ? 0 : last) << key;
    last = at;
  }
  EXPECT_NE(GameToJson(FixtureGame("G2")).find("\"assassination\":null"),
            std::string::npos);
}

TEST(Write, SimulatedThousandRoundTrip) {
  SimConfig config;
  config.seed = 3;
  config.num_games = 1000;
  const GameStream s = SimulateDataset(config);
  TempDir dir;
  WriteGameStream(s, dir / "g.jsonl");
  const GameStream back = ReadGameStream(dir / "g.jsonl", Strictness::kStrict);
  ASSERT_EQ(back.games.size(), s.games.size());
  for (std::size_t i = 0; i < s.games.size(); ++i) {
    EXPECT_EQ(back.games[i], s.games[i]);
  }
}

TEST(Filter, KeepsEligibleInOrder) {
  GameStream s;
  s.games = FixtureGames();
  const GameStream f = FilterAssassinationEligible(s);
  std::vector<std::string> expected;
  for (const GameLog& g : s.games) {
    if (g.SucceededMissions() == 3 && g.assassination) {
      expected.push_back(g.game_id);
    }
  }
  std::vector<std::string> got;
  for (const GameLog& g : f.games) got.push_back(g.game_id);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(got[0], "G1");
  EXPECT_EQ(FilterAssassinationEligible(f).games, f.games);
}

TEST(Filter, NoSabotageMeansAllEligible) {
  SimConfig config;
  config.seed = 21;
  config.num_games = 300;
  config.spy_sabotage = 0.0;
  const GameStream s = SimulateDataset(config);
  EXPECT_EQ(FilterAssassinationEligible(s).games.size(), 300u);
}

TEST(Io, MissingFile) {
  try {
    ReadGameStream("/nonexistent/avalon.jsonl", Strictness::kStrict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(ViewJson, RoundTrip) {
  AssassinView v = MakeAssassinView(FixtureGame("G4"));
  EXPECT_EQ(ViewFromJson(ViewToJson(v)), v);
  v.missions.resize(2);
  EXPECT_EQ(ViewFromJson(ViewToJson(v)), v);
  EXPECT_EQ(ViewToJson(v).find("Merlin"), std::string::npos);
}

}  // namespace
}  // namespace avalon
