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

#include "avalon/simulator.h"

#include <sstream>

#include "avalon/error.h"
#include "avalon/evaluation.h"
#include "gtest/gtest.h"

namespace avalon {
namespace {

std::string Serialize(const GameStream& s) {
  std::ostringstream out;
  WriteGameStream(s, out);
  return out.str();
}

TEST(SimulateGame, Deterministic) {
  SimConfig config;
  config.seed = 1;
  EXPECT_EQ(SimulateGame(config, 0), SimulateGame(config, 0));
  EXPECT_NE(SimulateGame(config, 0), SimulateGame(config, 1));
  EXPECT_EQ(SimulateGame(config, 7).game_id, "sim-1-7");
}

TEST(SimulateGame, AlwaysValid) {
  SimConfig config;
  config.seed = 2;
  config.merlin_leak = 0.6;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const GameLog g = SimulateGame(config, i);
    ASSERT_TRUE(ValidateGame(g).empty()) << i;
  }
}

TEST(SimulateGame, FirstLeaderVaries) {
  SimConfig config;
  std::array<int, kNumPlayers> seen{};
  for (std::uint64_t i = 0; i < 200; ++i) {
    ++seen[SimulateGame(config, i).first_leader];
  }
  for (int c : seen) EXPECT_GT(c, 0);
}

TEST(SimulateGame, NoSabotageResistanceSweeps) {
  SimConfig config;
  config.seed = 4;
  config.spy_sabotage = 0.0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const GameLog g = SimulateGame(config, i);
    EXPECT_EQ(g.SucceededMissions(), 3);
    EXPECT_EQ(g.FailedMissions(), 0);
    EXPECT_TRUE(g.assassination.has_value());
  }
}

TEST(SimulateGame, FullLeakMerlinProposesCleanTeams) {
  SimConfig config;
  config.seed = 5;
  config.merlin_leak = 1.0;
  int merlin_proposals = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const GameLog g = SimulateGame(config, i);
    const Seat merlin = g.SeatOf(Role::kMerlin);
    const SeatMask spies = g.SpyMask();
    for (const Mission& m : g.missions) {
      for (const Proposal& p : m.proposals) {
        if (p.leader != merlin) continue;
        ++merlin_proposals;
        for (Seat s : p.team) EXPECT_FALSE(spies[s]);
      }
    }
  }
  EXPECT_GT(merlin_proposals, 100);
}

TEST(SimulateDataset, Empty) {
  SimConfig config;
  EXPECT_TRUE(SimulateDataset(config).games.empty());
}

TEST(SimulateDataset, ByteIdenticalAndJobIndependent) {
  SimConfig config;
  config.seed = 9;
  config.num_games = 400;
  config.eligible_only = true;
  const std::string a = Serialize(SimulateDataset(config, 1));
  EXPECT_EQ(a, Serialize(SimulateDataset(config, 1)));
  EXPECT_EQ(a, Serialize(SimulateDataset(config, 4)));
}

TEST(SimulateDataset, EligibleOnly) {
  SimConfig config;
  config.seed = 10;
  config.num_games = 250;
  config.eligible_only = true;
  const GameStream s = SimulateDataset(config);
  EXPECT_EQ(s.games.size(), 250u);
  EXPECT_EQ(FilterAssassinationEligible(s).games.size(), 250u);
  for (const GameLog& g : s.games) EXPECT_EQ(g.first_leader, 0);
}

TEST(SimulateDataset, RandomBaselineNearOneThird) {
  SimConfig config;
  config.seed = 11;
  config.num_games = 10000;
  config.eligible_only = true;
  const GameStream s = SimulateDataset(config);
  EXPECT_NEAR(BaselineRandom(s, 11), 1.0 / 3.0, 0.015);
  // The recorded shots are uniform too.
  EXPECT_NEAR(*BaselineHuman(s), 1.0 / 3.0, 0.015);
}

TEST(SimConfig, RejectsBadProbabilities) {
  SimConfig config;
  config.merlin_leak = 1.5;
  EXPECT_THROW(config.Validate(), Error);
  config.merlin_leak = 0.0;
  config.num_games = -1;
  EXPECT_THROW(config.Validate(), Error);
}

}  // namespace
}  // namespace avalon
