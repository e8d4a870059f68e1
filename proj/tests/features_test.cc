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

#include "avalon/features.h"

#include "avalon/error.h"
#include "avalon/simulator.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace avalon {
namespace {

using ::avalon::testing::FixtureGame;
using ::avalon::testing::FixtureGames;
using ::avalon::testing::FixturePath;
using ::avalon::testing::RotateRaw;

struct Expected {
  std::string game_id;
  int label = 0;
  StatTable stats{};
  StatTable stats_strict{};
  std::vector<double> general;
};

StatTable ToTable(const nlohmann::json& rows) {
  StatTable t{};
  for (int s = 0; s < kNumPlayers; ++s) {
    for (int f = 0; f < kNumStats; ++f) t[s][f] = rows[s][f].get<int>();
  }
  return t;
}

const std::vector<Expected>& Oracle() {
  static const std::vector<Expected> cases = [] {
    std::vector<Expected> out;
    for (const auto& j :
         nlohmann::json::parse(ReadFile(FixturePath("expected_features.json")))) {
      Expected e;
      e.game_id = j["game_id"];
      e.label = j["label"];
      e.stats = ToTable(j["stats"]);
      e.stats_strict = ToTable(j["stats_strict_f3"]);
      for (const auto& v : j["general"]) e.general.push_back(v.get<int>());
      out.push_back(std::move(e));
    }
    return out;
  }();
  return cases;
}

std::vector<GameLog> SimulatedGames(std::uint64_t seed, int n, double leak) {
  SimConfig config;
  config.seed = seed;
  config.num_games = n;
  config.merlin_leak = leak;
  return SimulateDataset(config).games;
}

TEST(Oracle, CoversEveryFixture) {
  ASSERT_EQ(Oracle().size(), FixtureGames().size());
  EXPECT_GE(Oracle().size(), 20u);
}

TEST(Oracle, StatTablesMatch) {
  for (const Expected& e : Oracle()) {
    const AssassinView v = MakeAssassinView(FixtureGame(e.game_id));
    EXPECT_EQ(ComputeStatTable(v), e.stats) << e.game_id;
    EXPECT_EQ(ComputeStatTable(v, FullCleanMode::kAllResistance),
              e.stats_strict)
        << e.game_id;
  }
}

TEST(Oracle, GeneralTensorsMatch) {
  for (const Expected& e : Oracle()) {
    const GeneralFeatures f = MakeGeneralFeatures(FixtureGame(e.game_id));
    EXPECT_EQ(f.values, e.general) << e.game_id;
    EXPECT_EQ(f.label, e.label) << e.game_id;
  }
}

TEST(Oracle, EngineeredVectorsMatchForEverySubset) {
  for (const Expected& e : Oracle()) {
    const GameLog& g = FixtureGame(e.game_id);
    for (std::uint16_t bits = 1; bits < 512; bits += 37) {
      const StatSubset subset = StatSubset::FromBits(bits);
      const EngineeredFeatures f = MakeEngineeredFeatures(g, subset);
      std::vector<double> expected;
      for (int s = 0; s < kNumPlayers; ++s) {
        for (Stat st : subset.stats()) {
          expected.push_back(e.stats[s][static_cast<int>(st)]);
        }
      }
      EXPECT_EQ(f.values, expected) << e.game_id << " " << subset.ToString();
      EXPECT_EQ(f.label, e.label);
    }
  }
}

TEST(Engineered, G1DefaultVector) {
  const EngineeredFeatures f = MakeEngineeredFeatures(FixtureGame("G1"));
  const std::vector<double> expected = {5, 2, 1, 1, 6, 0, 0, 0, 5, 1,
                                        0, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(f.values, expected);
  EXPECT_EQ(f.label, 1);
  EXPECT_EQ(f.values.size(), 20u);
}

TEST(Engineered, SingleCleanProposal) {
  AssassinView v;
  v.spy_seats = {3, 4};
  Mission m;
  m.index = 0;
  m.team_size = 2;
  Proposal p;
  p.leader = 0;
  p.team = {0, 1};
  p.votes = {Vote::kApprove, Vote::kApprove, Vote::kApprove, Vote::kReject,
             Vote::kReject};
  p.approved = true;
  m.proposals.push_back(p);
  v.missions.push_back(m);

  const StatTable t = ComputeStatTable(v);
  const int f1 = static_cast<int>(Stat::kCorrectVotes);
  const int f3 = static_cast<int>(Stat::kFirstCleanLeader);
  const std::array<double, 5> want_f1 = {1, 1, 1, 0, 0};
  const std::array<double, 5> want_f3 = {1, 0, 0, 0, 0};
  for (int s = 0; s < kNumPlayers; ++s) {
    EXPECT_EQ(t[s][f1], want_f1[s]) << s;
    EXPECT_EQ(t[s][f3], want_f3[s]) << s;
    EXPECT_EQ(EngineeredStat(v, s, Stat::kCorrectVotes), want_f1[s]);
  }
  // Seat 2 never led.
  EXPECT_EQ(EngineeredStat(v, 2, Stat::kCleanProposals), 0);
  EXPECT_EQ(EngineeredStat(v, 2, Stat::kFirstPickClean), 0);
}

TEST(Engineered, ZeroProposalsGiveZeros) {
  AssassinView v;
  v.spy_seats = {1, 2};
  const EngineeredFeatures f = MakeEngineeredFeatures(v, StatSubset::All());
  EXPECT_EQ(f.values, std::vector<double>(45, 0.0));
  EXPECT_FALSE(f.label.has_value());
}

TEST(Engineered, EmptySubsetRejected) {
  try {
    MakeEngineeredFeatures(FixtureGame("G1"), StatSubset{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptySubset);
  }
}

TEST(Engineered, NonCanonicalViewRejected) {
  const AssassinView raw = MakeAssassinView(RotateRaw(FixtureGame("G1"), 1));
  try {
    ComputeStatTable(raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonCanonical);
  }
}

TEST(Engineered, SpyRowsAreZero) {
  for (const GameLog& g : SimulatedGames(31, 300, 0.5)) {
    const StatTable t = ComputeStatTable(MakeAssassinView(g));
    const SeatMask spies = g.SpyMask();
    for (int s = 0; s < kNumPlayers; ++s) {
      if (!spies[s]) continue;
      for (double x : t[s]) ASSERT_EQ(x, 0.0);
    }
  }
}

TEST(Engineered, CountingIdentities) {
  for (const GameLog& g : SimulatedGames(32, 300, 0.3)) {
    const AssassinView v = MakeAssassinView(g);
    const StatTable t = ComputeStatTable(v);
    const SeatMask spies = g.SpyMask();
    const double total = static_cast<double>(v.ProposalCount());
    for (Seat s = 0; s < kNumPlayers; ++s) {
      if (spies[s]) continue;
      double dirty_led = 0, approve_on_rejected = 0;
      for (const Mission& m : v.missions) {
        for (const Proposal& p : m.proposals) {
          bool dirty = false;
          for (Seat x : p.team) dirty = dirty || spies[x];
          if (p.leader == s && dirty) ++dirty_led;
          if (!p.approved && p.votes[s] == Vote::kApprove) {
            ++approve_on_rejected;
          }
        }
      }
      const auto& r = t[s];
      EXPECT_EQ(r[7], r[1] + dirty_led);
      EXPECT_GE(r[4], r[5]);
      EXPECT_EQ(r[6] + r[8] + approve_on_rejected, total);
    }
  }
}

TEST(Engineered, RotationEquivariance) {
  for (const GameLog& g : FixtureGames()) {
    for (int shift = 1; shift < kNumPlayers; ++shift) {
      const GameLog c = Canonicalize(RotateRaw(g, shift));
      const auto a = MakeEngineeredFeatures(c, StatSubset::All());
      const auto b = MakeEngineeredFeatures(g, StatSubset::All());
      EXPECT_EQ(a.values, b.values);
      EXPECT_EQ(a.label, b.label);
      EXPECT_EQ(MakeGeneralFeatures(c).values, MakeGeneralFeatures(g).values);
    }
  }
}

TEST(Engineered, ViewAndLogAgree) {
  for (const GameLog& g : FixtureGames()) {
    const AssassinView v = MakeAssassinView(g);
    EXPECT_EQ(MakeEngineeredFeatures(v, StatSubset::All()).values,
              MakeEngineeredFeatures(g, StatSubset::All()).values);
    EXPECT_EQ(MakeGeneralFeatures(v).values, MakeGeneralFeatures(g).values);
  }
}

TEST(General, G1FirstSlot) {
  const auto f = MakeGeneralFeatures(FixtureGame("G1")).values;
  for (int c = 0; c < 4; ++c) {
    EXPECT_EQ(f[GeneralIndex(0, 0, 0, c)], 1.0);
    EXPECT_EQ(f[GeneralIndex(3, 0, 0, c)], -1.0);
  }
  for (int p = 0; p < kNumPlayers; ++p) {
    for (int q = 0; q < kMaxProposals; ++q) {
      for (int c = 0; c < 4; ++c) EXPECT_EQ(f[GeneralIndex(p, 4, q, c)], 0.0);
    }
  }
}

TEST(General, SlotStructure) {
  for (const GameLog& g : SimulatedGames(33, 200, 0.0)) {
    const auto f = MakeGeneralFeatures(g).values;
    ASSERT_EQ(f.size(), kGeneralDim);
    for (int m = 0; m < kMaxMissions; ++m) {
      for (int q = 0; q < kMaxProposals; ++q) {
        const bool happened =
            m < static_cast<int>(g.missions.size()) &&
            q < static_cast<int>(g.missions[m].proposals.size());
        int resistance = 0, zeros = 0;
        for (int p = 0; p < kNumPlayers; ++p) {
          for (int c = 0; c < 4; ++c) zeros += f[GeneralIndex(p, m, q, c)] == 0;
          resistance += f[GeneralIndex(p, m, q, 3)] == 1;
        }
        if (happened) {
          EXPECT_EQ(zeros, 0);
          EXPECT_EQ(resistance, 3);
        } else {
          EXPECT_EQ(zeros, 20);
        }
      }
    }
  }
}

TEST(StatSubset, ParseAndPrint) {
  const StatSubset s = StatSubset::Parse("f4,f1,f9");
  EXPECT_EQ(s.ToString(), "f1,f4,f9");
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(StatSubset::Default().ToString(), "f1,f2,f3,f4");
  EXPECT_THROW(StatSubset::Parse("f10"), Error);
  EXPECT_EQ(StatId(Stat::kOverruledRejects), "f9");
}

TEST(Schema, Ids) {
  EXPECT_EQ(EngineeredSchema().Id(), "engineered:f1,f2,f3,f4");
  EXPECT_EQ(EngineeredSchema().dim(), 20u);
  EXPECT_EQ(GeneralSchema().Id(), "general:5x5x5x4");
  EXPECT_EQ(GeneralSchema().dim(), 500u);
  FeatureSchema strict = EngineeredSchema();
  strict.full_clean = FullCleanMode::kAllResistance;
  EXPECT_NE(strict.Id(), EngineeredSchema().Id());
}

TEST(Dataset, CsvLayout) {
  std::vector<GameLog> games(FixtureGames().begin(), FixtureGames().begin() + 2);
  const Dataset d = BuildDataset(games, EngineeredSchema());
  const std::string csv = FeaturesCsv(d);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "s0_f1,s0_f2,s0_f3,s0_f4,s1_f1,s1_f2,s1_f3,s1_f4,s2_f1,s2_f2,"
            "s2_f3,s2_f4,s3_f1,s3_f2,s3_f3,s3_f4,s4_f1,s4_f2,s4_f3,s4_f4,"
            "label");
  EXPECT_NE(csv.find("\n5,2,1,1,6,0,0,0,5,1,0,1,0,0,0,0,0,0,0,0,1\n"),
            std::string::npos);
}

TEST(Dataset, JobIndependent) {
  const auto games = SimulatedGames(34, 300, 0.5);
  const Dataset a = BuildDataset(games, GeneralSchema(), 1);
  const Dataset b = BuildDataset(games, GeneralSchema(), 3);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.labels, b.labels);
}

}  // namespace
}  // namespace avalon
