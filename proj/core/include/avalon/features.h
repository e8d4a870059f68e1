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

#ifndef AVALON_FEATURES_H_
#define AVALON_FEATURES_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avalon/game.h"
#include "avalon/game_io.h"
#include "avalon/linalg.h"

namespace avalon {

// Per-seat statistics derived from the public vote history. A team is clean
// when it contains no spy seat.
enum class Stat : std::uint8_t {
  kCorrectVotes,        // f1: approved a clean team or rejected a dirty one
  kCleanProposals,      // f2: proposals led with a clean team
  kFirstCleanLeader,    // f3: led the first clean proposal of the game
  kFirstPickClean,      // f4: own first proposal was clean
  kApprovedMembership,  // f5: on the team of an approved proposal
  kSuccessfulMissions,  // f6: on the team of a succeeded mission
  kMajorityVotes,       // f7: vote matched the outcome
  kLeaderships,         // f8: proposals led
  kOverruledRejects,    // f9: rejected, but the team was approved anyway
};
inline constexpr int kNumStats = 9;

std::string StatId(Stat stat);  // "f1".."f9"
std::optional<Stat> ParseStatId(std::string_view id);

// Non-empty or empty set of statistics, stored as a bitmask so subsets order
// and compare cheaply. Iteration is always in f1..f9 order.
class StatSubset {
 public:
  constexpr StatSubset() = default;
  static constexpr StatSubset FromBits(std::uint16_t bits) {
    StatSubset s;
    s.bits_ = bits & 0x1ff;
    return s;
  }
  static StatSubset Of(std::initializer_list<Stat> stats);
  static StatSubset All() { return FromBits(0x1ff); }
  // {f1, f2, f3, f4}
  static StatSubset Default() { return FromBits(0x00f); }
  // Parses "f1,f2,f3"; throws Error(kInvalidArgument) on unknown ids.
  static StatSubset Parse(std::string_view text);

  bool Contains(Stat stat) const {
    return (bits_ >> static_cast<int>(stat)) & 1u;
  }
  int size() const;
  bool empty() const { return bits_ == 0; }
  std::uint16_t bits() const { return bits_; }
  std::vector<Stat> stats() const;
  std::string ToString() const;

  friend bool operator==(StatSubset, StatSubset) = default;

 private:
  std::uint16_t bits_ = 0;
};

// How f3 reads "first to propose the entirely correct team".
enum class FullCleanMode : std::uint8_t {
  kNoSpies,        // any team without spies
  kAllResistance,  // only three-seat teams made of the three resistance seats
};

enum class FeatureKind : std::uint8_t { kEngineered, kGeneral };

inline constexpr std::size_t kGeneralChannels = 4;
inline constexpr std::size_t kGeneralDim =
    kNumPlayers * kMaxMissions * kMaxProposals * kGeneralChannels;  // 500

struct FeatureSchema {
  FeatureKind kind = FeatureKind::kEngineered;
  StatSubset subset = StatSubset::Default();
  FullCleanMode full_clean = FullCleanMode::kNoSpies;

  std::size_t dim() const;
  // Short identifier, e.g. "engineered:f1,f2,f3,f4" or "general:5x5x5x4".
  std::string Id() const;
  std::vector<std::string> ColumnNames() const;
  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

FeatureSchema EngineeredSchema(StatSubset subset = StatSubset::Default());
FeatureSchema GeneralSchema();

// Flat index into the general tensor [player][mission][proposal][channel].
constexpr std::size_t GeneralIndex(int player, int mission, int proposal,
                                   int channel) {
  return ((static_cast<std::size_t>(player) * kMaxMissions + mission) *
              kMaxProposals +
          proposal) *
             kGeneralChannels +
         channel;
}

struct EngineeredFeatures {
  std::vector<double> values;  // seat-major, then statistic
  std::optional<Seat> label;
  StatSubset subset;
};

struct GeneralFeatures {
  std::vector<double> values;  // kGeneralDim entries in {-1, 0, 1}
  std::optional<Seat> label;
};

// All nine statistics for every seat; spy rows are zero.
using StatTable = std::array<std::array<double, kNumStats>, kNumPlayers>;
StatTable ComputeStatTable(const AssassinView& view,
                           FullCleanMode mode = FullCleanMode::kNoSpies);

// The view must be canonical (first leader = seat 0); otherwise
// Error(kNonCanonical) is thrown.
double EngineeredStat(const AssassinView& view, Seat seat, Stat stat,
                      FullCleanMode mode = FullCleanMode::kNoSpies);
EngineeredFeatures MakeEngineeredFeatures(
    const AssassinView& view, StatSubset subset = StatSubset::Default(),
    FullCleanMode mode = FullCleanMode::kNoSpies);
// Training form: label = Merlin seat.
EngineeredFeatures MakeEngineeredFeatures(
    const GameLog& log, StatSubset subset = StatSubset::Default(),
    FullCleanMode mode = FullCleanMode::kNoSpies);

GeneralFeatures MakeGeneralFeatures(const AssassinView& view);
GeneralFeatures MakeGeneralFeatures(const GameLog& log);

// Dispatches on schema.kind; used by training, evaluation and live advice.
std::vector<double> Featurize(const AssassinView& view,
                              const FeatureSchema& schema);

struct Dataset {
  Matrix x;
  std::vector<int> labels;          // Merlin seat
  std::vector<SeatMask> resistance;  // per-row legal targets
  FeatureSchema schema;

  std::size_t size() const { return labels.size(); }
};

// Featurizes every game; games must be canonical and valid.
Dataset BuildDataset(const std::vector<GameLog>& games,
                     const FeatureSchema& schema, int jobs = 1);

// Header = column ids, then "label"; one game per row.
std::string FeaturesCsv(const Dataset& data);

}  // namespace avalon

#endif  // AVALON_FEATURES_H_
