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

#include <algorithm>
#include <sstream>

#include "avalon/error.h"
#include "avalon/parallel.h"

namespace avalon {

namespace {

std::size_t Idx(Stat s) { return static_cast<std::size_t>(s); }

void RequireCanonical(Seat first_leader) {
  if (first_leader != 0) {
    throw Error(ErrorKind::kNonCanonical,
                "features require a canonical history (first_leader = 0), got " +
                    std::to_string(first_leader));
  }
}

void RequireValid(const AssassinView& view) {
  RequireCanonical(view.first_leader);
  if (auto v = ValidateView(view); !v.empty()) {
    throw Error(ErrorKind::kInvalidGame, "invalid history: " + v.front().rule +
                                             " at " + v.front().location +
                                             ": " + v.front().message);
  }
}

AssassinView ValidatedView(const GameLog& log) {
  RequireCanonical(log.first_leader);
  if (auto v = ValidateGame(log); !v.empty()) {
    throw Error(ErrorKind::kInvalidGame, "invalid game '" + log.game_id +
                                             "': " + v.front().rule + " at " +
                                             v.front().location);
  }
  return MakeAssassinView(log);
}

StatTable ComputeUnchecked(const AssassinView& view, FullCleanMode mode) {
  StatTable t{};
  const SeatMask spies = view.SpyMask();
  std::array<bool, kNumPlayers> has_led{};
  bool first_clean_seen = false;

  for (const Mission& mission : view.missions) {
    for (const Proposal& p : mission.proposals) {
      const bool clean = std::none_of(p.team.begin(), p.team.end(),
                                      [&](Seat s) { return spies[s]; });
      const bool full_clean =
          mode == FullCleanMode::kNoSpies
              ? clean
              : clean && p.team.size() == static_cast<std::size_t>(
                                              kNumPlayers - 2);
      auto& leader = t[p.leader];

      leader[Idx(Stat::kLeaderships)] += 1;
      if (clean) leader[Idx(Stat::kCleanProposals)] += 1;
      if (!has_led[p.leader]) {
        has_led[p.leader] = true;
        if (clean) leader[Idx(Stat::kFirstPickClean)] = 1;
      }
      if (full_clean && !first_clean_seen) {
        first_clean_seen = true;
        leader[Idx(Stat::kFirstCleanLeader)] = 1;
      }

      for (Seat s = 0; s < kNumPlayers; ++s) {
        const bool approve = p.votes[s] == Vote::kApprove;
        auto& row = t[s];
        if (approve == clean) row[Idx(Stat::kCorrectVotes)] += 1;
        if (approve == p.approved) row[Idx(Stat::kMajorityVotes)] += 1;
        if (!approve && p.approved) row[Idx(Stat::kOverruledRejects)] += 1;
      }
      if (p.approved) {
        for (Seat s : p.team) {
          t[s][Idx(Stat::kApprovedMembership)] += 1;
          if (mission.succeeded.value_or(false)) {
            t[s][Idx(Stat::kSuccessfulMissions)] += 1;
          }
        }
      }
    }
  }
  for (Seat s = 0; s < kNumPlayers; ++s) {
    if (spies[s]) t[s].fill(0.0);
  }
  return t;
}

EngineeredFeatures Assemble(const StatTable& table, StatSubset subset) {
  if (subset.empty()) {
    throw Error(ErrorKind::kEmptySubset, "feature subset must be non-empty");
  }
  EngineeredFeatures out;
  out.subset = subset;
  const auto stats = subset.stats();
  out.values.reserve(kNumPlayers * stats.size());
  for (Seat s = 0; s < kNumPlayers; ++s) {
    for (Stat stat : stats) out.values.push_back(table[s][Idx(stat)]);
  }
  return out;
}

GeneralFeatures GeneralUnchecked(const AssassinView& view) {
  GeneralFeatures out;
  out.values.assign(kGeneralDim, 0.0);
  const SeatMask spies = view.SpyMask();
  for (std::size_t m = 0; m < view.missions.size(); ++m) {
    const Mission& mission = view.missions[m];
    for (std::size_t q = 0; q < mission.proposals.size(); ++q) {
      const Proposal& p = mission.proposals[q];
      for (Seat s = 0; s < kNumPlayers; ++s) {
        const auto mi = static_cast<int>(m);
        const auto qi = static_cast<int>(q);
        out.values[GeneralIndex(s, mi, qi, 0)] = p.leader == s ? 1.0 : -1.0;
        out.values[GeneralIndex(s, mi, qi, 1)] = p.Contains(s) ? 1.0 : -1.0;
        out.values[GeneralIndex(s, mi, qi, 2)] =
            p.votes[s] == Vote::kApprove ? 1.0 : -1.0;
        out.values[GeneralIndex(s, mi, qi, 3)] = spies[s] ? -1.0 : 1.0;
      }
    }
  }
  return out;
}

}  // namespace

std::string StatId(Stat stat) {
  return "f" + std::to_string(static_cast<int>(stat) + 1);
}

std::optional<Stat> ParseStatId(std::string_view id) {
  if (id.size() != 2 || id[0] != 'f' || id[1] < '1' || id[1] > '9') {
    return std::nullopt;
  }
  return static_cast<Stat>(id[1] - '1');
}

StatSubset StatSubset::Of(std::initializer_list<Stat> stats) {
  std::uint16_t bits = 0;
  for (Stat s : stats) bits |= static_cast<std::uint16_t>(1u << Idx(s));
  return FromBits(bits);
}

StatSubset StatSubset::Parse(std::string_view text) {
  std::uint16_t bits = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      auto stat = ParseStatId(token);
      if (!stat) {
        throw Error(ErrorKind::kInvalidArgument,
                    "unknown statistic id '" + std::string(token) + "'");
      }
      bits |= static_cast<std::uint16_t>(1u << Idx(*stat));
    }
    pos = end + 1;
  }
  return FromBits(bits);
}

int StatSubset::size() const { return __builtin_popcount(bits_); }

std::vector<Stat> StatSubset::stats() const {
  std::vector<Stat> out;
  for (int i = 0; i < kNumStats; ++i) {
    if ((bits_ >> i) & 1u) out.push_back(static_cast<Stat>(i));
  }
  return out;
}

std::string StatSubset::ToString() const {
  std::string out;
  for (Stat s : stats()) {
    if (!out.empty()) out += ',';
    out += StatId(s);
  }
  return out;
}

std::size_t FeatureSchema::dim() const {
  return kind == FeatureKind::kGeneral
             ? kGeneralDim
             : static_cast<std::size_t>(kNumPlayers * subset.size());
}

std::string FeatureSchema::Id() const {
  if (kind == FeatureKind::kGeneral) return "general:5x5x5x4";
  std::string id = "engineered:" + subset.ToString();
  if (full_clean == FullCleanMode::kAllResistance) id += ":strict-f3";
  return id;
}

std::vector<std::string> FeatureSchema::ColumnNames() const {
  std::vector<std::string> names;
  if (kind == FeatureKind::kGeneral) {
    for (int p = 0; p < kNumPlayers; ++p)
      for (int m = 0; m < kMaxMissions; ++m)
        for (int q = 0; q < kMaxProposals; ++q)
          for (int c = 0; c < static_cast<int>(kGeneralChannels); ++c)
            names.push_back("p" + std::to_string(p) + "_m" +
                            std::to_string(m) + "_q" + std::to_string(q) +
                            "_c" + std::to_string(c));
    return names;
  }
  for (int s = 0; s < kNumPlayers; ++s) {
    for (Stat stat : subset.stats()) {
      names.push_back("s" + std::to_string(s) + "_" + StatId(stat));
    }
  }
  return names;
}

FeatureSchema EngineeredSchema(StatSubset subset) {
  FeatureSchema schema;
  schema.kind = FeatureKind::kEngineered;
  schema.subset = subset;
  return schema;
}

FeatureSchema GeneralSchema() {
  FeatureSchema schema;
  schema.kind = FeatureKind::kGeneral;
  schema.subset = StatSubset();
  return schema;
}

StatTable ComputeStatTable(const AssassinView& view, FullCleanMode mode) {
  RequireValid(view);
  return ComputeUnchecked(view, mode);
}

double EngineeredStat(const AssassinView& view, Seat seat, Stat stat,
                      FullCleanMode mode) {
  if (seat < 0 || seat >= kNumPlayers) {
    throw Error(ErrorKind::kInvalidArgument, "seat out of range");
  }
  return ComputeStatTable(view, mode)[seat][Idx(stat)];
}

EngineeredFeatures MakeEngineeredFeatures(const AssassinView& view,
                                          StatSubset subset,
                                          FullCleanMode mode) {
  return Assemble(ComputeStatTable(view, mode), subset);
}

EngineeredFeatures MakeEngineeredFeatures(const GameLog& log,
                                          StatSubset subset,
                                          FullCleanMode mode) {
  EngineeredFeatures out =
      Assemble(ComputeUnchecked(ValidatedView(log), mode), subset);
  out.label = log.SeatOf(Role::kMerlin);
  return out;
}

GeneralFeatures MakeGeneralFeatures(const AssassinView& view) {
  RequireValid(view);
  return GeneralUnchecked(view);
}

GeneralFeatures MakeGeneralFeatures(const GameLog& log) {
  GeneralFeatures out = GeneralUnchecked(ValidatedView(log));
  out.label = log.SeatOf(Role::kMerlin);
  return out;
}

std::vector<double> Featurize(const AssassinView& view,
                              const FeatureSchema& schema) {
  if (schema.kind == FeatureKind::kGeneral) {
    return MakeGeneralFeatures(view).values;
  }
  return MakeEngineeredFeatures(view, schema.subset, schema.full_clean).values;
}

Dataset BuildDataset(const std::vector<GameLog>& games,
                     const FeatureSchema& schema, int jobs) {
  Dataset data;
  data.schema = schema;
  const std::size_t dim = schema.dim();
  data.x = Matrix(games.size(), dim);
  data.labels.resize(games.size());
  data.resistance.resize(games.size());
  ParallelFor(jobs, games.size(), [&](std::size_t i) {
    const GameLog& g = games[i];
    std::vector<double> values =
        schema.kind == FeatureKind::kGeneral
            ? MakeGeneralFeatures(g).values
            : MakeEngineeredFeatures(g, schema.subset, schema.full_clean)
                  .values;
    std::copy(values.begin(), values.end(), data.x.row(i).begin());
    data.labels[i] = g.SeatOf(Role::kMerlin);
    data.resistance[i] = g.ResistanceMask();
  });
  return data;
}

std::string FeaturesCsv(const Dataset& data) {
  std::ostringstream out;
  for (const std::string& name : data.schema.ColumnNames()) out << name << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.x.row(i)) out << v << ',';
    out << data.labels[i] << '\n';
  }
  return out.str();
}

}  // namespace avalon
