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

#include <algorithm>
#include <string>
#include <vector>

#include "avalon/error.h"
#include "avalon/parallel.h"
#include "avalon/rng.h"

namespace avalon {

namespace {

std::vector<Seat> Sample(Rng& rng, std::vector<Seat> pool, int k) {
  rng.Shuffle(std::span<Seat>(pool));
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

bool ProbabilityOk(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void SimConfig::Validate() const {
  if (num_games < 0) {
    throw Error(ErrorKind::kInvalidArgument, "num_games must be >= 0");
  }
  if (!ProbabilityOk(merlin_leak) || !ProbabilityOk(spy_sabotage) ||
      !ProbabilityOk(base_approve)) {
    throw Error(ErrorKind::kInvalidArgument,
                "simulator probabilities must lie in [0, 1]");
  }
}

GameLog SimulateGame(const SimConfig& config, std::uint64_t game_index) {
  config.Validate();
  Rng rng(config.seed, game_index);

  GameLog log;
  log.game_id =
      "sim-" + std::to_string(config.seed) + "-" + std::to_string(game_index);
  log.roles = kAllRoles;
  rng.Shuffle(std::span<Role>(log.roles));
  log.first_leader = static_cast<Seat>(rng.Below(kNumPlayers));

  std::vector<Seat> all_seats, resistance;
  for (Seat s = 0; s < kNumPlayers; ++s) {
    all_seats.push_back(s);
    if (!IsSpy(log.roles[s])) resistance.push_back(s);
  }
  const SeatMask spies = log.SpyMask();

  int successes = 0;
  int failures = 0;
  int turn = 0;
  for (int m = 0; m < kMaxMissions && successes < kWinsNeeded &&
                  failures < kWinsNeeded;
       ++m) {
    Mission mission;
    mission.index = m;
    mission.team_size = kTeamSizes[m];
    for (int p = 0; p < kMaxProposals; ++p) {
      Proposal proposal;
      proposal.leader = (log.first_leader + turn++) % kNumPlayers;
      const Role leader_role = log.roles[proposal.leader];
      if (IsSpy(leader_role)) {
        proposal.team = Sample(rng, resistance, mission.team_size - 1);
        proposal.team.push_back(proposal.leader);
        std::sort(proposal.team.begin(), proposal.team.end());
      } else if (leader_role == Role::kMerlin &&
                 rng.Bernoulli(config.merlin_leak)) {
        proposal.team = Sample(rng, resistance, mission.team_size);
      } else {
        proposal.team = Sample(rng, all_seats, mission.team_size);
      }
      const bool dirty = std::any_of(proposal.team.begin(), proposal.team.end(),
                                     [&](Seat s) { return spies[s]; });
      const bool hammer = p == kMaxProposals - 1;
      for (Seat s = 0; s < kNumPlayers; ++s) {
        bool approve;
        if (hammer) {
          approve = true;
        } else if (spies[s]) {
          approve = dirty;
        } else if (log.roles[s] == Role::kMerlin &&
                   rng.Bernoulli(config.merlin_leak)) {
          approve = !dirty;
        } else {
          approve = rng.Bernoulli(config.base_approve);
        }
        proposal.votes[s] = approve ? Vote::kApprove : Vote::kReject;
      }
      proposal.approved = 2 * proposal.ApproveCount() > kNumPlayers;
      const bool approved = proposal.approved;
      const std::vector<Seat> team = proposal.team;
      mission.proposals.push_back(std::move(proposal));
      if (!approved) continue;

      int fails = 0;
      for (Seat s : team) {
        if (spies[s] && rng.Bernoulli(config.spy_sabotage)) ++fails;
      }
      mission.fail_count = fails;
      mission.succeeded = fails == 0;
      (fails == 0 ? successes : failures) += 1;
      break;
    }
    log.missions.push_back(std::move(mission));
  }

  if (successes >= kWinsNeeded) {
    Assassination shot;
    shot.shooter = log.SeatOf(Role::kAssassin);
    shot.target = resistance[rng.Below(resistance.size())];
    shot.correct = log.roles[shot.target] == Role::kMerlin;
    log.assassination = shot;
    log.winner = shot.correct ? Side::kSpies : Side::kResistance;
  } else {
    log.winner = Side::kSpies;
  }
  return log;
}

GameStream SimulateDataset(const SimConfig& config, int jobs) {
  config.Validate();
  GameStream stream;
  stream.source = "simulator(seed=" + std::to_string(config.seed) + ")";
  const auto target = static_cast<std::size_t>(config.num_games);
  std::uint64_t next_index = 0;
  while (stream.games.size() < target) {
    const std::size_t missing = target - stream.games.size();
    // Roughly 40% of games are eligible at default settings, so overdraw.
    const std::size_t batch =
        config.eligible_only ? std::max<std::size_t>(missing * 3, 64) : missing;
    std::vector<GameLog> games(batch);
    ParallelFor(jobs, batch, [&](std::size_t i) {
      games[i] = Canonicalize(SimulateGame(config, next_index + i));
    });
    next_index += batch;
    for (GameLog& g : games) {
      if (stream.games.size() == target) break;
      if (config.eligible_only && !IsAssassinationEligible(g)) continue;
      stream.games.push_back(std::move(g));
    }
  }
  return stream;
}

}  // namespace avalon
