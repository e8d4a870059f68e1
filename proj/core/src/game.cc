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

#include "avalon/game.h"

#include <algorithm>
#include <sstream>

#include "avalon/error.h"

namespace avalon {

namespace {

constexpr std::array<std::string_view, kNumPlayers> kRoleNames = {
    "Merlin", "Percival", "LoyalServant", "Assassin", "Morgana"};

bool InRange(Seat seat) { return seat >= 0 && seat < kNumPlayers; }

std::string MissionLoc(std::size_t m) {
  return "missions[" + std::to_string(m) + "]";
}

std::string ProposalLoc(std::size_t m, std::size_t p) {
  return MissionLoc(m) + ".proposals[" + std::to_string(p) + "]";
}

class ViolationSink {
 public:
  void Add(std::string rule, std::string location, std::string message) {
    out_.push_back(
        {std::move(rule), std::move(location), std::move(message)});
  }
  std::vector<Violation> Take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

struct HistorySummary {
  int successes = 0;
  int failures = 0;
  bool hammer_rejected = false;
  // True when the last mission has no recorded outcome yet.
  bool pending = false;
};

// Shared rule checks over the mission list. `spies` is used to bound fail
// counts; `complete` demands that every mission is resolved.
HistorySummary CheckHistory(const std::vector<Mission>& missions,
                            Seat first_leader, const SeatMask* spies,
                            bool complete, ViolationSink& sink) {
  HistorySummary summary;
  if (missions.size() > static_cast<std::size_t>(kMaxMissions)) {
    sink.Add("MissionCount", "missions",
             "at most 5 missions, got " + std::to_string(missions.size()));
  }
  int turn = 0;
  bool over = false;
  for (std::size_t m = 0; m < missions.size(); ++m) {
    const Mission& mission = missions[m];
    const std::string loc = MissionLoc(m);
    if (over) {
      sink.Add("GameOver", loc, "mission recorded after the game ended");
    }
    if (mission.index != static_cast<int>(m)) {
      sink.Add("MissionIndex", loc + ".index",
               "expected " + std::to_string(m) + ", got " +
                   std::to_string(mission.index));
    }
    if (m < kTeamSizes.size() && mission.team_size != kTeamSizes[m]) {
      sink.Add("TeamSize", loc + ".team_size",
               "mission " + std::to_string(m) + " requires team size " +
                   std::to_string(kTeamSizes[m]));
    }
    const bool last_mission = m + 1 == missions.size();
    if (mission.proposals.empty() && (complete || !last_mission)) {
      sink.Add("ProposalCount", loc + ".proposals",
               "a mission needs at least one proposal");
    }
    if (mission.proposals.size() > static_cast<std::size_t>(kMaxProposals)) {
      sink.Add("ProposalCount", loc + ".proposals",
               "at most 5 proposals per mission");
    }

    const Proposal* approved = nullptr;
    for (std::size_t p = 0; p < mission.proposals.size(); ++p) {
      const Proposal& proposal = mission.proposals[p];
      const std::string ploc = ProposalLoc(m, p);
      if (!InRange(proposal.leader)) {
        sink.Add("SeatRange", ploc + ".leader", "leader seat out of range");
      } else if (InRange(first_leader) &&
                 proposal.leader != (first_leader + turn) % kNumPlayers) {
        sink.Add("LeaderRotation", ploc + ".leader",
                 "expected leader " +
                     std::to_string((first_leader + turn) % kNumPlayers) +
                     ", got " + std::to_string(proposal.leader));
      }
      ++turn;
      if (static_cast<int>(proposal.team.size()) != mission.team_size) {
        sink.Add("TeamSize", ploc + ".team",
                 "team has " + std::to_string(proposal.team.size()) +
                     " members, mission requires " +
                     std::to_string(mission.team_size));
      }
      SeatMask seen{};
      for (Seat s : proposal.team) {
        if (!InRange(s)) {
          sink.Add("SeatRange", ploc + ".team",
                   "team seat " + std::to_string(s) + " out of range");
        } else if (seen[s]) {
          sink.Add("TeamMembers", ploc + ".team",
                   "seat " + std::to_string(s) + " listed twice");
        } else {
          seen[s] = true;
        }
      }
      // Strict majority; a tie rejects (unreachable with five voters).
      const int approvals = proposal.ApproveCount();
      const bool majority = 2 * approvals > kNumPlayers;
      if (proposal.approved != majority) {
        sink.Add("MajorityRule", ploc + ".approved",
                 std::to_string(approvals) + " approvals but approved=" +
                     (proposal.approved ? "true" : "false"));
      }
      if (proposal.approved) {
        if (p + 1 != mission.proposals.size()) {
          sink.Add("ApprovalOrder", ploc,
                   "only the last proposal of a mission may be approved");
        }
        approved = &proposal;
      }
    }

    const bool resolved = mission.succeeded.has_value();
    if (approved == nullptr) {
      if (resolved || mission.fail_count.has_value()) {
        sink.Add("MissionOutcome", loc,
                 "outcome recorded for a mission without an approved team");
      }
      if (mission.proposals.size() >= static_cast<std::size_t>(kMaxProposals)) {
        summary.hammer_rejected = true;
        over = true;
      } else if (complete || !last_mission) {
        sink.Add("UnfinishedMission", loc,
                 "mission has neither an approved team nor five rejections");
      } else {
        summary.pending = true;
      }
      continue;
    }

    if (!resolved) {
      if (complete || !last_mission) {
        sink.Add("MissionOutcome", loc + ".succeeded",
                 "approved mission must record an outcome");
      } else {
        summary.pending = true;
      }
      if (mission.fail_count.has_value()) {
        sink.Add("MissionOutcome", loc + ".fail_count",
                 "fail_count present without succeeded");
      }
      continue;
    }
    if (!mission.fail_count.has_value()) {
      sink.Add("MissionOutcome", loc + ".fail_count",
               "succeeded present without fail_count");
    } else {
      const int fails = *mission.fail_count;
      if (fails < 0 || fails > mission.team_size) {
        sink.Add("FailCount", loc + ".fail_count", "fail_count out of range");
      } else if (*mission.succeeded != (fails == 0)) {
        sink.Add("MissionOutcome", loc + ".succeeded",
                 "a mission succeeds iff no fail cards are played");
      }
      if (spies != nullptr) {
        int spies_on_team = 0;
        for (Seat s : approved->team) {
          if (InRange(s) && (*spies)[s]) ++spies_on_team;
        }
        if (fails > spies_on_team) {
          sink.Add("FailCount", loc + ".fail_count",
                   std::to_string(fails) + " fail cards but only " +
                       std::to_string(spies_on_team) + " spies on the team");
        }
      }
    }
    if (*mission.succeeded) {
      ++summary.successes;
    } else {
      ++summary.failures;
    }
    if (summary.successes >= kWinsNeeded || summary.failures >= kWinsNeeded) {
      over = true;
    }
  }
  return summary;
}

SeatMask MaskFromRoles(const std::array<Role, kNumPlayers>& roles, bool spy) {
  SeatMask mask{};
  for (int s = 0; s < kNumPlayers; ++s) mask[s] = IsSpy(roles[s]) == spy;
  return mask;
}

Proposal RotateProposal(const Proposal& in, Seat shift) {
  Proposal out;
  out.leader = RotateSeat(in.leader, shift);
  out.team.reserve(in.team.size());
  for (Seat s : in.team) out.team.push_back(RotateSeat(s, shift));
  for (int s = 0; s < kNumPlayers; ++s) {
    out.votes[RotateSeat(s, shift)] = in.votes[s];
  }
  out.approved = in.approved;
  return out;
}

std::vector<Mission> RotateMissions(const std::vector<Mission>& in,
                                    Seat shift) {
  std::vector<Mission> out = in;
  for (Mission& mission : out) {
    for (Proposal& proposal : mission.proposals) {
      proposal = RotateProposal(proposal, shift);
    }
  }
  return out;
}

[[noreturn]] void ThrowInvalid(const std::vector<Violation>& violations) {
  std::ostringstream msg;
  msg << "invalid game (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << ")";
  if (!violations.empty()) {
    msg << ": " << violations.front().rule << " at "
        << violations.front().location << ": " << violations.front().message;
  }
  throw Error(ErrorKind::kInvalidGame, msg.str());
}

}  // namespace

std::string_view RoleName(Role role) {
  return kRoleNames[static_cast<std::size_t>(role)];
}

std::optional<Role> ParseRole(std::string_view name) {
  for (Role role : kAllRoles) {
    if (RoleName(role) == name) return role;
  }
  return std::nullopt;
}

std::string_view VoteName(Vote vote) {
  return vote == Vote::kApprove ? "Approve" : "Reject";
}

std::optional<Vote> ParseVote(std::string_view name) {
  if (name == "Approve") return Vote::kApprove;
  if (name == "Reject") return Vote::kReject;
  return std::nullopt;
}

std::string_view SideName(Side side) {
  return side == Side::kResistance ? "Resistance" : "Spies";
}

std::optional<Side> ParseSide(std::string_view name) {
  if (name == "Resistance") return Side::kResistance;
  if (name == "Spies") return Side::kSpies;
  return std::nullopt;
}

int Proposal::ApproveCount() const {
  return static_cast<int>(std::count(votes.begin(), votes.end(),
                                     Vote::kApprove));
}

bool Proposal::Contains(Seat seat) const {
  return std::find(team.begin(), team.end(), seat) != team.end();
}

const Proposal* Mission::Approved() const {
  for (const Proposal& p : proposals) {
    if (p.approved) return &p;
  }
  return nullptr;
}

Seat GameLog::SeatOf(Role role) const {
  for (int s = 0; s < kNumPlayers; ++s) {
    if (roles[s] == role) return s;
  }
  return -1;
}

SeatMask GameLog::SpyMask() const { return MaskFromRoles(roles, true); }
SeatMask GameLog::ResistanceMask() const { return MaskFromRoles(roles, false); }

int GameLog::SucceededMissions() const {
  return static_cast<int>(std::count_if(
      missions.begin(), missions.end(),
      [](const Mission& m) { return m.succeeded.value_or(false); }));
}

int GameLog::FailedMissions() const {
  return static_cast<int>(std::count_if(
      missions.begin(), missions.end(),
      [](const Mission& m) { return m.succeeded.has_value() && !*m.succeeded; }));
}

SeatMask AssassinView::SpyMask() const {
  SeatMask mask{};
  for (Seat s : spy_seats) {
    if (InRange(s)) mask[s] = true;
  }
  return mask;
}

SeatMask AssassinView::ResistanceMask() const {
  SeatMask mask = SpyMask();
  for (bool& b : mask) b = !b;
  return mask;
}

std::size_t AssassinView::ProposalCount() const {
  std::size_t n = 0;
  for (const Mission& m : missions) n += m.proposals.size();
  return n;
}

std::vector<Violation> ValidateGame(const GameLog& log) {
  ViolationSink sink;
  if (log.num_players != kNumPlayers) {
    sink.Add("PlayerCount", "num_players",
             "only 5-player games are supported");
  }
  std::array<int, kNumPlayers> role_counts{};
  for (Role r : log.roles) ++role_counts[static_cast<std::size_t>(r)];
  for (Role r : kAllRoles) {
    if (role_counts[static_cast<std::size_t>(r)] != 1) {
      sink.Add("RoleComposition", "roles",
               "expected exactly one " + std::string(RoleName(r)));
    }
  }
  if (!InRange(log.first_leader)) {
    sink.Add("SeatRange", "first_leader", "first leader out of range");
  }
  const SeatMask spies = log.SpyMask();
  const HistorySummary summary =
      CheckHistory(log.missions, log.first_leader, &spies, true, sink);

  const bool resistance_three = summary.successes >= kWinsNeeded;
  const bool spies_three = summary.failures >= kWinsNeeded;
  if (!resistance_three && !spies_three && !summary.hammer_rejected) {
    sink.Add("Incomplete", "missions",
             "game ended without three successes, three failures, or a "
             "five-rejection round");
  }

  if (resistance_three && !log.assassination.has_value()) {
    sink.Add("AssassinationRequired", "assassination",
             "three missions succeeded but no assassination is recorded");
  }
  if (!resistance_three && log.assassination.has_value()) {
    sink.Add("UnexpectedAssassination", "assassination",
             "assassination recorded without three mission successes");
  }
  if (log.assassination.has_value()) {
    const Assassination& shot = *log.assassination;
    if (!InRange(shot.shooter)) {
      sink.Add("SeatRange", "assassination.shooter", "shooter out of range");
    } else if (log.roles[shot.shooter] != Role::kAssassin) {
      sink.Add("Shooter", "assassination.shooter",
               "shooter must hold the Assassin role");
    }
    if (!InRange(shot.target)) {
      sink.Add("SeatRange", "assassination.target", "target out of range");
    } else {
      if (IsSpy(log.roles[shot.target])) {
        sink.Add("AssassinationTarget", "assassination.target",
                 "target must be a resistance seat");
      }
      if (shot.correct != (log.roles[shot.target] == Role::kMerlin)) {
        sink.Add("AssassinationCorrect", "assassination.correct",
                 "correct must equal (target is Merlin)");
      }
    }
  }

  std::optional<Side> expected_winner;
  if (spies_three || summary.hammer_rejected) {
    expected_winner = Side::kSpies;
  } else if (resistance_three && log.assassination.has_value() &&
             InRange(log.assassination->target)) {
    expected_winner = log.roles[log.assassination->target] == Role::kMerlin
                          ? Side::kSpies
                          : Side::kResistance;
  }
  if (expected_winner.has_value() && *expected_winner != log.winner) {
    sink.Add("Winner", "winner",
             "expected winner " + std::string(SideName(*expected_winner)));
  }
  return sink.Take();
}

std::vector<Violation> ValidateView(const AssassinView& view) {
  ViolationSink sink;
  SeatMask seen{};
  bool seats_ok = view.spy_seats.size() == 2;
  for (Seat s : view.spy_seats) {
    if (!InRange(s) || seen[s]) {
      seats_ok = false;
    } else {
      seen[s] = true;
    }
  }
  if (!seats_ok) {
    sink.Add("SpySeats", "spy_seats",
             "exactly 2 distinct spy seats in 0-4 are required, got " +
                 std::to_string(view.spy_seats.size()));
  }
  if (!InRange(view.first_leader)) {
    sink.Add("SeatRange", "first_leader", "first leader out of range");
  }
  const SeatMask spies = view.SpyMask();
  CheckHistory(view.missions, view.first_leader, seats_ok ? &spies : nullptr,
               false, sink);
  return sink.Take();
}

GameLog Canonicalize(const GameLog& log) {
  if (auto violations = ValidateGame(log); !violations.empty()) {
    ThrowInvalid(violations);
  }
  const Seat shift = log.first_leader;
  GameLog out = log;
  out.first_leader = 0;
  for (int s = 0; s < kNumPlayers; ++s) {
    out.roles[RotateSeat(s, shift)] = log.roles[s];
  }
  out.missions = RotateMissions(log.missions, shift);
  if (out.assassination.has_value()) {
    out.assassination->shooter = RotateSeat(log.assassination->shooter, shift);
    out.assassination->target = RotateSeat(log.assassination->target, shift);
  }
  return out;
}

CanonicalView Canonicalize(const AssassinView& view) {
  if (auto violations = ValidateView(view); !violations.empty()) {
    ThrowInvalid(violations);
  }
  CanonicalView out;
  out.shift = view.first_leader;
  out.view.first_leader = 0;
  for (Seat s : view.spy_seats) {
    out.view.spy_seats.push_back(RotateSeat(s, out.shift));
  }
  std::sort(out.view.spy_seats.begin(), out.view.spy_seats.end());
  out.view.missions = RotateMissions(view.missions, out.shift);
  return out;
}

AssassinView MakeAssassinView(const GameLog& log) {
  AssassinView view;
  for (int s = 0; s < kNumPlayers; ++s) {
    if (IsSpy(log.roles[s])) view.spy_seats.push_back(s);
  }
  view.first_leader = log.first_leader;
  view.missions = log.missions;
  return view;
}

bool IsAssassinationEligible(const GameLog& log) {
  return log.SucceededMissions() >= kWinsNeeded &&
         log.assassination.has_value();
}

}  // namespace avalon
