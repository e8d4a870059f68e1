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

#ifndef AVALON_GAME_H_
#define AVALON_GAME_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avalon {

inline constexpr int kNumPlayers = 5;
inline constexpr int kMaxMissions = 5;
inline constexpr int kMaxProposals = 5;
inline constexpr int kWinsNeeded = 3;
inline constexpr std::array<int, kMaxMissions> kTeamSizes = {2, 3, 2, 3, 3};

enum class Role : std::uint8_t {
  kMerlin,
  kPercival,
  kLoyalServant,
  kAssassin,
  kMorgana,
};
inline constexpr std::array<Role, kNumPlayers> kAllRoles = {
    Role::kMerlin, Role::kPercival, Role::kLoyalServant, Role::kAssassin,
    Role::kMorgana};

enum class Vote : std::uint8_t { kApprove, kReject };
enum class Side : std::uint8_t { kResistance, kSpies };

constexpr bool IsSpy(Role role) {
  return role == Role::kAssassin || role == Role::kMorgana;
}
constexpr Side SideOf(Role role) {
  return IsSpy(role) ? Side::kSpies : Side::kResistance;
}

std::string_view RoleName(Role role);
std::optional<Role> ParseRole(std::string_view name);
std::string_view VoteName(Vote vote);
std::optional<Vote> ParseVote(std::string_view name);
std::string_view SideName(Side side);
std::optional<Side> ParseSide(std::string_view name);

using Seat = int;
using SeatMask = std::array<bool, kNumPlayers>;

struct Proposal {
  Seat leader = 0;
  std::vector<Seat> team;
  std::array<Vote, kNumPlayers> votes{};
  bool approved = false;

  int ApproveCount() const;
  bool Contains(Seat seat) const;
  friend bool operator==(const Proposal&, const Proposal&) = default;
};

struct Mission {
  int index = 0;
  int team_size = 0;
  std::vector<Proposal> proposals;
  std::optional<int> fail_count;
  std::optional<bool> succeeded;

  // The approved proposal, if the mission went ahead.
  const Proposal* Approved() const;
  friend bool operator==(const Mission&, const Mission&) = default;
};

struct Assassination {
  Seat shooter = 0;
  Seat target = 0;
  bool correct = false;
  friend bool operator==(const Assassination&, const Assassination&) = default;
};

struct GameLog {
  std::string game_id;
  int num_players = kNumPlayers;
  std::array<Role, kNumPlayers> roles{};
  Seat first_leader = 0;
  std::vector<Mission> missions;
  Side winner = Side::kResistance;
  std::optional<Assassination> assassination;

  Seat SeatOf(Role role) const;
  SeatMask SpyMask() const;
  SeatMask ResistanceMask() const;
  int SucceededMissions() const;
  int FailedMissions() const;
  friend bool operator==(const GameLog&, const GameLog&) = default;
};

// What the Assassin legally knows: who the spies are and the public history.
struct AssassinView {
  std::vector<Seat> spy_seats;
  Seat first_leader = 0;
  std::vector<Mission> missions;

  SeatMask SpyMask() const;
  SeatMask ResistanceMask() const;
  std::size_t ProposalCount() const;
  friend bool operator==(const AssassinView&, const AssassinView&) = default;
};

struct Violation {
  std::string rule;
  std::string location;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Returns every rule violation found; an empty result means the log is a
// legal, finished 5-player game.
std::vector<Violation> ValidateGame(const GameLog& log);

// Checks a possibly unfinished history as seen by the Assassin. Termination
// and assassination rules are not applied, but no mission may follow a
// game-ending one.
std::vector<Violation> ValidateView(const AssassinView& view);

// Relabels seats so that the first leader is seat 0, preserving clockwise
// order. Throws Error(kInvalidGame) if the log has violations.
GameLog Canonicalize(const GameLog& log);

// Rotation applied to a view; `shift` is the original first leader, and
// canonical seat s corresponds to original seat (s + shift) % 5.
struct CanonicalView {
  AssassinView view;
  Seat shift = 0;
};
CanonicalView Canonicalize(const AssassinView& view);

// Seat arithmetic for relabeling: original -> canonical.
constexpr Seat RotateSeat(Seat seat, Seat shift) {
  return ((seat - shift) % kNumPlayers + kNumPlayers) % kNumPlayers;
}

AssassinView MakeAssassinView(const GameLog& log);

bool IsAssassinationEligible(const GameLog& log);

}  // namespace avalon

#endif  // AVALON_GAME_H_
