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

#ifndef AVALON_SIMULATOR_H_
#define AVALON_SIMULATOR_H_

#include <cstdint>

#include "avalon/game.h"
#include "avalon/game_io.h"

namespace avalon {

// Synthetic play. The agents are deliberately simple: the only signal about
// Merlin comes from `merlin_leak`, so with merlin_leak = 0 Merlin is
// behaviourally identical to a Loyal Servant.
struct SimConfig {
  std::uint64_t seed = 0;
  int num_games = 0;
  double merlin_leak = 0.0;
  double spy_sabotage = 0.5;
  double base_approve = 0.7;
  bool eligible_only = false;

  // Throws Error(kInvalidArgument) on out-of-range fields.
  void Validate() const;
};

// Plays one game with randomness derived only from (seed, game_index).
// Seats are raw (the first leader is uniform); the log is rule-valid.
GameLog SimulateGame(const SimConfig& config, std::uint64_t game_index);

// num_games canonicalized games in game_index order. With eligible_only the
// generator keeps drawing indices until num_games eligible games are found.
// `jobs` bounds worker threads; output does not depend on it.
GameStream SimulateDataset(const SimConfig& config, int jobs = 1);

}  // namespace avalon

#endif  // AVALON_SIMULATOR_H_
