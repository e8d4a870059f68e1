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

#ifndef AVALON_ADVISOR_H_
#define AVALON_ADVISOR_H_

#include <string>
#include <string_view>
#include <vector>

#include "avalon/game.h"
#include "avalon/model.h"

namespace avalon {

inline constexpr std::string_view kApiVersion = "1";

struct RankedSeat {
  Seat seat = 0;
  double score = 0.0;
};

// Seats are reported in the caller's labelling even though scoring runs on
// the canonical rotation.
struct AdviceResponse {
  std::vector<RankedSeat> ranking;  // resistance seats, best first
  Seat target = 0;
  Scores scores{};                  // raw model output per seat
  std::string model_type;
  std::string feature_schema;
  std::string model_checksum;
  bool no_signal = false;  // every feature was zero
  bool partial = false;    // the game has not reached an end condition
};

// An immutable trained model plus its identity; safe to share across
// threads.
class Advisor {
 public:
  explicit Advisor(Model model);

  // Throws Error(kInvalidGame) for illegal views and
  // Error(kFeatureSchemaMismatch) when the model cannot score them.
  AdviceResponse Advise(const AssassinView& view) const;

  const Model& model() const { return model_; }
  const std::string& checksum() const { return checksum_; }
  // {"type": ..., "feature_schema": ..., "checksum": ...}
  std::string MetaJson() const;

 private:
  Model model_;
  std::string checksum_;
};

// Compact JSON; byte-identical for identical inputs and model.
std::string AdviceToJson(const AdviceResponse& response);

std::string ViolationsToJson(const std::vector<Violation>& violations);

}  // namespace avalon

#endif  // AVALON_ADVISOR_H_
