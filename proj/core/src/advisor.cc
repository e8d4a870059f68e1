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

#include "avalon/advisor.h"

#include <algorithm>
#include <charconv>

#include "avalon/checksum.h"
#include "avalon/error.h"
#include "avalon/features.h"
#include "json.hpp"

namespace avalon {

namespace {

using Json = nlohmann::ordered_json;

bool GameOver(const AssassinView& view) {
  int successes = 0, failures = 0;
  for (const Mission& m : view.missions) {
    if (m.succeeded.has_value()) {
      (*m.succeeded ? successes : failures) += 1;
    } else if (m.proposals.size() >= static_cast<std::size_t>(kMaxProposals) &&
               m.Approved() == nullptr) {
      return true;
    }
  }
  return successes >= kWinsNeeded || failures >= kWinsNeeded;
}

Json MetaValue(std::string_view type, const std::string& schema,
               const std::string& checksum) {
  Json meta;
  meta["type"] = std::string(type);
  meta["feature_schema"] = schema;
  meta["checksum"] = checksum;
  return meta;
}

std::string SchemaIdOf(const Model& model) {
  const auto& schema = SchemaOf(model);
  return schema.has_value() ? schema->Id()
                            : "raw:" + std::to_string(InputDim(model));
}

}  // namespace

Advisor::Advisor(Model model)
    : model_(std::move(model)), checksum_(Sha256Hex(ModelToJson(model_))) {}

AdviceResponse Advisor::Advise(const AssassinView& view) const {
  const auto& schema = SchemaOf(model_);
  if (!schema.has_value() || schema->dim() != InputDim(model_)) {
    throw Error(ErrorKind::kFeatureSchemaMismatch,
                "model has no usable feature schema for live advice");
  }
  const CanonicalView canonical = Canonicalize(view);
  const std::vector<double> features = Featurize(canonical.view, *schema);
  const Scores canonical_scores = DecisionScores(model_, features);
  const Seat canonical_target =
      PredictMerlin(canonical_scores, canonical.view.ResistanceMask());

  const auto original = [&](Seat canonical_seat) {
    return (canonical_seat + canonical.shift) % kNumPlayers;
  };

  AdviceResponse out;
  for (Seat s = 0; s < kNumPlayers; ++s) {
    out.scores[original(s)] = canonical_scores[s];
  }
  out.no_signal = std::all_of(features.begin(), features.end(),
                              [](double v) { return v == 0.0; });
  const SeatMask resistance = view.ResistanceMask();
  for (Seat s = 0; s < kNumPlayers; ++s) {
    if (resistance[s]) out.ranking.push_back({s, out.scores[s]});
  }
  if (out.no_signal) {
    // Without evidence the margins only restate the class biases; fall back
    // to the tie rule and keep seat order.
    out.target = out.ranking.front().seat;
  } else {
    out.target = original(canonical_target);
    std::stable_sort(out.ranking.begin(), out.ranking.end(),
                     [](const RankedSeat& a, const RankedSeat& b) {
                       return a.score > b.score;
                     });
  }
  // Ties follow canonical seat order, so the target is moved to the front
  // explicitly rather than relying on the sort.
  auto it = std::find_if(out.ranking.begin(), out.ranking.end(),
                         [&](const RankedSeat& r) { return r.seat == out.target; });
  std::rotate(out.ranking.begin(), it, it + 1);

  out.model_type = std::string(ModelTypeName(model_));
  out.feature_schema = SchemaIdOf(model_);
  out.model_checksum = checksum_;
  out.partial = !GameOver(view);
  return out;
}

std::string Advisor::MetaJson() const {
  return MetaValue(ModelTypeName(model_), SchemaIdOf(model_), checksum_).dump();
}

std::string AdviceToJson(const AdviceResponse& r) {
  Json j;
  j["api_version"] = std::string(kApiVersion);
  j["target"] = r.target;
  Json ranking = Json::array();
  for (const RankedSeat& s : r.ranking) {
    Json e;
    e["seat"] = s.seat;
    e["score"] = s.score;
    ranking.push_back(e);
  }
  j["ranking"] = ranking;
  j["scores"] = r.scores;
  j["model_meta"] = MetaValue(r.model_type, r.feature_schema, r.model_checksum);
  j["meta"]["no_signal"] = r.no_signal;
  j["meta"]["partial"] = r.partial;
  return j.dump();
}

std::string ViolationsToJson(const std::vector<Violation>& violations) {
  Json arr = Json::array();
  for (const Violation& v : violations) {
    Json e;
    e["rule"] = v.rule;
    e["field"] = v.location;
    e["message"] = v.message;
    arr.push_back(e);
  }
  return arr.dump();
}

}  // namespace avalon
