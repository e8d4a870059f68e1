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

#ifndef AVALON_SRC_JSON_CODEC_H_
#define AVALON_SRC_JSON_CODEC_H_

#include <cstddef>
#include <string>

#include "avalon/game.h"
#include "json.hpp"

namespace avalon::internal {

using OrderedJson = nlohmann::ordered_json;

OrderedJson MissionsToJson(const std::vector<Mission>& missions);
OrderedJson GameToJsonValue(const GameLog& log);
OrderedJson ViewToJsonValue(const AssassinView& view);

// Throw SchemaError naming the offending field; `line` is carried through.
GameLog GameFromJsonValue(const nlohmann::json& j, std::size_t line);
AssassinView ViewFromJsonValue(const nlohmann::json& j, std::size_t line);

}  // namespace avalon::internal

#endif  // AVALON_SRC_JSON_CODEC_H_
