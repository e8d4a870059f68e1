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

#include "manifest.h"

#include "avalon/checksum.h"
#include "avalon/game_io.h"
#include "json.hpp"

namespace avalon::tools {

std::string RunManifest::ToJson() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["args"] = args;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [k, v] : flags) f[k] = v;
  j["flags"] = f;
  j["seed"] = seed;
  j["jobs"] = jobs;
  nlohmann::ordered_json in = nlohmann::ordered_json::array();
  for (const auto& p : inputs) {
    in.push_back({{"path", p.string()}, {"sha256", Sha256File(p)}});
  }
  j["inputs"] = in;
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& p : outputs) {
    out.push_back({{"path", p.string()}, {"sha256", Sha256File(p)}});
  }
  j["outputs"] = out;
  j["duration_seconds"] = duration_seconds;
  return j.dump(2) + "\n";
}

std::filesystem::path RunManifest::PathFor(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

void RunManifest::Write() const {
  if (outputs.empty()) return;
  WriteFile(PathFor(outputs.front()), ToJson());
}

}  // namespace avalon::tools
