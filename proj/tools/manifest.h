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

#ifndef AVALON_TOOLS_MANIFEST_H_
#define AVALON_TOOLS_MANIFEST_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace avalon::tools {

// Written next to every output file as <out>.manifest.json. Everything
// except duration_seconds is a function of the command line and the inputs.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> args;
  std::map<std::string, std::string> flags;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  double duration_seconds = 0.0;

  // Checksums are computed from the files at write time.
  std::string ToJson() const;
  void Write() const;
  static std::filesystem::path PathFor(const std::filesystem::path& output);
};

}  // namespace avalon::tools

#endif  // AVALON_TOOLS_MANIFEST_H_
