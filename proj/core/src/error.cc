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

#include "avalon/error.h"

namespace avalon {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kSchema: return "SchemaError";
    case ErrorKind::kInvalidGame: return "InvalidGame";
    case ErrorKind::kNonCanonical: return "NonCanonical";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNonPositiveC: return "NonPositiveC";
    case ErrorKind::kNonPositiveGamma: return "NonPositiveGamma";
    case ErrorKind::kBadMask: return "BadMask";
    case ErrorKind::kEmptySubset: return "EmptySubset";
    case ErrorKind::kEmptyCandidates: return "EmptyCandidates";
    case ErrorKind::kBadK: return "BadK";
    case ErrorKind::kMissingHumanTarget: return "MissingHumanTarget";
    case ErrorKind::kFeatureSchemaMismatch: return "FeatureSchemaMismatch";
    case ErrorKind::kModelLoad: return "ModelLoadError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace avalon
