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

#ifndef AVALON_ERROR_H_
#define AVALON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace avalon {

enum class ErrorKind {
  kIo,
  kSchema,
  kInvalidGame,
  kNonCanonical,
  kEmptyDataset,
  kDimensionMismatch,
  kNonPositiveC,
  kNonPositiveGamma,
  kBadMask,
  kEmptySubset,
  kEmptyCandidates,
  kBadK,
  kMissingHumanTarget,
  kFeatureSchemaMismatch,
  kModelLoad,
  kInvalidArgument,
};

std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this type; `kind()` lets callers
// map them onto exit codes or HTTP statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised for malformed records. `line` is 1-based, 0 when not applicable.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, std::string field, const std::string& message)
      : Error(ErrorKind::kSchema, message),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace avalon

#endif  // AVALON_ERROR_H_
