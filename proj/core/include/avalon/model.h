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

#ifndef AVALON_MODEL_H_
#define AVALON_MODEL_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "avalon/features.h"
#include "avalon/mlp.h"
#include "avalon/svm.h"

namespace avalon {

using Model = std::variant<LinearSvcModel, KernelSvcModel, MlpModel>;

inline constexpr int kModelFormatVersion = 1;

// "linear-svc", "rbf-svc" or "mlp".
std::string_view ModelTypeName(const Model& model);

// Linear/kernel margins, or softmax probabilities for the network.
Scores DecisionScores(const Model& model, std::span<const double> x);

std::size_t InputDim(const Model& model);
const std::optional<FeatureSchema>& SchemaOf(const Model& model);
void SetSchema(Model& model, const FeatureSchema& schema);

// Versioned JSON document. Doubles are written in the shortest decimal form
// that reads back to the identical binary64 value.
std::string ModelToJson(const Model& model);
// Throws Error(kModelLoad) on malformed documents.
Model ModelFromJson(std::string_view text);

void SaveModel(const Model& model, const std::filesystem::path& path);
Model LoadModel(const std::filesystem::path& path);

// Training curve as "epoch,loss,accuracy" CSV.
std::string TrainingCurveCsv(const MlpModel& model);

// Feature schema encoding shared with the model files.
std::string SchemaToJson(const FeatureSchema& schema);

}  // namespace avalon

#endif  // AVALON_MODEL_H_
