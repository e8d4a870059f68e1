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

#ifndef AVALON_EVALUATION_H_
#define AVALON_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "avalon/features.h"
#include "avalon/game_io.h"
#include "avalon/mlp.h"
#include "avalon/model.h"
#include "avalon/svm.h"

namespace avalon {

struct FoldPlan {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> folds;
};

// Seeded uniform shuffle, then contiguous partition; the first n % k folds
// get one extra element. Throws Error(kBadK) unless 2 <= k <= n.
FoldPlan KFoldSplit(std::size_t n, int k, std::uint64_t seed);

using TrainerSpec = std::variant<LinearSvcParams, RbfSvcParams, MlpConfig>;
std::string TrainerName(const TrainerSpec& spec);

// Trains the requested model on a dataset and stamps it with the schema.
Model TrainModel(const TrainerSpec& spec, const Dataset& data);

using Scorer = std::function<Scores(std::span<const double>)>;
using TrainFn =
    std::function<Scorer(const Matrix& x, std::span<const int> labels)>;
TrainFn MakeTrainFn(const TrainerSpec& spec);

struct FoldResult {
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t test_size = 0;
  std::size_t test_correct = 0;
};

struct DatasetCv {
  std::vector<FoldResult> folds;
  std::vector<Seat> predictions;  // out-of-fold prediction per row
};

// Runs every fold of `plan` on `data`. Errors are rethrown with the fold id
// prepended. Predictions go through PredictMerlin with each row's
// resistance mask.
DatasetCv CrossValidateDataset(const Dataset& data, const TrainFn& train,
                               const FoldPlan& plan, int jobs = 1);

struct Contingency {
  std::size_t both = 0;
  std::size_t human_only = 0;
  std::size_t model_only = 0;
  std::size_t neither = 0;
  std::size_t total() const { return both + human_only + model_only + neither; }
};

struct ShotBreakdown {
  std::size_t wrong = 0;
  std::size_t percival = 0;
  std::size_t servant = 0;
  double percival_fraction() const;
  double servant_fraction() const;
};

struct ErrorAnalysis {
  Contingency contingency;
  ShotBreakdown shots;
};

// Human column = the recorded assassination target. Throws
// Error(kMissingHumanTarget) if a game has no assassination record.
ErrorAnalysis AnalyzeErrors(const std::vector<GameLog>& games,
                            std::span<const Seat> predictions);
ErrorAnalysis AnalyzeErrors(const Model& model, const GameStream& stream);

struct EvalReport {
  std::string protocol;  // "10-fold CV" or "holdout 0.2"
  std::string trainer;
  std::string feature_schema;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<std::size_t> fold_sizes;
  std::vector<double> fold_accuracies;
  std::vector<double> fold_train_accuracies;
  double mean_accuracy = 0.0;        // unweighted mean of fold accuracies
  double pooled_accuracy = 0.0;      // total correct / total evaluated
  double mean_train_accuracy = 0.0;
  double random_baseline = 0.0;
  std::optional<double> human_baseline;
  std::optional<ErrorAnalysis> errors;
};

// Requires an eligible stream with n >= k.
EvalReport CrossValidate(const GameStream& stream, const FeatureSchema& schema,
                         const TrainerSpec& trainer, int k, std::uint64_t seed,
                         int jobs = 1);
// Same, with an arbitrary training function (used for stubs and oracles).
EvalReport CrossValidate(const GameStream& stream, const FeatureSchema& schema,
                         const TrainFn& train, std::string trainer_name, int k,
                         std::uint64_t seed, int jobs = 1);

// Single shuffled split; `test_fraction` in (0, 1).
EvalReport HoldoutEvaluate(const GameStream& stream,
                           const FeatureSchema& schema,
                           const TrainerSpec& trainer, double test_fraction,
                           std::uint64_t seed);

// Uniform shot among the three resistance seats of every game.
double BaselineRandom(const GameStream& stream, std::uint64_t seed);
// Fraction of recorded assassinations that hit Merlin; absent if none.
std::optional<double> BaselineHuman(const GameStream& stream);

std::string ReportText(const EvalReport& report);
std::string ReportJson(const EvalReport& report);

}  // namespace avalon

#endif  // AVALON_EVALUATION_H_
