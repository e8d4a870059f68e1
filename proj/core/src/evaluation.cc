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

#include "avalon/evaluation.h"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "avalon/error.h"
#include "avalon/parallel.h"
#include "avalon/rng.h"
#include "json.hpp"

namespace avalon {

namespace {

constexpr std::uint64_t kFoldStream = 0xf01d;
constexpr std::uint64_t kBaselineStream = 0xba5e;

std::string Fixed(double v, int digits = 3) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

void RequireEligible(const GameStream& stream) {
  for (const GameLog& g : stream.games) {
    if (!IsAssassinationEligible(g)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "game '" + g.game_id +
                      "' is not assassination-eligible; filter the stream first");
    }
  }
}

bool AllHaveHumanTargets(const std::vector<GameLog>& games) {
  return std::all_of(games.begin(), games.end(), [](const GameLog& g) {
    return g.assassination.has_value();
  });
}

double MaskedAccuracy(const Scorer& score, const Matrix& x,
                      std::span<const int> labels,
                      std::span<const SeatMask> masks) {
  if (x.rows() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (PredictMerlin(score(x.row(i)), masks[i]) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

}  // namespace

FoldPlan KFoldSplit(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorKind::kBadK, "need 2 <= k <= n, got k=" +
                                      std::to_string(k) +
                                      ", n=" + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, kFoldStream);
  rng.Shuffle(std::span<std::size_t>(order));

  FoldPlan plan;
  plan.n = n;
  plan.seed = seed;
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t base = n / kk;
  const std::size_t extra = n % kk;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < kk; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    plan.folds.emplace_back(order.begin() + static_cast<long>(pos),
                            order.begin() + static_cast<long>(pos + size));
    pos += size;
  }
  return plan;
}

std::string TrainerName(const TrainerSpec& spec) {
  switch (spec.index()) {
    case 0: return "linear-svc";
    case 1: return "rbf-svc";
    default: {
      std::string name = "mlp[";
      const auto& hidden = std::get<MlpConfig>(spec).hidden;
      for (std::size_t i = 0; i < hidden.size(); ++i) {
        if (i) name += 'x';
        name += std::to_string(hidden[i]);
      }
      return name + "]";
    }
  }
}

Model TrainModel(const TrainerSpec& spec, const Dataset& data) {
  Model model = std::visit(
      [&](const auto& params) -> Model {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, LinearSvcParams>) {
          return TrainLinearSvc(data.x, data.labels, params);
        } else if constexpr (std::is_same_v<T, RbfSvcParams>) {
          return TrainRbfSvc(data.x, data.labels, params);
        } else {
          return TrainMlp(data.x, data.labels, params);
        }
      },
      spec);
  SetSchema(model, data.schema);
  return model;
}

TrainFn MakeTrainFn(const TrainerSpec& spec) {
  return [spec](const Matrix& x, std::span<const int> labels) -> Scorer {
    auto model = std::make_shared<Model>(std::visit(
        [&](const auto& params) -> Model {
          using T = std::decay_t<decltype(params)>;
          if constexpr (std::is_same_v<T, LinearSvcParams>) {
            return TrainLinearSvc(x, labels, params);
          } else if constexpr (std::is_same_v<T, RbfSvcParams>) {
            return TrainRbfSvc(x, labels, params);
          } else {
            return TrainMlp(x, labels, params);
          }
        },
        spec));
    return [model](std::span<const double> row) {
      return DecisionScores(*model, row);
    };
  };
}

DatasetCv CrossValidateDataset(const Dataset& data, const TrainFn& train,
                               const FoldPlan& plan, int jobs) {
  if (data.size() == 0) throw Error(ErrorKind::kEmptyDataset, "no games");
  if (plan.n != data.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "fold plan size does not match the dataset");
  }
  DatasetCv out;
  out.folds.resize(plan.folds.size());
  out.predictions.assign(data.size(), -1);
  ParallelFor(jobs, plan.folds.size(), [&](std::size_t f) {
    try {
      std::vector<bool> in_test(data.size(), false);
      for (std::size_t i : plan.folds[f]) in_test[i] = true;
      std::vector<std::size_t> train_rows;
      train_rows.reserve(data.size() - plan.folds[f].size());
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (!in_test[i]) train_rows.push_back(i);
      }
      const Matrix x_train = TakeRows(data.x, train_rows);
      std::vector<int> y_train;
      std::vector<SeatMask> m_train;
      for (std::size_t i : train_rows) {
        y_train.push_back(data.labels[i]);
        m_train.push_back(data.resistance[i]);
      }
      const Scorer score = train(x_train, y_train);

      FoldResult& result = out.folds[f];
      result.train_accuracy = MaskedAccuracy(score, x_train, y_train, m_train);
      result.test_size = plan.folds[f].size();
      for (std::size_t i : plan.folds[f]) {
        const Seat seat = PredictMerlin(score(data.x.row(i)),
                                        data.resistance[i]);
        out.predictions[i] = seat;
        if (seat == data.labels[i]) ++result.test_correct;
      }
      result.test_accuracy = result.test_size == 0
                                 ? 0.0
                                 : static_cast<double>(result.test_correct) /
                                       static_cast<double>(result.test_size);
    } catch (const Error& e) {
      throw Error(e.kind(), "fold " + std::to_string(f + 1) + ": " + e.what());
    }
  });
  return out;
}

double ShotBreakdown::percival_fraction() const {
  return wrong == 0 ? 0.0
                    : static_cast<double>(percival) / static_cast<double>(wrong);
}

double ShotBreakdown::servant_fraction() const {
  return wrong == 0 ? 0.0
                    : static_cast<double>(servant) / static_cast<double>(wrong);
}

ErrorAnalysis AnalyzeErrors(const std::vector<GameLog>& games,
                            std::span<const Seat> predictions) {
  if (predictions.size() != games.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "one prediction per game is required");
  }
  ErrorAnalysis out;
  for (std::size_t i = 0; i < games.size(); ++i) {
    const GameLog& g = games[i];
    if (!g.assassination.has_value()) {
      throw Error(ErrorKind::kMissingHumanTarget,
                  "game '" + g.game_id + "' has no assassination record");
    }
    const bool human = g.roles[g.assassination->target] == Role::kMerlin;
    const Seat predicted = predictions[i];
    const bool model = g.roles[predicted] == Role::kMerlin;
    Contingency& c = out.contingency;
    if (human && model) {
      ++c.both;
    } else if (human) {
      ++c.human_only;
    } else if (model) {
      ++c.model_only;
    } else {
      ++c.neither;
    }
    if (!model) {
      ++out.shots.wrong;
      if (g.roles[predicted] == Role::kPercival) {
        ++out.shots.percival;
      } else if (g.roles[predicted] == Role::kLoyalServant) {
        ++out.shots.servant;
      }
    }
  }
  return out;
}

ErrorAnalysis AnalyzeErrors(const Model& model, const GameStream& stream) {
  const auto& schema = SchemaOf(model);
  if (!schema.has_value()) {
    throw Error(ErrorKind::kFeatureSchemaMismatch,
                "model carries no feature schema");
  }
  const Dataset data = BuildDataset(stream.games, *schema);
  std::vector<Seat> predictions(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    predictions[i] =
        PredictMerlin(DecisionScores(model, data.x.row(i)), data.resistance[i]);
  }
  return AnalyzeErrors(stream.games, predictions);
}

namespace {

EvalReport Assemble(const GameStream& stream, const FeatureSchema& schema,
                    std::string trainer, std::string protocol,
                    std::uint64_t seed, const DatasetCv& cv,
                    const std::vector<std::size_t>& evaluated) {
  EvalReport report;
  report.protocol = std::move(protocol);
  report.trainer = std::move(trainer);
  report.feature_schema = schema.Id();
  report.seed = seed;
  report.n = stream.games.size();
  std::size_t correct = 0, total = 0;
  for (const FoldResult& f : cv.folds) {
    report.fold_sizes.push_back(f.test_size);
    report.fold_accuracies.push_back(f.test_accuracy);
    report.fold_train_accuracies.push_back(f.train_accuracy);
    correct += f.test_correct;
    total += f.test_size;
  }
  report.mean_accuracy = Mean(report.fold_accuracies);
  report.mean_train_accuracy = Mean(report.fold_train_accuracies);
  report.pooled_accuracy =
      total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  report.random_baseline = BaselineRandom(stream, seed);
  report.human_baseline = BaselineHuman(stream);

  std::vector<GameLog> games;
  std::vector<Seat> predictions;
  for (std::size_t i : evaluated) {
    games.push_back(stream.games[i]);
    predictions.push_back(cv.predictions[i]);
  }
  if (AllHaveHumanTargets(games)) {
    report.errors = AnalyzeErrors(games, predictions);
  }
  return report;
}

}  // namespace

EvalReport CrossValidate(const GameStream& stream, const FeatureSchema& schema,
                         const TrainFn& train, std::string trainer_name, int k,
                         std::uint64_t seed, int jobs) {
  if (stream.games.empty()) throw Error(ErrorKind::kEmptyDataset, "no games");
  RequireEligible(stream);
  const FoldPlan plan = KFoldSplit(stream.games.size(), k, seed);
  const Dataset data = BuildDataset(stream.games, schema, jobs);
  const DatasetCv cv = CrossValidateDataset(data, train, plan, jobs);
  std::vector<std::size_t> all(stream.games.size());
  std::iota(all.begin(), all.end(), 0);
  return Assemble(stream, schema, std::move(trainer_name),
                  std::to_string(k) + "-fold CV", seed, cv, all);
}

EvalReport CrossValidate(const GameStream& stream, const FeatureSchema& schema,
                         const TrainerSpec& trainer, int k, std::uint64_t seed,
                         int jobs) {
  return CrossValidate(stream, schema, MakeTrainFn(trainer),
                       TrainerName(trainer), k, seed, jobs);
}

EvalReport HoldoutEvaluate(const GameStream& stream,
                           const FeatureSchema& schema,
                           const TrainerSpec& trainer, double test_fraction,
                           std::uint64_t seed) {
  if (stream.games.empty()) throw Error(ErrorKind::kEmptyDataset, "no games");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "test fraction must lie strictly between 0 and 1");
  }
  RequireEligible(stream);
  const std::size_t n = stream.games.size();
  const auto test_size = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(n)));
  if (test_size == 0 || test_size >= n) {
    throw Error(ErrorKind::kBadK, "holdout split leaves an empty side");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, kFoldStream);
  rng.Shuffle(std::span<std::size_t>(order));
  FoldPlan plan;
  plan.n = n;
  plan.seed = seed;
  plan.folds.emplace_back(order.begin(),
                          order.begin() + static_cast<long>(test_size));
  const Dataset data = BuildDataset(stream.games, schema);
  const DatasetCv cv = CrossValidateDataset(data, MakeTrainFn(trainer), plan);
  return Assemble(stream, schema, TrainerName(trainer),
                  "holdout " + Fixed(test_fraction, 2), seed, cv,
                  plan.folds.front());
}

double BaselineRandom(const GameStream& stream, std::uint64_t seed) {
  if (stream.games.empty()) return 0.0;
  Rng rng(seed, kBaselineStream);
  std::size_t correct = 0;
  for (const GameLog& g : stream.games) {
    std::vector<Seat> resistance;
    for (Seat s = 0; s < kNumPlayers; ++s) {
      if (!IsSpy(g.roles[s])) resistance.push_back(s);
    }
    const Seat shot = resistance[rng.Below(resistance.size())];
    if (g.roles[shot] == Role::kMerlin) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(stream.games.size());
}

std::optional<double> BaselineHuman(const GameStream& stream) {
  std::size_t shots = 0, hits = 0;
  for (const GameLog& g : stream.games) {
    if (!g.assassination.has_value()) continue;
    ++shots;
    if (g.assassination->correct) ++hits;
  }
  if (shots == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(shots);
}

std::string ReportText(const EvalReport& r) {
  std::ostringstream out;
  out << "protocol: " << r.protocol << " (seed " << r.seed << ", " << r.n
      << " games)\n";
  out << "features: " << r.feature_schema << "\n";
  out << "accuracy aggregation: unweighted mean of fold accuracies; pooled "
         "accuracy shown for reference\n\n";
  out << std::left << std::setw(40) << "Algorithm" << std::setw(20)
      << "Training Accuracy" << "Test Accuracy\n";
  out << std::setw(40) << "Random" << std::setw(20) << "N/A"
      << Fixed(r.random_baseline) << "\n";
  if (r.human_baseline.has_value()) {
    out << std::setw(40) << "Human" << std::setw(20) << "N/A"
        << Fixed(*r.human_baseline) << "\n";
  }
  out << std::setw(40) << r.trainer << std::setw(20)
      << Fixed(r.mean_train_accuracy) << Fixed(r.mean_accuracy) << "\n\n";
  out << "pooled test accuracy: " << Fixed(r.pooled_accuracy, 4) << "\n";
  out << "folds:\n";
  for (std::size_t f = 0; f < r.fold_accuracies.size(); ++f) {
    out << "  " << std::right << std::setw(2) << f + 1 << std::left
        << "  n=" << std::setw(6) << r.fold_sizes[f]
        << " train=" << Fixed(r.fold_train_accuracies[f], 4)
        << " test=" << Fixed(r.fold_accuracies[f], 4) << "\n";
  }
  if (r.errors.has_value()) {
    const Contingency& c = r.errors->contingency;
    const ShotBreakdown& s = r.errors->shots;
    out << "\nhuman vs model (" << c.total() << " games):\n";
    out << "  both correct:            " << c.both << "\n";
    out << "  human correct, model not: " << c.human_only << "\n";
    out << "  model correct, human not: " << c.model_only << "\n";
    out << "  neither correct:          " << c.neither << "\n";
    out << "model misses (" << s.wrong << "): Percival "
        << Fixed(100.0 * s.percival_fraction(), 1) << "%, Loyal Servant "
        << Fixed(100.0 * s.servant_fraction(), 1) << "%\n";
  }
  return out.str();
}

std::string ReportJson(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["protocol"] = r.protocol;
  j["aggregation"] = "unweighted-fold-mean";
  j["trainer"] = r.trainer;
  j["feature_schema"] = r.feature_schema;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["fold_sizes"] = r.fold_sizes;
  j["fold_accuracies"] = r.fold_accuracies;
  j["fold_train_accuracies"] = r.fold_train_accuracies;
  j["mean_accuracy"] = r.mean_accuracy;
  j["pooled_accuracy"] = r.pooled_accuracy;
  j["mean_train_accuracy"] = r.mean_train_accuracy;
  j["baselines"]["random"] = r.random_baseline;
  j["baselines"]["human"] = r.human_baseline.has_value()
                                ? nlohmann::ordered_json(*r.human_baseline)
                                : nlohmann::ordered_json(nullptr);
  if (r.errors.has_value()) {
    const Contingency& c = r.errors->contingency;
    const ShotBreakdown& s = r.errors->shots;
    j["contingency"] = {{"both", c.both},
                        {"human_only", c.human_only},
                        {"model_only", c.model_only},
                        {"neither", c.neither}};
    j["shot_breakdown"] = {{"wrong", s.wrong},
                           {"percival", s.percival_fraction()},
                           {"loyal_servant", s.servant_fraction()}};
  } else {
    j["contingency"] = nullptr;
    j["shot_breakdown"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace avalon
