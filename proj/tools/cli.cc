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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "advisor_server.h"
#include "avalon/advisor.h"
#include "avalon/error.h"
#include "avalon/evaluation.h"
#include "avalon/feature_search.h"
#include "avalon/features.h"
#include "avalon/game_io.h"
#include "avalon/model.h"
#include "avalon/simulator.h"
#include "json.hpp"
#include "manifest.h"

namespace avalon::tools {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string in;
  std::string out;
};

struct TrainFlags {
  std::string model = "linear-svc";
  std::string features = "engineered";
  std::string subset = "f1,f2,f3,f4";
  bool strict_f3 = false;
  double c = 1.0;
  double gamma = 0.0;
  CLI::Option* gamma_opt = nullptr;
  std::string layers = "16,16,8";
  int batch = 256;
  double lr = 1e-5;
  int epochs = 100;
  int max_iter = 100000;
  double tol = 0.0;
  CLI::Option* tol_opt = nullptr;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void AddCommon(CLI::App* cmd, CommonFlags& f, bool needs_in, bool needs_out) {
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* in = cmd->add_option("--in", f.in, "Input game stream (JSONL)");
  if (needs_in) in->required();
  auto* out = cmd->add_option("--out", f.out, "Output file");
  if (needs_out) out->required();
}

void AddTrainFlags(CLI::App* cmd, TrainFlags& t) {
  cmd->add_option("--model", t.model, "linear-svc | rbf-svc | mlp")
      ->check(CLI::IsMember({"linear-svc", "rbf-svc", "mlp"}))
      ->capture_default_str();
  cmd->add_option("--features", t.features, "engineered | general")
      ->check(CLI::IsMember({"engineered", "general"}))
      ->capture_default_str();
  cmd->add_option("--subset", t.subset, "Engineered statistics, e.g. f1,f2")
      ->capture_default_str();
  cmd->add_flag("--strict-f3", t.strict_f3,
                "f3 counts only all-resistance three-seat teams");
  cmd->add_option("--c", t.c, "SVC penalty C")->capture_default_str();
  t.gamma_opt = cmd->add_option("--gamma", t.gamma,
                                "RBF gamma (default 1/(d*Var(X)))");
  cmd->add_option("--layers", t.layers, "MLP hidden widths, e.g. 16,16,8")
      ->capture_default_str();
  cmd->add_option("--batch", t.batch, "MLP batch size")->capture_default_str();
  cmd->add_option("--lr", t.lr, "MLP learning rate")->capture_default_str();
  cmd->add_option("--epochs", t.epochs, "MLP epochs")->capture_default_str();
  cmd->add_option("--max-iter", t.max_iter, "Linear SVC iteration cap")
      ->capture_default_str();
  t.tol_opt = cmd->add_option(
      "--tol", t.tol, "Stopping tolerance (linear 1e-6, rbf 1e-3)");
}

std::vector<int> ParseLayers(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      const int w = std::stoi(token, &used);
      if (used != token.size() || w < 1) throw std::invalid_argument(token);
      out.push_back(w);
    } catch (const std::exception&) {
      throw UsageError("bad --layers entry '" + token + "'");
    }
  }
  return out;
}

FeatureSchema SchemaFrom(const TrainFlags& t) {
  if (t.features == "general") return GeneralSchema();
  FeatureSchema schema;
  try {
    schema = EngineeredSchema(StatSubset::Parse(t.subset));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (schema.subset.empty()) throw UsageError("--subset must not be empty");
  if (t.strict_f3) schema.full_clean = FullCleanMode::kAllResistance;
  return schema;
}

TrainerSpec TrainerFrom(const TrainFlags& t, std::uint64_t seed) {
  if (t.model == "linear-svc") {
    LinearSvcParams p;
    p.c = t.c;
    p.max_iter = t.max_iter;
    if (t.tol_opt->count() > 0) p.tol = t.tol;
    p.seed = seed;
    return p;
  }
  if (t.model == "rbf-svc") {
    RbfSvcParams p;
    p.c = t.c;
    if (t.gamma_opt->count() > 0) p.gamma = t.gamma;
    if (t.tol_opt->count() > 0) p.tol = t.tol;
    return p;
  }
  MlpConfig p;
  p.hidden = ParseLayers(t.layers);
  p.batch_size = t.batch;
  p.learning_rate = t.lr;
  p.epochs = t.epochs;
  p.seed = seed;
  return p;
}

std::string Fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

GameStream LoadEligible(const std::string& path, std::ostream& err) {
  const GameStream raw = ReadGameStream(path, Strictness::kLenient);
  for (const ParseIssue& issue : raw.parse_errors) {
    err << "skipped " << issue.message << "\n";
  }
  GameStream eligible = FilterAssassinationEligible(raw);
  if (eligible.games.size() != raw.games.size()) {
    err << "using " << eligible.games.size() << " of " << raw.games.size()
        << " games (assassination-eligible only)\n";
  }
  return eligible;
}

void WriteOutput(const std::string& path, const std::string& data,
                 std::ostream& out) {
  if (path.empty()) {
    out << data;
  } else {
    WriteFile(path, data);
  }
}

AssassinView ReadViewOrGame(const std::string& path) {
  const std::string text = ReadFile(path);
  nlohmann::json probe;
  try {
    probe = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(0, "<json>", std::string("malformed JSON: ") + e.what());
  }
  if (probe.is_object() && probe.contains("roles")) {
    return MakeAssassinView(GameFromJson(text));
  }
  return ViewFromJson(text);
}

// ---- subcommands ----------------------------------------------------------

struct SimulateFlags {
  int games = 0;
  double merlin_leak = 0.0;
  double spy_sabotage = 0.5;
  double base_approve = 0.7;
  bool eligible_only = false;
};

int RunSimulate(const CommonFlags& c, const SimulateFlags& s,
                RunManifest& manifest, std::ostream& err) {
  SimConfig config;
  config.seed = c.seed;
  config.num_games = s.games;
  config.merlin_leak = s.merlin_leak;
  config.spy_sabotage = s.spy_sabotage;
  config.base_approve = s.base_approve;
  config.eligible_only = s.eligible_only;
  const GameStream stream = SimulateDataset(config, c.jobs);
  const std::size_t bytes = WriteGameStream(stream, fs::path(c.out));
  err << "wrote " << stream.games.size() << " games (" << bytes << " bytes) to "
      << c.out << "\n";
  manifest.outputs.push_back(c.out);
  return kExitOk;
}

int RunValidate(const CommonFlags& c, RunManifest& manifest, std::ostream& out,
                std::ostream& err) {
  const std::string text = ReadFile(c.in);
  manifest.inputs.push_back(c.in);
  std::ostringstream report;
  std::size_t line_no = 0, valid = 0, invalid = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const GameLog log = GameFromJson(line, line_no);
      const auto violations = ValidateGame(log);
      if (violations.empty()) {
        ++valid;
        continue;
      }
      ++invalid;
      for (const Violation& v : violations) {
        report << "line " << line_no << " (" << log.game_id << "): " << v.rule
               << " at " << v.location << ": " << v.message << "\n";
      }
    } catch (const SchemaError& e) {
      ++invalid;
      report << e.what() << "\n";
    }
  }
  report << valid << " valid, " << invalid << " invalid\n";
  WriteOutput(c.out, report.str(), out);
  if (!c.out.empty()) manifest.outputs.push_back(c.out);
  if (invalid > 0) {
    err << invalid << " invalid game(s)\n";
    return kExitData;
  }
  return kExitOk;
}

int RunFilter(const CommonFlags& c, bool strict, RunManifest& manifest,
              std::ostream& err) {
  const GameStream raw =
      ReadGameStream(c.in, strict ? Strictness::kStrict : Strictness::kLenient);
  manifest.inputs.push_back(c.in);
  for (const ParseIssue& issue : raw.parse_errors) {
    err << "skipped " << issue.message << "\n";
  }
  const GameStream kept = FilterAssassinationEligible(raw);
  WriteGameStream(kept, fs::path(c.out));
  err << "kept " << kept.games.size() << " of " << raw.games.size()
      << " games\n";
  manifest.outputs.push_back(c.out);
  return kExitOk;
}

int RunFeaturize(const CommonFlags& c, const TrainFlags& t,
                 RunManifest& manifest, std::ostream& out) {
  const GameStream stream = ReadGameStream(c.in, Strictness::kLenient);
  manifest.inputs.push_back(c.in);
  const Dataset data = BuildDataset(stream.games, SchemaFrom(t), c.jobs);
  WriteOutput(c.out, FeaturesCsv(data), out);
  if (!c.out.empty()) manifest.outputs.push_back(c.out);
  return kExitOk;
}

int RunTrain(const CommonFlags& c, const TrainFlags& t,
             const std::string& curve_out, RunManifest& manifest,
             std::ostream& err) {
  const GameStream stream = LoadEligible(c.in, err);
  manifest.inputs.push_back(c.in);
  if (stream.games.empty()) {
    throw Error(ErrorKind::kEmptyDataset, "no eligible games in " + c.in);
  }
  const FeatureSchema schema = SchemaFrom(t);
  const Dataset data = BuildDataset(stream.games, schema, c.jobs);
  const Model model = TrainModel(TrainerFrom(t, c.seed), data);
  SaveModel(model, c.out);
  manifest.outputs.push_back(c.out);

  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (PredictMerlin(DecisionScores(model, data.x.row(i)),
                      data.resistance[i]) == data.labels[i]) {
      ++correct;
    }
  }
  err << "trained " << ModelTypeName(model) << " on " << data.size()
      << " games (" << schema.Id() << "), training accuracy "
      << Fixed(static_cast<double>(correct) / static_cast<double>(data.size()), 4)
      << "\n";
  if (const auto* mlp = std::get_if<MlpModel>(&model); mlp && !curve_out.empty()) {
    WriteFile(curve_out, TrainingCurveCsv(*mlp));
    manifest.outputs.push_back(curve_out);
  }
  return kExitOk;
}

int RunCv(const CommonFlags& c, const TrainFlags& t, int folds, double holdout,
          int repeats, RunManifest& manifest, std::ostream& out,
          std::ostream& err) {
  const GameStream stream = LoadEligible(c.in, err);
  manifest.inputs.push_back(c.in);
  const FeatureSchema schema = SchemaFrom(t);
  const bool is_mlp = t.model == "mlp";
  if (repeats < 1) repeats = is_mlp ? 5 : 1;

  std::vector<EvalReport> reports;
  for (int r = 0; r < repeats; ++r) {
    // Repeats vary only the model seed; the fold split stays fixed.
    const TrainerSpec trainer = TrainerFrom(t, c.seed + static_cast<std::uint64_t>(r));
    reports.push_back(holdout > 0.0
                          ? HoldoutEvaluate(stream, schema, trainer, holdout, c.seed)
                          : CrossValidate(stream, schema, trainer, folds, c.seed,
                                          c.jobs));
  }
  std::string text = ReportText(reports.front());
  if (repeats > 1) {
    double mean = 0.0;
    for (const auto& r : reports) mean += r.mean_accuracy;
    mean /= repeats;
    double var = 0.0;
    for (const auto& r : reports) {
      var += (r.mean_accuracy - mean) * (r.mean_accuracy - mean);
    }
    const double sd = std::sqrt(var / (repeats - 1));
    text += "\nover " + std::to_string(repeats) + " model seeds: test accuracy " +
            Fixed(mean, 3) + " +/- " + Fixed(sd, 3) + "\n";
  }
  out << text;
  if (!c.out.empty()) {
    WriteFile(c.out, ReportJson(reports.front()));
    manifest.outputs.push_back(c.out);
  }
  return kExitOk;
}

int RunSelect(const CommonFlags& c, const std::string& candidates, int folds,
              double svc_c, bool strict_f3, RunManifest& manifest,
              std::ostream& out, std::ostream& err) {
  const GameStream stream = LoadEligible(c.in, err);
  manifest.inputs.push_back(c.in);
  StatSubset cands;
  try {
    cands = StatSubset::Parse(candidates);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  LinearSvcParams svc;
  svc.c = svc_c;
  svc.seed = c.seed;
  const SearchResult result = PowersetSearch(
      stream, cands, folds, c.seed, svc, c.jobs,
      strict_f3 ? FullCleanMode::kAllResistance : FullCleanMode::kNoSpies);
  out << SearchSummary(result);
  if (!c.out.empty()) {
    WriteFile(c.out, SearchCsv(result));
    manifest.outputs.push_back(c.out);
  }
  return kExitOk;
}

int RunPredict(const CommonFlags& c, const std::string& model_path,
               const std::string& game_path, RunManifest& manifest,
               std::ostream& out) {
  const Advisor advisor(LoadModel(model_path));
  manifest.inputs.push_back(model_path);
  manifest.inputs.push_back(game_path);
  const AdviceResponse advice = advisor.Advise(ReadViewOrGame(game_path));
  WriteOutput(c.out, AdviceToJson(advice) + "\n", out);
  if (!c.out.empty()) manifest.outputs.push_back(c.out);
  return kExitOk;
}

int RunAnalyze(const CommonFlags& c, const std::string& model_path,
               RunManifest& manifest, std::ostream& out, std::ostream& err) {
  const Model model = LoadModel(model_path);
  const GameStream stream = LoadEligible(c.in, err);
  manifest.inputs.push_back(model_path);
  manifest.inputs.push_back(c.in);
  if (stream.games.empty()) {
    throw Error(ErrorKind::kEmptyDataset, "no eligible games in " + c.in);
  }
  const ErrorAnalysis analysis = AnalyzeErrors(model, stream);
  const Contingency& ct = analysis.contingency;
  const double n = static_cast<double>(ct.total());
  EvalReport report;
  report.protocol = "fixed model";
  report.trainer = std::string(ModelTypeName(model));
  report.feature_schema = SchemaOf(model)->Id();
  report.seed = c.seed;
  report.n = stream.games.size();
  report.mean_accuracy = static_cast<double>(ct.both + ct.model_only) / n;
  report.pooled_accuracy = report.mean_accuracy;
  report.fold_sizes = {stream.games.size()};
  report.fold_accuracies = {report.mean_accuracy};
  report.fold_train_accuracies = {0.0};
  report.random_baseline = BaselineRandom(stream, c.seed);
  report.human_baseline = BaselineHuman(stream);
  report.errors = analysis;
  std::ostringstream text;
  text << "model " << report.trainer << " on " << report.n << " games ("
       << report.feature_schema << ")\n";
  text << "model accuracy:  " << Fixed(report.mean_accuracy, 3) << "\n";
  text << "random baseline: " << Fixed(report.random_baseline, 3) << "\n";
  if (report.human_baseline) {
    text << "human baseline:  " << Fixed(*report.human_baseline, 3) << "\n";
  }
  text << "both correct:              " << ct.both << "\n"
       << "human correct, model not:  " << ct.human_only << "\n"
       << "model correct, human not:  " << ct.model_only << "\n"
       << "neither correct:           " << ct.neither << "\n"
       << "model misses (" << analysis.shots.wrong << "): Percival "
       << Fixed(100.0 * analysis.shots.percival_fraction(), 1)
       << "%, Loyal Servant "
       << Fixed(100.0 * analysis.shots.servant_fraction(), 1) << "%\n";
  out << text.str();
  if (!c.out.empty()) {
    WriteFile(c.out, ReportJson(report));
    manifest.outputs.push_back(c.out);
  }
  return kExitOk;
}

int RunServe(const std::string& model_path, const std::string& host, int port,
             std::ostream& err) {
  Model model;
  try {
    model = LoadModel(model_path);
  } catch (const Error& e) {
    throw Error(ErrorKind::kModelLoad, e.what());
  }
  AdvisorServer server(Advisor(std::move(model)), &err);
  err << "serving " << model_path << " on http://" << host << ":" << port
      << "\n";
  server.Listen(host, port);
  return kExitOk;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return kExitUsage;
    case ErrorKind::kIo:
    case ErrorKind::kSchema:
    case ErrorKind::kInvalidGame:
    case ErrorKind::kNonCanonical:
    case ErrorKind::kEmptyDataset:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kNonPositiveC:
    case ErrorKind::kNonPositiveGamma:
    case ErrorKind::kBadMask:
    case ErrorKind::kEmptySubset:
    case ErrorKind::kEmptyCandidates:
    case ErrorKind::kBadK:
    case ErrorKind::kMissingHumanTarget:
    case ErrorKind::kFeatureSchemaMismatch:
    case ErrorKind::kModelLoad:
      return kExitData;
  }
  return kExitInternal;
}

}  // namespace

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Assassination-phase inference for 5-player Avalon", "avalon"};
  app.require_subcommand(1);

  CommonFlags common;
  TrainFlags train;
  SimulateFlags sim;
  bool strict = false;
  int folds = 10;
  double holdout = 0.0;
  int repeats = 0;
  std::string curve_out;
  std::string candidates = "f1,f2,f3,f4,f5,f6,f7,f8,f9";
  std::string model_path;
  std::string game_path;
  std::string host = "127.0.0.1";
  int port = 8080;

  auto* simulate = app.add_subcommand("simulate", "Generate synthetic games");
  AddCommon(simulate, common, false, true);
  simulate->add_option("--games", sim.games, "Number of games")->required();
  simulate->add_option("--merlin-leak", sim.merlin_leak)
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  simulate->add_option("--spy-sabotage", sim.spy_sabotage)
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  simulate->add_option("--base-approve", sim.base_approve)
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  simulate->add_flag("--eligible-only", sim.eligible_only,
                     "Keep only games that reached the assassination");

  auto* validate = app.add_subcommand("validate", "Check games against the rules");
  AddCommon(validate, common, true, false);

  auto* filter = app.add_subcommand("filter", "Keep assassination-eligible games");
  AddCommon(filter, common, true, true);
  filter->add_flag("--strict", strict, "Abort on the first bad line");

  auto* featurize = app.add_subcommand("featurize", "Export a feature matrix as CSV");
  AddCommon(featurize, common, true, false);
  AddTrainFlags(featurize, train);

  auto* train_cmd = app.add_subcommand("train", "Train a Merlin classifier");
  AddCommon(train_cmd, common, true, true);
  AddTrainFlags(train_cmd, train);
  train_cmd->add_option("--curve-out", curve_out, "MLP training curve CSV");

  auto* cv = app.add_subcommand("cv", "Cross-validate a classifier");
  AddCommon(cv, common, true, false);
  AddTrainFlags(cv, train);
  cv->add_option("--folds", folds)->capture_default_str()->check(
      CLI::Range(2, 1 << 30));
  cv->add_option("--holdout", holdout,
                 "Use one shuffled split with this test fraction instead")
      ->check(CLI::Range(0.0, 1.0));
  cv->add_option("--repeats", repeats,
                 "Model seeds to average (default 5 for mlp, else 1)");

  auto* select = app.add_subcommand("select-features",
                                    "Powerset search over engineered statistics");
  AddCommon(select, common, true, false);
  select->add_option("--folds", folds)->capture_default_str()->check(
      CLI::Range(2, 1 << 30));
  select->add_option("--candidates", candidates)->capture_default_str();
  select->add_option("--c", train.c, "SVC penalty C")->capture_default_str();
  select->add_flag("--strict-f3", train.strict_f3);

  auto* predict = app.add_subcommand("predict", "Recommend a target for one game");
  AddCommon(predict, common, false, false);
  predict->add_option("--model", model_path)->required();
  predict->add_option("--game", game_path,
                      "Game record or assassin view (JSON)")->required();

  auto* analyze = app.add_subcommand("analyze", "Human vs model error analysis");
  AddCommon(analyze, common, true, false);
  analyze->add_option("--model", model_path)->required();

  auto* serve = app.add_subcommand("serve", "Run the advisor HTTP service");
  AddCommon(serve, common, false, false);
  serve->add_option("--model", model_path)->required();
  serve->add_option("--port", port)->capture_default_str()->check(
      CLI::Range(0, 65535));
  serve->add_option("--host", host)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunManifest manifest;
  manifest.subcommand = chosen->get_name();
  manifest.args = args;
  manifest.seed = common.seed;
  manifest.jobs = common.jobs;
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    manifest.flags[opt->get_name()] = opt->as<std::string>();
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const std::string name = chosen->get_name();
    if (name == "simulate") {
      code = RunSimulate(common, sim, manifest, err);
    } else if (name == "validate") {
      code = RunValidate(common, manifest, out, err);
    } else if (name == "filter") {
      code = RunFilter(common, strict, manifest, err);
    } else if (name == "featurize") {
      code = RunFeaturize(common, train, manifest, out);
    } else if (name == "train") {
      code = RunTrain(common, train, curve_out, manifest, err);
    } else if (name == "cv") {
      code = RunCv(common, train, folds, holdout, repeats, manifest, out, err);
    } else if (name == "select-features") {
      code = RunSelect(common, candidates, folds, train.c, train.strict_f3,
                       manifest, out, err);
    } else if (name == "predict") {
      code = RunPredict(common, model_path, game_path, manifest, out);
    } else if (name == "analyze") {
      code = RunAnalyze(common, model_path, manifest, out, err);
    } else if (name == "serve") {
      return RunServe(model_path, host, port, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  manifest.duration_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
  try {
    manifest.Write();
  } catch (const Error& e) {
    err << "error: cannot write manifest: " << e.what() << "\n";
    return kExitData;
  }
  return code;
}

}  // namespace avalon::tools
