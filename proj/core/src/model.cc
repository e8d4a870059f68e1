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

#include "avalon/model.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "avalon/error.h"
#include "avalon/game_io.h"
#include "json.hpp"

namespace avalon {

namespace {

using Json = nlohmann::ordered_json;

// Doubles are carried through the document as tagged strings and spliced
// back as bare numbers after dumping, so the text uses std::to_chars'
// shortest round-trip form.
constexpr std::string_view kDoubleTag = "\x01" "D:";
constexpr std::string_view kDumpedTag = "\"\\u0001D:";

Json Num(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot serialize a non-finite parameter");
  }
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string text(kDoubleTag);
  text.append(buf.data(), end);
  return text;
}

Json NumArray(std::span<const double> values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(Num(v));
  return arr;
}

Json MatrixJson(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(NumArray(m.row(r)));
  return rows;
}

std::string Splice(const std::string& dumped) {
  std::string out;
  out.reserve(dumped.size());
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = dumped.find(kDumpedTag, pos);
    if (hit == std::string::npos) break;
    out.append(dumped, pos, hit - pos);
    const std::size_t start = hit + kDumpedTag.size();
    const std::size_t close = dumped.find('"', start);
    out.append(dumped, start, close - start);
    pos = close + 1;
  }
  out.append(dumped, pos, std::string::npos);
  return out;
}

Json SchemaJson(const std::optional<FeatureSchema>& schema, std::size_t dim) {
  Json j;
  if (!schema.has_value()) {
    j["id"] = "raw:" + std::to_string(dim);
    j["kind"] = "raw";
    j["dim"] = dim;
    return j;
  }
  j["id"] = schema->Id();
  j["kind"] = schema->kind == FeatureKind::kGeneral ? "general" : "engineered";
  Json subset = Json::array();
  for (Stat s : schema->subset.stats()) subset.push_back(StatId(s));
  j["subset"] = subset;
  j["full_clean"] = schema->full_clean == FullCleanMode::kNoSpies
                        ? "no-spies"
                        : "all-resistance";
  j["dim"] = schema->dim();
  return j;
}

[[noreturn]] void LoadFail(const std::string& what) {
  throw Error(ErrorKind::kModelLoad, "invalid model file: " + what);
}

const nlohmann::json& Field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    LoadFail(std::string("missing '") + key + "'");
  }
  return j.at(key);
}

double ReadNum(const nlohmann::json& j) {
  if (!j.is_number()) LoadFail("expected a number");
  return j.get<double>();
}

std::vector<double> ReadNums(const nlohmann::json& j) {
  if (!j.is_array()) LoadFail("expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(ReadNum(v));
  return out;
}

Matrix ReadMatrix(const nlohmann::json& j, std::size_t cols) {
  if (!j.is_array()) LoadFail("expected a matrix");
  Matrix m(0, cols);
  for (const auto& row : j) {
    const std::vector<double> values = ReadNums(row);
    if (values.size() != cols) LoadFail("matrix row has the wrong width");
    m.AppendRow(values);
  }
  return m;
}

std::size_t ReadSize(const nlohmann::json& j) {
  if (!j.is_number_unsigned() && !j.is_number_integer()) {
    LoadFail("expected an integer");
  }
  const long long v = j.get<long long>();
  if (v < 0) LoadFail("expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::pair<std::optional<FeatureSchema>, std::size_t> ReadSchema(
    const nlohmann::json& j) {
  const std::string kind = Field(j, "kind").get<std::string>();
  const std::size_t dim = ReadSize(Field(j, "dim"));
  if (kind == "raw") return {std::nullopt, dim};
  FeatureSchema schema;
  if (kind == "general") {
    schema = GeneralSchema();
  } else if (kind == "engineered") {
    std::string ids;
    for (const auto& id : Field(j, "subset")) {
      if (!ids.empty()) ids += ',';
      ids += id.get<std::string>();
    }
    schema = EngineeredSchema(StatSubset::Parse(ids));
    const std::string mode = Field(j, "full_clean").get<std::string>();
    if (mode == "all-resistance") {
      schema.full_clean = FullCleanMode::kAllResistance;
    } else if (mode != "no-spies") {
      LoadFail("unknown full_clean mode '" + mode + "'");
    }
  } else {
    LoadFail("unknown feature kind '" + kind + "'");
  }
  if (schema.dim() != dim) LoadFail("feature_schema dim disagrees with subset");
  return {schema, dim};
}

template <typename T>
std::vector<T> Collect(const std::vector<BinaryTrainingStats>& stats,
                       T BinaryTrainingStats::*field) {
  std::vector<T> out;
  for (const auto& s : stats) out.push_back(s.*field);
  return out;
}

Json LinearJson(const LinearSvcModel& m) {
  Json j;
  j["c"] = Num(m.c);
  Json weights = Json::array();
  for (const auto& w : m.weights) weights.push_back(NumArray(w));
  j["weights"] = weights;
  j["biases"] = NumArray(m.biases);
  Json meta;
  meta["seed"] = m.seed;
  meta["absent_classes"] = m.absent_classes;
  meta["iterations"] = Collect(m.stats, &BinaryTrainingStats::iterations);
  meta["initial_grad_norm"] =
      NumArray(Collect(m.stats, &BinaryTrainingStats::initial_grad_norm));
  meta["final_grad_norm"] =
      NumArray(Collect(m.stats, &BinaryTrainingStats::final_grad_norm));
  meta["objective"] = NumArray(Collect(m.stats, &BinaryTrainingStats::objective));
  Json converged = Json::array();
  for (const auto& s : m.stats) converged.push_back(s.converged);
  meta["converged"] = converged;
  j["training_meta"] = meta;
  return j;
}

Json KernelJson(const KernelSvcModel& m) {
  Json j;
  j["c"] = Num(m.c);
  j["gamma"] = Num(m.gamma);
  j["absent_classes"] = m.absent_classes;
  Json classes = Json::array();
  for (const KernelClassifier& cls : m.classes) {
    Json cj;
    cj["bias"] = Num(cls.bias);
    cj["coefficients"] = NumArray(cls.coefficients);
    cj["support_vectors"] = MatrixJson(cls.support_vectors);
    cj["iterations"] = cls.iterations;
    cj["kkt_gap"] = Num(cls.kkt_gap);
    cj["converged"] = cls.converged;
    classes.push_back(cj);
  }
  j["classifiers"] = classes;
  return j;
}

Json MlpJson(const MlpModel& m) {
  Json j;
  Json config;
  config["hidden"] = m.config.hidden;
  config["batch_size"] = m.config.batch_size;
  config["learning_rate"] = Num(m.config.learning_rate);
  config["epochs"] = m.config.epochs;
  config["seed"] = m.config.seed;
  config["beta1"] = Num(m.config.beta1);
  config["beta2"] = Num(m.config.beta2);
  config["epsilon"] = Num(m.config.epsilon);
  j["config"] = config;
  Json layers = Json::array();
  for (const DenseLayer& l : m.layers) {
    Json lj;
    lj["weights"] = MatrixJson(l.weights);
    lj["bias"] = NumArray(l.bias);
    layers.push_back(lj);
  }
  j["layers"] = layers;
  Json curve = Json::array();
  for (const EpochStats& e : m.training_curve) {
    Json ej;
    ej["epoch"] = e.epoch;
    ej["loss"] = Num(e.loss);
    ej["accuracy"] = Num(e.accuracy);
    curve.push_back(ej);
  }
  j["training_curve"] = curve;
  return j;
}

LinearSvcModel ReadLinear(const nlohmann::json& j, std::size_t dim) {
  LinearSvcModel m;
  m.dim = dim;
  m.c = ReadNum(Field(j, "c"));
  const auto& weights = Field(j, "weights");
  if (!weights.is_array() || weights.size() != kNumClasses) {
    LoadFail("expected 5 weight vectors");
  }
  for (const auto& w : weights) {
    m.weights.push_back(ReadNums(w));
    if (m.weights.back().size() != dim) LoadFail("weight vector width");
  }
  const std::vector<double> biases = ReadNums(Field(j, "biases"));
  if (biases.size() != kNumClasses) LoadFail("expected 5 biases");
  std::copy(biases.begin(), biases.end(), m.biases.begin());
  if (j.contains("training_meta")) {
    const auto& meta = j.at("training_meta");
    m.seed = Field(meta, "seed").get<std::uint64_t>();
    m.absent_classes = Field(meta, "absent_classes").get<std::vector<int>>();
    const auto iters = Field(meta, "iterations").get<std::vector<int>>();
    const auto g0 = ReadNums(Field(meta, "initial_grad_norm"));
    const auto g1 = ReadNums(Field(meta, "final_grad_norm"));
    const auto obj = ReadNums(Field(meta, "objective"));
    const auto conv = Field(meta, "converged").get<std::vector<bool>>();
    for (std::size_t k = 0; k < iters.size() && k < g0.size() &&
                            k < g1.size() && k < obj.size() && k < conv.size();
         ++k) {
      m.stats.push_back({iters[k], g0[k], g1[k], obj[k], conv[k]});
    }
  }
  return m;
}

KernelSvcModel ReadKernel(const nlohmann::json& j, std::size_t dim) {
  KernelSvcModel m;
  m.dim = dim;
  m.c = ReadNum(Field(j, "c"));
  m.gamma = ReadNum(Field(j, "gamma"));
  m.absent_classes = Field(j, "absent_classes").get<std::vector<int>>();
  const auto& classes = Field(j, "classifiers");
  if (!classes.is_array() || classes.size() != kNumClasses) {
    LoadFail("expected 5 classifiers");
  }
  for (const auto& cj : classes) {
    KernelClassifier cls;
    cls.bias = ReadNum(Field(cj, "bias"));
    cls.coefficients = ReadNums(Field(cj, "coefficients"));
    cls.support_vectors = ReadMatrix(Field(cj, "support_vectors"), dim);
    if (cls.support_vectors.rows() != cls.coefficients.size()) {
      LoadFail("support vector count disagrees with coefficients");
    }
    cls.iterations = Field(cj, "iterations").get<long long>();
    cls.kkt_gap = ReadNum(Field(cj, "kkt_gap"));
    cls.converged = Field(cj, "converged").get<bool>();
    m.classes.push_back(std::move(cls));
  }
  return m;
}

MlpModel ReadMlp(const nlohmann::json& j, std::size_t dim) {
  MlpModel m;
  m.input_dim = dim;
  const auto& config = Field(j, "config");
  m.config.hidden = Field(config, "hidden").get<std::vector<int>>();
  m.config.batch_size = Field(config, "batch_size").get<int>();
  m.config.learning_rate = ReadNum(Field(config, "learning_rate"));
  m.config.epochs = Field(config, "epochs").get<int>();
  m.config.seed = Field(config, "seed").get<std::uint64_t>();
  m.config.beta1 = ReadNum(Field(config, "beta1"));
  m.config.beta2 = ReadNum(Field(config, "beta2"));
  m.config.epsilon = ReadNum(Field(config, "epsilon"));
  std::size_t in = dim;
  const auto& layers = Field(j, "layers");
  if (!layers.is_array() || layers.size() != m.config.hidden.size() + 1) {
    LoadFail("layer count disagrees with config");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    DenseLayer layer;
    layer.weights = ReadMatrix(Field(layers[l], "weights"), in);
    layer.bias = ReadNums(Field(layers[l], "bias"));
    const std::size_t out = l < m.config.hidden.size()
                                ? static_cast<std::size_t>(m.config.hidden[l])
                                : static_cast<std::size_t>(kNumClasses);
    if (layer.weights.rows() != out || layer.bias.size() != out) {
      LoadFail("layer shape does not chain");
    }
    in = out;
    m.layers.push_back(std::move(layer));
  }
  for (const auto& ej : Field(j, "training_curve")) {
    m.training_curve.push_back({Field(ej, "epoch").get<int>(),
                                ReadNum(Field(ej, "loss")),
                                ReadNum(Field(ej, "accuracy"))});
  }
  return m;
}

}  // namespace

std::string_view ModelTypeName(const Model& model) {
  switch (model.index()) {
    case 0: return "linear-svc";
    case 1: return "rbf-svc";
    default: return "mlp";
  }
}

Scores DecisionScores(const Model& model, std::span<const double> x) {
  return std::visit(
      [&](const auto& m) -> Scores {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MlpModel>) {
          return Forward(m, x);
        } else {
          return DecisionScores(m, x);
        }
      },
      model);
}

std::size_t InputDim(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MlpModel>) {
          return m.input_dim;
        } else {
          return m.dim;
        }
      },
      model);
}

const std::optional<FeatureSchema>& SchemaOf(const Model& model) {
  return std::visit(
      [](const auto& m) -> const std::optional<FeatureSchema>& {
        return m.schema;
      },
      model);
}

void SetSchema(Model& model, const FeatureSchema& schema) {
  std::visit([&](auto& m) { m.schema = schema; }, model);
}

std::string ModelToJson(const Model& model) {
  Json j;
  j["format_version"] = kModelFormatVersion;
  j["model_type"] = std::string(ModelTypeName(model));
  j["feature_schema"] = SchemaJson(SchemaOf(model), InputDim(model));
  j["classes"] = {0, 1, 2, 3, 4};
  Json params = std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LinearSvcModel>) {
          return LinearJson(m);
        } else if constexpr (std::is_same_v<T, KernelSvcModel>) {
          return KernelJson(m);
        } else {
          return MlpJson(m);
        }
      },
      model);
  for (auto& [key, value] : params.items()) j[key] = value;
  return Splice(j.dump()) + "\n";
}

Model ModelFromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    LoadFail(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (Field(j, "format_version").get<int>() != kModelFormatVersion) {
      LoadFail("unsupported format_version");
    }
    const std::string type = Field(j, "model_type").get<std::string>();
    auto [schema, dim] = ReadSchema(Field(j, "feature_schema"));
    Model model;
    if (type == "linear-svc") {
      model = ReadLinear(j, dim);
    } else if (type == "rbf-svc") {
      model = ReadKernel(j, dim);
    } else if (type == "mlp") {
      model = ReadMlp(j, dim);
    } else {
      LoadFail("unknown model_type '" + type + "'");
    }
    if (schema.has_value()) SetSchema(model, *schema);
    return model;
  } catch (const nlohmann::json::exception& e) {
    LoadFail(e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kModelLoad) throw;
    LoadFail(e.what());
  }
}

void SaveModel(const Model& model, const std::filesystem::path& path) {
  WriteFile(path, ModelToJson(model));
}

Model LoadModel(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::kModelLoad, e.what());
  }
  return ModelFromJson(text);
}

std::string TrainingCurveCsv(const MlpModel& model) {
  std::ostringstream out;
  out << "epoch,loss,accuracy\n";
  for (const EpochStats& e : model.training_curve) {
    std::array<char, 32> loss{}, acc{};
    auto l_end = std::to_chars(loss.data(), loss.data() + loss.size(), e.loss).ptr;
    auto a_end = std::to_chars(acc.data(), acc.data() + acc.size(), e.accuracy).ptr;
    out << e.epoch << ',' << std::string_view(loss.data(), l_end - loss.data())
        << ',' << std::string_view(acc.data(), a_end - acc.data()) << '\n';
  }
  return out.str();
}

std::string SchemaToJson(const FeatureSchema& schema) {
  return SchemaJson(schema, schema.dim()).dump();
}

}  // namespace avalon
