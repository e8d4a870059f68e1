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

#include "avalon/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "avalon/error.h"
#include "avalon/rng.h"

namespace avalon {

namespace {

// Activations of one forward pass: inputs[l] feeds layer l, pre[l] is its
// affine output.
struct Trace {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre;
};

Trace RunForward(const MlpModel& model, std::span<const double> x) {
  Trace trace;
  std::vector<double> current(x.begin(), x.end());
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer& layer = model.layers[l];
    std::vector<double> z(layer.bias);
    for (std::size_t o = 0; o < z.size(); ++o) {
      z[o] += Dot(layer.weights.row(o), current);
    }
    trace.inputs.push_back(current);
    trace.pre.push_back(z);
    if (l + 1 < model.layers.size()) {
      for (double& v : z) v = std::max(0.0, v);
    }
    current = std::move(z);
  }
  return trace;
}

Scores ToScores(const std::vector<double>& v) {
  Scores s{};
  std::copy(v.begin(), v.end(), s.begin());
  return s;
}

void CheckInput(const MlpModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                "feature vector has " + std::to_string(x.size()) +
                    " entries, network expects " +
                    std::to_string(model.input_dim));
  }
}

std::size_t ParameterCount(const MlpModel& model) {
  std::size_t n = 0;
  for (const DenseLayer& l : model.layers) {
    n += l.weights.rows() * l.weights.cols() + l.bias.size();
  }
  return n;
}

// Accumulates d(loss)/d(params) for one example into `grad` (flattened
// layout) and returns the example loss.
double Backprop(const MlpModel& model, std::span<const double> x, int label,
                std::span<double> grad) {
  const Trace trace = RunForward(model, x);
  const Scores probs = Softmax(ToScores(trace.pre.back()));
  const double loss = -std::log(std::max(probs[label], 1e-300));

  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const DenseLayer& l : model.layers) {
    offsets.push_back(offset);
    offset += l.weights.rows() * l.weights.cols() + l.bias.size();
  }

  std::vector<double> delta(probs.begin(), probs.end());
  delta[label] -= 1.0;
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const DenseLayer& layer = model.layers[l];
    const std::vector<double>& in = trace.inputs[l];
    const std::size_t rows = layer.weights.rows();
    const std::size_t cols = layer.weights.cols();
    double* gw = grad.data() + offsets[l];
    double* gb = gw + rows * cols;
    for (std::size_t o = 0; o < rows; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      double* row = gw + o * cols;
      for (std::size_t i = 0; i < cols; ++i) row[i] += d * in[i];
      gb[o] += d;
    }
    if (l == 0) break;
    std::vector<double> prev(cols, 0.0);
    for (std::size_t o = 0; o < rows; ++o) {
      if (delta[o] == 0.0) continue;
      Axpy(delta[o], layer.weights.row(o), prev);
    }
    const std::vector<double>& z = trace.pre[l - 1];
    for (std::size_t i = 0; i < cols; ++i) {
      if (z[i] <= 0.0) prev[i] = 0.0;
    }
    delta = std::move(prev);
  }
  return loss;
}

std::vector<bool> KinkPattern(const MlpModel& model,
                              std::span<const double> x) {
  const Trace trace = RunForward(model, x);
  std::vector<bool> pattern;
  for (std::size_t l = 0; l + 1 < trace.pre.size(); ++l) {
    for (double z : trace.pre[l]) pattern.push_back(z > 0.0);
  }
  return pattern;
}

}  // namespace

void MlpConfig::Validate() const {
  for (int w : hidden) {
    if (w < 1) {
      throw Error(ErrorKind::kInvalidArgument, "layer widths must be >= 1");
    }
  }
  if (batch_size < 1) {
    throw Error(ErrorKind::kInvalidArgument, "batch size must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be positive");
  }
  if (epochs < 0) {
    throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 0");
  }
}

MlpModel InitMlp(std::size_t input_dim, const MlpConfig& config) {
  config.Validate();
  MlpModel model;
  model.config = config;
  model.input_dim = input_dim;
  Rng rng(config.seed, 0);
  std::vector<std::size_t> widths = {input_dim};
  for (int w : config.hidden) widths.push_back(static_cast<std::size_t>(w));
  widths.push_back(kNumClasses);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t fan_in = widths[l];
    const std::size_t fan_out = widths[l + 1];
    const double limit =
        std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer;
    layer.weights = Matrix(fan_out, fan_in);
    for (double& w : layer.weights.data()) {
      w = (2.0 * rng.Uniform() - 1.0) * limit;
    }
    layer.bias.assign(fan_out, 0.0);
    model.layers.push_back(std::move(layer));
  }
  return model;
}

MlpModel TrainMlp(const Matrix& x, std::span<const int> labels,
                  const MlpConfig& config) {
  if (x.rows() == 0) throw Error(ErrorKind::kEmptyDataset, "no training rows");
  if (labels.size() != x.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "label count does not match row count");
  }
  MlpModel model = InitMlp(x.cols(), config);
  const std::size_t n = x.rows();
  const std::size_t p = ParameterCount(model);
  std::vector<double> params = FlattenParameters(model);
  std::vector<double> m(p, 0.0), v(p, 0.0), grad(p);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(config.seed, 1);
  long long step = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.Shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < n;
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end =
          std::min(n, start + static_cast<std::size_t>(config.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = start; i < end; ++i) {
        Backprop(model, x.row(order[i]), labels[order[i]], grad);
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      ++step;
      const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
      for (std::size_t j = 0; j < p; ++j) {
        const double g = grad[j] * scale;
        m[j] = config.beta1 * m[j] + (1.0 - config.beta1) * g;
        v[j] = config.beta2 * v[j] + (1.0 - config.beta2) * g * g;
        params[j] -= config.learning_rate * (m[j] / bc1) /
                     (std::sqrt(v[j] / bc2) + config.epsilon);
      }
      SetParameters(model, params);
    }

    EpochStats stats;
    stats.epoch = epoch;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Scores probs = Forward(model, x.row(i));
      stats.loss -= std::log(std::max(probs[labels[i]], 1e-300));
      if (ArgMax(probs) == labels[i]) ++correct;
    }
    stats.loss /= static_cast<double>(n);
    stats.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    model.training_curve.push_back(stats);
  }
  return model;
}

Scores Softmax(const Scores& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  Scores out{};
  double sum = 0.0;
  for (int k = 0; k < kNumClasses; ++k) {
    out[k] = std::exp(logits[k] - top);
    sum += out[k];
  }
  for (double& v : out) v /= sum;
  return out;
}

Scores Logits(const MlpModel& model, std::span<const double> x) {
  CheckInput(model, x);
  return ToScores(RunForward(model, x).pre.back());
}

Scores Forward(const MlpModel& model, std::span<const double> x) {
  return Softmax(Logits(model, x));
}

double CrossEntropy(const MlpModel& model, std::span<const double> x,
                    int label) {
  const Scores logits = Logits(model, x);
  // log-sum-exp form keeps the loss accurate when probabilities are tiny.
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - top);
  return top + std::log(sum) - logits[label];
}

std::vector<double> ParameterGradient(const MlpModel& model,
                                      std::span<const double> x, int label) {
  CheckInput(model, x);
  std::vector<double> grad(ParameterCount(model), 0.0);
  Backprop(model, x, label, grad);
  return grad;
}

std::vector<double> FlattenParameters(const MlpModel& model) {
  std::vector<double> out;
  out.reserve(ParameterCount(model));
  for (const DenseLayer& l : model.layers) {
    const auto w = l.weights.data();
    out.insert(out.end(), w.begin(), w.end());
    out.insert(out.end(), l.bias.begin(), l.bias.end());
  }
  return out;
}

void SetParameters(MlpModel& model, std::span<const double> params) {
  if (params.size() != ParameterCount(model)) {
    throw Error(ErrorKind::kDimensionMismatch, "parameter count mismatch");
  }
  std::size_t pos = 0;
  for (DenseLayer& l : model.layers) {
    auto w = l.weights.data();
    std::copy(params.begin() + static_cast<long>(pos),
              params.begin() + static_cast<long>(pos + w.size()), w.begin());
    pos += w.size();
    std::copy(params.begin() + static_cast<long>(pos),
              params.begin() + static_cast<long>(pos + l.bias.size()),
              l.bias.begin());
    pos += l.bias.size();
  }
}

GradientCheckResult GradientCheck(const MlpModel& model,
                                  std::span<const double> x, int label,
                                  double h) {
  CheckInput(model, x);
  const std::vector<double> analytic = ParameterGradient(model, x, label);
  const std::vector<double> base = FlattenParameters(model);
  const std::vector<bool> pattern = KinkPattern(model, x);

  GradientCheckResult result;
  MlpModel probe = model;
  std::vector<double> params = base;
  for (std::size_t j = 0; j < base.size(); ++j) {
    params[j] = base[j] + h;
    SetParameters(probe, params);
    const double f_plus = CrossEntropy(probe, x, label);
    const bool kink_plus = KinkPattern(probe, x) != pattern;
    params[j] = base[j] - h;
    SetParameters(probe, params);
    const double f_minus = CrossEntropy(probe, x, label);
    const bool kink_minus = KinkPattern(probe, x) != pattern;
    params[j] = base[j];

    if (kink_plus || kink_minus) {
      ++result.excluded_at_kink;
      continue;
    }
    const double numeric = (f_plus - f_minus) / (2.0 * h);
    const double err = std::abs(analytic[j] - numeric) /
                       std::max(1e-12, std::abs(analytic[j]) + std::abs(numeric));
    result.max_relative_error = std::max(result.max_relative_error, err);
    ++result.checked;
  }
  return result;
}

}  // namespace avalon
