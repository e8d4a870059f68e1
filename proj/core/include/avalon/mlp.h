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

#ifndef AVALON_MLP_H_
#define AVALON_MLP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avalon/features.h"
#include "avalon/linalg.h"
#include "avalon/svm.h"

namespace avalon {

// Fully connected ReLU network with a 5-way softmax output trained on mean
// cross-entropy with Adam. `hidden` lists hidden-layer widths; an empty list
// gives multinomial logistic regression.
struct MlpConfig {
  std::vector<int> hidden = {16, 16, 8};
  int batch_size = 256;
  double learning_rate = 1e-5;
  int epochs = 100;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
};

struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;      // mean cross-entropy over the training set
  double accuracy = 0.0;  // unmasked argmax accuracy
};

struct MlpModel {
  std::vector<DenseLayer> layers;
  MlpConfig config;
  std::size_t input_dim = 0;
  std::optional<FeatureSchema> schema;
  std::vector<EpochStats> training_curve;
};

// Glorot-uniform weights, zero biases.
MlpModel InitMlp(std::size_t input_dim, const MlpConfig& config);

// Throws EmptyDataset, DimensionMismatch, InvalidArgument.
MlpModel TrainMlp(const Matrix& x, std::span<const int> labels,
                  const MlpConfig& config);

// Softmax probabilities over the five seats.
Scores Forward(const MlpModel& model, std::span<const double> x);
// Pre-softmax activations of the output layer.
Scores Logits(const MlpModel& model, std::span<const double> x);
Scores Softmax(const Scores& logits);

double CrossEntropy(const MlpModel& model, std::span<const double> x,
                    int label);

// Analytic gradient of CrossEntropy with respect to every parameter, laid
// out layer by layer as weights (row-major) then bias.
std::vector<double> ParameterGradient(const MlpModel& model,
                                      std::span<const double> x, int label);
std::vector<double> FlattenParameters(const MlpModel& model);
void SetParameters(MlpModel& model, std::span<const double> params);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  // Parameters whose perturbation moved a ReLU input across zero; the loss
  // is not differentiable there, so they are left out of the maximum.
  std::size_t excluded_at_kink = 0;
};

// Compares ParameterGradient with central differences of step h.
// Relative error is |a - n| / max(1e-12, |a| + |n|).
GradientCheckResult GradientCheck(const MlpModel& model,
                                  std::span<const double> x, int label,
                                  double h = 1e-5);

}  // namespace avalon

#endif  // AVALON_MLP_H_
