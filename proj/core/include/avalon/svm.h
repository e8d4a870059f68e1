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

#ifndef AVALON_SVM_H_
#define AVALON_SVM_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avalon/features.h"
#include "avalon/game.h"
#include "avalon/linalg.h"

namespace avalon {

inline constexpr int kNumClasses = kNumPlayers;
using Scores = std::array<double, kNumClasses>;

// ---------------------------------------------------------------------------
// Linear one-vs-rest classifier.
//
// For every class k the trainer minimizes
//   F_k(w, b) = 1/2 |w|^2 + C * sum_i max(0, 1 - y_i (w.x_i + b))^2
// with y_i = +1 iff label_i == k. The bias is not regularized. F_k is convex
// and continuously differentiable, so convergence is certified by the
// gradient norm: training stops once |grad F_k| <= tol * max(1, |grad F_k(0)|).
// ---------------------------------------------------------------------------

struct LinearSvcParams {
  double c = 1.0;
  int max_iter = 100000;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

struct BinaryTrainingStats {
  int iterations = 0;
  double initial_grad_norm = 0.0;
  double final_grad_norm = 0.0;
  double objective = 0.0;
  bool converged = false;
};

struct LinearSvcModel {
  std::vector<std::vector<double>> weights;  // one row of length dim per class
  Scores biases{};
  double c = 1.0;
  std::size_t dim = 0;
  std::optional<FeatureSchema> schema;
  // Training metadata.
  std::vector<BinaryTrainingStats> stats;
  std::vector<int> absent_classes;
  std::uint64_t seed = 0;
};

struct BinaryLinearSolution {
  std::vector<double> w;
  double b = 0.0;
  BinaryTrainingStats stats;
};

// Solves one binary problem; labels must be +1/-1. Uses a Newton method
// with conjugate-gradient inner solves and Armijo backtracking; the
// objective is piecewise quadratic, so the generalized Hessian is exact
// away from the hinge points.
BinaryLinearSolution TrainBinaryLinearSvc(const Matrix& x,
                                          std::span<const int> y, double c,
                                          int max_iter, double tol);

// Throws EmptyDataset, DimensionMismatch, NonPositiveC.
LinearSvcModel TrainLinearSvc(const Matrix& x, std::span<const int> labels,
                              const LinearSvcParams& params = {});

// ---------------------------------------------------------------------------
// RBF-kernel one-vs-rest classifier trained on the C-SVC dual by SMO with
// second-order working-set selection.
// ---------------------------------------------------------------------------

struct RbfSvcParams {
  double c = 1.0;
  // Absent selects 1 / (dim * variance of all entries), or 1 if the variance
  // is zero.
  std::optional<double> gamma;
  double tol = 1e-3;
  long long max_iter = 0;  // 0 selects max(10^7, 100 n)
};

struct KernelClassifier {
  Matrix support_vectors;
  std::vector<double> coefficients;  // alpha_i * y_i
  double bias = 0.0;
  long long iterations = 0;
  double kkt_gap = 0.0;  // maximal violating-pair gap at exit
  bool converged = false;
};

struct KernelSvcModel {
  std::vector<KernelClassifier> classes;
  double gamma = 1.0;
  double c = 1.0;
  std::size_t dim = 0;
  std::optional<FeatureSchema> schema;
  std::vector<int> absent_classes;
};

struct BinaryKernelSolution {
  std::vector<double> alpha;  // one per training row
  double bias = 0.0;
  long long iterations = 0;
  double kkt_gap = 0.0;
  bool converged = false;
};

// `kernel` is the full n x n Gram matrix; labels are +1/-1.
BinaryKernelSolution SolveKernelSvcDual(const Matrix& kernel,
                                        std::span<const int> y, double c,
                                        double tol, long long max_iter);

double RbfKernel(std::span<const double> a, std::span<const double> b,
                 double gamma);
double DefaultGamma(const Matrix& x);

// Throws EmptyDataset, DimensionMismatch, NonPositiveC, NonPositiveGamma.
KernelSvcModel TrainRbfSvc(const Matrix& x, std::span<const int> labels,
                           const RbfSvcParams& params = {});

// ---------------------------------------------------------------------------
// Scoring.
// ---------------------------------------------------------------------------

Scores DecisionScores(const LinearSvcModel& model, std::span<const double> x);
Scores DecisionScores(const KernelSvcModel& model, std::span<const double> x);

// Argmax over seats allowed by the mask; ties go to the lowest seat. The
// mask must select exactly three seats (Error(kBadMask) otherwise).
Seat PredictMerlin(const Scores& scores, const SeatMask& resistance);

// Unmasked argmax, lowest index on ties.
int ArgMax(const Scores& scores);

}  // namespace avalon

#endif  // AVALON_SVM_H_
