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

#include "avalon/svm.h"

#include <cmath>

#include "avalon/error.h"
#include "avalon/rng.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace avalon {
namespace {

using ::avalon::testing::KktAudit;
using ::avalon::testing::LinearGradient;
using ::avalon::testing::LinearObjective;
using ::avalon::testing::RandomMatrix;
using ::avalon::testing::ReferenceLinearSvc;

std::vector<int> RandomLabels(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 0x1abe1);
  std::vector<int> y(n);
  for (int& v : y) v = static_cast<int>(rng.Below(kNumClasses));
  return y;
}

std::vector<int> OneVsRest(std::span<const int> labels, int k) {
  std::vector<int> y;
  for (int l : labels) y.push_back(l == k ? 1 : -1);
  return y;
}

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Matrix GramMatrix(const Matrix& x, double gamma) {
  Matrix k(x.rows(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.rows(); ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < x.cols(); ++c) {
        d2 += (x(i, c) - x(j, c)) * (x(i, c) - x(j, c));
      }
      k(i, j) = std::exp(-gamma * d2);
    }
  }
  return k;
}

TEST(LinearSvc, SeparablePair) {
  Matrix x(2, 1);
  x(0, 0) = 1.0;
  x(1, 0) = -1.0;
  const std::vector<int> labels = {0, 1};
  const LinearSvcModel m = TrainLinearSvc(x, labels);
  EXPECT_EQ(ArgMax(DecisionScores(m, x.row(0))), 0);
  EXPECT_EQ(ArgMax(DecisionScores(m, x.row(1))), 1);
  EXPECT_GT(m.weights[0][0], 0.0);
  EXPECT_LT(m.weights[1][0], 0.0);
  EXPECT_EQ(m.absent_classes, (std::vector<int>{2, 3, 4}));
}

TEST(LinearSvc, MatchesSlowReference) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(seed, 99);
    const std::size_t n = 5 + rng.Below(46), d = 1 + rng.Below(10);
    const Matrix x = RandomMatrix(n, d, seed, 2.0);
    const std::vector<int> labels = RandomLabels(n, seed);
    const double c = 0.1 + 2.0 * rng.Uniform();
    for (int k = 0; k < kNumClasses; ++k) {
      const std::vector<int> y = OneVsRest(labels, k);
      const auto sol = TrainBinaryLinearSvc(x, y, c, 100000, 1e-6);
      const auto ref = ReferenceLinearSvc(x, y, c);
      const double obj = LinearObjective(x, y, c, sol.w, sol.b);
      EXPECT_NEAR(obj, sol.stats.objective, 1e-12 * std::max(1.0, obj));
      EXPECT_LE(std::abs(obj - ref.objective),
                1e-6 * std::max(1.0, std::abs(ref.objective)))
          << "seed " << seed << " class " << k;
      const double g0 = Norm(LinearGradient(x, y, c,
                                            std::vector<double>(d, 0.0), 0.0));
      EXPECT_LE(Norm(LinearGradient(x, y, c, sol.w, sol.b)),
                1e-6 * std::max(1.0, g0));
    }
  }
}

TEST(LinearSvc, LocalMinimalitySpotCheck) {
  const Matrix x = RandomMatrix(40, 6, 5, 1.5);
  const std::vector<int> y = OneVsRest(RandomLabels(40, 5), 2);
  const auto sol = TrainBinaryLinearSvc(x, y, 1.0, 100000, 1e-6);
  const double f0 = LinearObjective(x, y, 1.0, sol.w, sol.b);
  Rng rng(5, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> w = sol.w;
    for (double& v : w) v += 1e-2 * (2.0 * rng.Uniform() - 1.0);
    const double b = sol.b + 1e-2 * (2.0 * rng.Uniform() - 1.0);
    EXPECT_LE(f0, LinearObjective(x, y, 1.0, w, b));
  }
}

TEST(LinearSvc, DeterministicAndShiftInvariantPrediction) {
  const Matrix x = RandomMatrix(30, 4, 8);
  const std::vector<int> labels = RandomLabels(30, 8);
  const LinearSvcModel a = TrainLinearSvc(x, labels);
  const LinearSvcModel b = TrainLinearSvc(x, labels);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.biases, b.biases);
  Scores s = DecisionScores(a, x.row(0));
  const SeatMask mask = {true, false, true, false, true};
  const Seat p = PredictMerlin(s, mask);
  for (double& v : s) v += 17.25;
  EXPECT_EQ(PredictMerlin(s, mask), p);
}

TEST(LinearSvc, ScoresAreAffine) {
  const Matrix x = RandomMatrix(25, 3, 9);
  const LinearSvcModel m = TrainLinearSvc(x, RandomLabels(25, 9));
  std::vector<double> v(x.row(3).begin(), x.row(3).end());
  std::vector<double> v2 = v;
  for (double& e : v2) e *= 2.0;
  const Scores s2 = DecisionScores(m, v2);
  for (int k = 0; k < kNumClasses; ++k) {
    double dot = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) dot += m.weights[k][j] * v[j];
    EXPECT_NEAR(s2[k], 2.0 * dot + m.biases[k], 1e-12);
  }
}

TEST(LinearSvc, Errors) {
  const Matrix x = RandomMatrix(4, 2, 1);
  const std::vector<int> labels = {0, 1, 2, 3};
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  EXPECT_EQ(kind_of([&] { TrainLinearSvc(Matrix(), {}); }),
            ErrorKind::kEmptyDataset);
  EXPECT_EQ(kind_of([&] {
              TrainLinearSvc(x, std::vector<int>{0, 1});
            }),
            ErrorKind::kDimensionMismatch);
  LinearSvcParams bad;
  bad.c = 0.0;
  EXPECT_EQ(kind_of([&] { TrainLinearSvc(x, labels, bad); }),
            ErrorKind::kNonPositiveC);
  const LinearSvcModel m = TrainLinearSvc(x, labels);
  EXPECT_EQ(kind_of([&] { DecisionScores(m, std::vector<double>(3)); }),
            ErrorKind::kDimensionMismatch);
}

TEST(Predict, MaskAndTies) {
  EXPECT_EQ(PredictMerlin({0, 0, 0, 0, 0}, {true, true, true, false, false}), 0);
  EXPECT_EQ(PredictMerlin({9, 0, 0, 99, 0}, {true, true, true, false, false}), 0);
  EXPECT_EQ(PredictMerlin({1, 5, 5, 9, 9}, {false, true, true, false, true}), 4);
  EXPECT_EQ(PredictMerlin({1, 5, 5, 0, 0}, {false, true, true, false, true}), 1);
  EXPECT_THROW(PredictMerlin({}, {true, true, false, false, false}), Error);
  EXPECT_THROW(PredictMerlin({}, {true, true, true, true, false}), Error);
}

TEST(RbfSvc, XorFourPoints) {
  Matrix x(4, 2);
  const double pts[4][2] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  for (int i = 0; i < 4; ++i) {
    x(i, 0) = pts[i][0];
    x(i, 1) = pts[i][1];
  }
  const std::vector<int> y = {1, 1, -1, -1};
  const Matrix k = GramMatrix(x, 1.0);
  const auto sol = SolveKernelSvcDual(k, y, 10.0, 1e-3, 0);
  ASSERT_TRUE(sol.converged);
  for (int i = 0; i < 4; ++i) {
    double f = sol.bias;
    for (int j = 0; j < 4; ++j) f += sol.alpha[j] * y[j] * k(i, j);
    EXPECT_GT(f * y[i], 0.0) << i;
  }
  const auto audit = KktAudit(k, y, sol.alpha, sol.bias, 10.0);
  EXPECT_LE(audit.max_margin_violation, 1e-3);

  RbfSvcParams p;
  p.c = 10.0;
  p.gamma = 1.0;
  const KernelSvcModel m = TrainRbfSvc(x, std::vector<int>{0, 0, 1, 1}, p);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(ArgMax(DecisionScores(m, x.row(i))), i < 2 ? 0 : 1);
  }
}

TEST(RbfSvc, KktAuditOnRandomProblems) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed, 7);
    const std::size_t n = 10 + rng.Below(60), d = 1 + rng.Below(6);
    const Matrix x = RandomMatrix(n, d, 100 + seed);
    const std::vector<int> y = OneVsRest(RandomLabels(n, seed), 0);
    const double c = seed % 2 ? 10.0 : 0.5;
    const Matrix k = GramMatrix(x, 1.5);
    const auto sol = SolveKernelSvcDual(k, y, c, 1e-3, 0);
    EXPECT_TRUE(sol.converged);
    const auto audit = KktAudit(k, y, sol.alpha, sol.bias, c);
    EXPECT_LE(audit.max_margin_violation, 1e-3) << seed;
    EXPECT_LE(audit.max_box_violation, 0.0);
    EXPECT_LE(audit.equality_residual, 1e-9);
  }
}

TEST(RbfSvc, IdenticalPointsDegenerate) {
  Matrix x(6, 2, 0.5);
  const std::vector<int> labels = {0, 1, 0, 1, 0, 1};
  const KernelSvcModel m = TrainRbfSvc(x, labels);
  EXPECT_EQ(m.gamma, 1.0);  // zero variance falls back to 1
  const Scores s = DecisionScores(m, x.row(0));
  for (double v : s) EXPECT_TRUE(std::isfinite(v));
  for (const auto& cls : m.classes) {
    double eq = 0.0;
    for (double a : cls.coefficients) {
      EXPECT_LE(std::abs(a), m.c + 1e-12);
      eq += a;
    }
    EXPECT_NEAR(eq, 0.0, 1e-9);
  }
}

TEST(RbfSvc, DefaultGammaIsScale) {
  Matrix x(2, 2);
  x(0, 0) = 0;
  x(0, 1) = 2;
  x(1, 0) = 4;
  x(1, 1) = 6;
  // mean 3, variance (9 + 1 + 1 + 9) / 4 = 5
  EXPECT_DOUBLE_EQ(DefaultGamma(x), 1.0 / (2 * 5.0));
}

TEST(RbfSvc, Errors) {
  const Matrix x = RandomMatrix(4, 2, 1);
  RbfSvcParams p;
  p.gamma = -1.0;
  EXPECT_THROW(TrainRbfSvc(x, std::vector<int>{0, 1, 2, 3}, p), Error);
  p.gamma.reset();
  p.c = -1.0;
  EXPECT_THROW(TrainRbfSvc(x, std::vector<int>{0, 1, 2, 3}, p), Error);
}

TEST(RbfSvc, ScoresMatchDefinition) {
  const Matrix x = RandomMatrix(30, 3, 4);
  RbfSvcParams p;
  p.gamma = 0.7;
  const KernelSvcModel m = TrainRbfSvc(x, RandomLabels(30, 4), p);
  const auto probe = RandomMatrix(1, 3, 5);
  const Scores s = DecisionScores(m, probe.row(0));
  for (int k = 0; k < kNumClasses; ++k) {
    const KernelClassifier& c = m.classes[k];
    double f = c.bias;
    for (std::size_t i = 0; i < c.support_vectors.rows(); ++i) {
      f += c.coefficients[i] *
           std::exp(-0.7 * SquaredDistance(c.support_vectors.row(i),
                                           probe.row(0)));
    }
    EXPECT_NEAR(s[k], f, 1e-12);
  }
}

}  // namespace
}  // namespace avalon
