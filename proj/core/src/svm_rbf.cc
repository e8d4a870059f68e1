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

#include <algorithm>
#include <cmath>
#include <limits>

#include "avalon/error.h"
#include "avalon/svm.h"

namespace avalon {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dual: minimize 1/2 a'Qa - e'a, Q_ij = y_i y_j K_ij, 0 <= a <= C, y'a = 0.
// G holds the gradient Qa - e.
class SmoSolver {
 public:
  SmoSolver(const Matrix& kernel, std::span<const int> y, double c)
      : k_(kernel), y_(y), c_(c), n_(y.size()), alpha_(n_, 0.0),
        grad_(n_, -1.0) {}

  bool Up(std::size_t t) const {
    return y_[t] > 0 ? alpha_[t] < c_ : alpha_[t] > 0.0;
  }
  bool Low(std::size_t t) const {
    return y_[t] > 0 ? alpha_[t] > 0.0 : alpha_[t] < c_;
  }

  // Returns false when the pair gap is within tol.
  bool SelectPair(double tol, std::size_t& out_i, std::size_t& out_j) {
    double gmax = -kInf;
    std::size_t i = n_;
    for (std::size_t t = 0; t < n_; ++t) {
      if (Up(t) && -y_[t] * grad_[t] >= gmax) {
        gmax = -y_[t] * grad_[t];
        i = t;
      }
    }
    double gmax2 = -kInf;
    double best = kInf;
    std::size_t j = n_;
    for (std::size_t t = 0; t < n_; ++t) {
      if (!Low(t)) continue;
      const double yg = y_[t] * grad_[t];
      gmax2 = std::max(gmax2, yg);
      if (i == n_) continue;
      const double diff = gmax + yg;
      if (diff > 0.0) {
        double quad = k_(i, i) + k_(t, t) - 2.0 * k_(i, t);
        if (quad <= 0.0) quad = kTau;
        const double gain = -(diff * diff) / quad;
        if (gain <= best) {
          best = gain;
          j = t;
        }
      }
    }
    gap_ = gmax + gmax2;
    if (i == n_ || j == n_ || gap_ < tol) return false;
    out_i = i;
    out_j = j;
    return true;
  }

  void Update(std::size_t i, std::size_t j) {
    const double old_ai = alpha_[i];
    const double old_aj = alpha_[j];
    double quad = k_(i, i) + k_(j, j) - 2.0 * k_(i, j);
    if (quad <= 0.0) quad = kTau;
    double& ai = alpha_[i];
    double& aj = alpha_[j];
    if (y_[i] != y_[j]) {
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0 && aj < 0.0) {
        aj = 0.0;
        ai = diff;
      } else if (diff <= 0.0 && ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0 && ai > c_) {
        ai = c_;
        aj = c_ - diff;
      } else if (diff <= 0.0 && aj > c_) {
        aj = c_;
        ai = c_ + diff;
      }
    } else {
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_ && ai > c_) {
        ai = c_;
        aj = sum - c_;
      } else if (sum <= c_ && aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c_ && aj > c_) {
        aj = c_;
        ai = sum - c_;
      } else if (sum <= c_ && ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double di = ai - old_ai;
    const double dj = aj - old_aj;
    for (std::size_t t = 0; t < n_; ++t) {
      grad_[t] += y_[t] * (y_[i] * k_(t, i) * di + y_[j] * k_(t, j) * dj);
    }
  }

  // Offset b of the decision function sum a_i y_i K(x_i, x) + b.
  double Bias() const {
    double ub = kInf, lb = -kInf, sum_free = 0.0;
    int free = 0;
    for (std::size_t t = 0; t < n_; ++t) {
      const double yg = y_[t] * grad_[t];
      const bool at_upper = alpha_[t] >= c_;
      const bool at_lower = alpha_[t] <= 0.0;
      if (at_upper) {
        if (y_[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else if (at_lower) {
        if (y_[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else {
        ++free;
        sum_free += yg;
      }
    }
    double rho;
    if (free > 0) {
      rho = sum_free / free;
    } else if (std::isinf(ub) && std::isinf(lb)) {
      rho = 0.0;
    } else if (std::isinf(ub)) {
      rho = lb;
    } else if (std::isinf(lb)) {
      rho = ub;
    } else {
      rho = 0.5 * (ub + lb);
    }
    return -rho;
  }

  const std::vector<double>& alpha() const { return alpha_; }
  double gap() const { return gap_; }

 private:
  const Matrix& k_;
  std::span<const int> y_;
  double c_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  double gap_ = 0.0;
};

void CheckInputs(const Matrix& x, std::span<const int> labels, double c) {
  if (x.rows() == 0) throw Error(ErrorKind::kEmptyDataset, "no training rows");
  if (labels.size() != x.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "label count does not match row count");
  }
  if (!(c > 0.0)) throw Error(ErrorKind::kNonPositiveC, "C must be positive");
}

}  // namespace

BinaryKernelSolution SolveKernelSvcDual(const Matrix& kernel,
                                        std::span<const int> y, double c,
                                        double tol, long long max_iter) {
  SmoSolver solver(kernel, y, c);
  BinaryKernelSolution out;
  if (max_iter <= 0) {
    max_iter = std::max<long long>(10000000LL,
                                   100LL * static_cast<long long>(y.size()));
  }
  std::size_t i = 0, j = 0;
  out.converged = true;
  while (solver.SelectPair(tol, i, j)) {
    if (out.iterations >= max_iter) {
      out.converged = false;
      break;
    }
    solver.Update(i, j);
    ++out.iterations;
  }
  out.alpha = solver.alpha();
  out.bias = solver.Bias();
  out.kkt_gap = std::max(0.0, solver.gap());
  return out;
}

double RbfKernel(std::span<const double> a, std::span<const double> b,
                 double gamma) {
  return std::exp(-gamma * SquaredDistance(a, b));
}

double DefaultGamma(const Matrix& x) {
  const auto values = x.data();
  if (values.empty()) return 1.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  if (var <= 0.0 || x.cols() == 0) return 1.0;
  return 1.0 / (static_cast<double>(x.cols()) * var);
}

KernelSvcModel TrainRbfSvc(const Matrix& x, std::span<const int> labels,
                           const RbfSvcParams& params) {
  CheckInputs(x, labels, params.c);
  const double gamma = params.gamma.value_or(DefaultGamma(x));
  if (!(gamma > 0.0)) {
    throw Error(ErrorKind::kNonPositiveGamma, "gamma must be positive");
  }
  const std::size_t n = x.rows();
  Matrix kernel(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    kernel(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = RbfKernel(x.row(a), x.row(b), gamma);
      kernel(a, b) = v;
      kernel(b, a) = v;
    }
  }

  KernelSvcModel model;
  model.gamma = gamma;
  model.c = params.c;
  model.dim = x.cols();
  model.classes.resize(kNumClasses);
  for (int k = 0; k < kNumClasses; ++k) {
    std::vector<int> y(n);
    bool present = false;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = labels[i] == k ? 1 : -1;
      present |= labels[i] == k;
    }
    if (!present) model.absent_classes.push_back(k);
    const BinaryKernelSolution sol =
        SolveKernelSvcDual(kernel, y, params.c, params.tol, params.max_iter);
    KernelClassifier& cls = model.classes[k];
    cls.bias = sol.bias;
    cls.iterations = sol.iterations;
    cls.kkt_gap = sol.kkt_gap;
    cls.converged = sol.converged;
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (sol.alpha[i] > 0.0) {
        support.push_back(i);
        cls.coefficients.push_back(sol.alpha[i] * y[i]);
      }
    }
    cls.support_vectors = TakeRows(x, support);
    if (support.empty()) cls.support_vectors = Matrix(0, x.cols());
  }
  return model;
}

Scores DecisionScores(const KernelSvcModel& model, std::span<const double> x) {
  if (x.size() != model.dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                "feature vector has " + std::to_string(x.size()) +
                    " entries, model expects " + std::to_string(model.dim));
  }
  Scores scores{};
  for (int k = 0; k < kNumClasses; ++k) {
    const KernelClassifier& cls = model.classes[k];
    double s = cls.bias;
    for (std::size_t i = 0; i < cls.coefficients.size(); ++i) {
      s += cls.coefficients[i] *
           RbfKernel(cls.support_vectors.row(i), x, model.gamma);
    }
    scores[k] = s;
  }
  return scores;
}

}  // namespace avalon
