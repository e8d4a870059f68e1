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

#include "avalon/error.h"
#include "avalon/parallel.h"
#include "avalon/svm.h"

namespace avalon {

namespace {

// Parameters are packed as theta = (w_0 .. w_{d-1}, b).
class SquaredHingeProblem {
 public:
  SquaredHingeProblem(const Matrix& x, std::span<const int> y, double c)
      : x_(x), y_(y), c_(c), d_(x.cols()), slack_(x.rows()) {}

  std::size_t size() const { return d_ + 1; }

  // Objective at theta; caches the active set used by Gradient/HessianTimes.
  double Evaluate(std::span<const double> theta) {
    const auto w = theta.first(d_);
    const double b = theta[d_];
    double loss = 0.0;
    active_.clear();
    for (std::size_t i = 0; i < x_.rows(); ++i) {
      const double slack = 1.0 - y_[i] * (Dot(x_.row(i), w) + b);
      slack_[i] = slack;
      if (slack > 0.0) {
        active_.push_back(i);
        loss += slack * slack;
      }
    }
    return 0.5 * SquaredNorm(w) + c_ * loss;
  }

  // Peek at the objective without disturbing the cached active set.
  double ObjectiveOnly(std::span<const double> theta) const {
    const auto w = theta.first(d_);
    const double b = theta[d_];
    double loss = 0.0;
    for (std::size_t i = 0; i < x_.rows(); ++i) {
      const double slack = 1.0 - y_[i] * (Dot(x_.row(i), w) + b);
      if (slack > 0.0) loss += slack * slack;
    }
    return 0.5 * SquaredNorm(w) + c_ * loss;
  }

  void Gradient(std::span<const double> theta, std::span<double> grad) const {
    std::copy(theta.begin(), theta.begin() + static_cast<long>(d_),
              grad.begin());
    grad[d_] = 0.0;
    for (std::size_t i : active_) {
      const double coef = -2.0 * c_ * y_[i] * slack_[i];
      Axpy(coef, x_.row(i), grad.first(d_));
      grad[d_] += coef;
    }
  }

  // Generalized Hessian at the cached point times v.
  void HessianTimes(std::span<const double> v, std::span<double> out) const {
    std::copy(v.begin(), v.begin() + static_cast<long>(d_), out.begin());
    out[d_] = 0.0;
    for (std::size_t i : active_) {
      const double coef = 2.0 * c_ * (Dot(x_.row(i), v.first(d_)) + v[d_]);
      Axpy(coef, x_.row(i), out.first(d_));
      out[d_] += coef;
    }
  }

 private:
  const Matrix& x_;
  std::span<const int> y_;
  double c_;
  std::size_t d_;
  std::vector<double> slack_;
  std::vector<std::size_t> active_;
};

// Approximately solves H s = -g by conjugate gradients. Stops at relative
// residual `eta` or on (near) zero curvature.
void NewtonDirection(const SquaredHingeProblem& problem,
                     std::span<const double> grad, double eta,
                     std::span<double> step) {
  const std::size_t n = grad.size();
  std::vector<double> r(n), p(n), hp(n);
  std::fill(step.begin(), step.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) r[i] = -grad[i];
  p = r;
  double rr = SquaredNorm(r);
  const double target = eta * eta * rr;
  const std::size_t max_cg = 2 * n + 20;
  for (std::size_t it = 0; it < max_cg && rr > target; ++it) {
    problem.HessianTimes(p, hp);
    const double php = Dot(p, hp);
    if (php <= 1e-300 || php <= 1e-14 * SquaredNorm(p)) break;
    const double alpha = rr / php;
    Axpy(alpha, p, step);
    Axpy(-alpha, hp, r);
    const double rr_next = SquaredNorm(r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  if (SquaredNorm(step) == 0.0) {
    for (std::size_t i = 0; i < n; ++i) step[i] = -grad[i];
  }
}

}  // namespace

BinaryLinearSolution TrainBinaryLinearSvc(const Matrix& x,
                                          std::span<const int> y, double c,
                                          int max_iter, double tol) {
  SquaredHingeProblem problem(x, y, c);
  const std::size_t n = problem.size();
  std::vector<double> theta(n, 0.0), grad(n), step(n), trial(n);

  double f = problem.Evaluate(theta);
  problem.Gradient(theta, grad);
  BinaryLinearSolution out;
  out.stats.initial_grad_norm = std::sqrt(SquaredNorm(grad));
  const double threshold = tol * std::max(1.0, out.stats.initial_grad_norm);
  double gnorm = out.stats.initial_grad_norm;

  int iter = 0;
  while (gnorm > threshold && iter < max_iter) {
    ++iter;
    const double eta =
        std::min(0.1, std::sqrt(gnorm / std::max(1.0, out.stats.initial_grad_norm)));
    NewtonDirection(problem, grad, eta, step);
    double slope = Dot(grad, step);
    if (slope >= 0.0) {
      for (std::size_t i = 0; i < n; ++i) step[i] = -grad[i];
      slope = -gnorm * gnorm;
    }
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] + t * step[i];
      const double f_trial = problem.ObjectiveOnly(trial);
      if (f_trial <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no representable progress left
    theta.swap(trial);
    f = problem.Evaluate(theta);
    problem.Gradient(theta, grad);
    gnorm = std::sqrt(SquaredNorm(grad));
  }

  out.w.assign(theta.begin(), theta.begin() + static_cast<long>(x.cols()));
  out.b = theta.back();
  out.stats.iterations = iter;
  out.stats.final_grad_norm = gnorm;
  out.stats.objective = f;
  out.stats.converged = gnorm <= threshold;
  return out;
}

LinearSvcModel TrainLinearSvc(const Matrix& x, std::span<const int> labels,
                              const LinearSvcParams& params) {
  if (x.rows() == 0) throw Error(ErrorKind::kEmptyDataset, "no training rows");
  if (labels.size() != x.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "label count does not match row count");
  }
  if (!(params.c > 0.0)) {
    throw Error(ErrorKind::kNonPositiveC, "C must be positive");
  }
  LinearSvcModel model;
  model.c = params.c;
  model.dim = x.cols();
  model.seed = params.seed;
  model.weights.resize(kNumClasses);
  model.stats.resize(kNumClasses);
  for (int k = 0; k < kNumClasses; ++k) {
    std::vector<int> y(labels.size());
    bool present = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      y[i] = labels[i] == k ? 1 : -1;
      present |= labels[i] == k;
    }
    if (!present) model.absent_classes.push_back(k);
    BinaryLinearSolution sol =
        TrainBinaryLinearSvc(x, y, params.c, params.max_iter, params.tol);
    model.weights[k] = std::move(sol.w);
    model.biases[k] = sol.b;
    model.stats[k] = sol.stats;
  }
  return model;
}

Scores DecisionScores(const LinearSvcModel& model, std::span<const double> x) {
  if (x.size() != model.dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                "feature vector has " + std::to_string(x.size()) +
                    " entries, model expects " + std::to_string(model.dim));
  }
  Scores scores{};
  for (int k = 0; k < kNumClasses; ++k) {
    scores[k] = Dot(model.weights[k], x) + model.biases[k];
  }
  return scores;
}

Seat PredictMerlin(const Scores& scores, const SeatMask& resistance) {
  if (std::count(resistance.begin(), resistance.end(), true) != 3) {
    throw Error(ErrorKind::kBadMask,
                "resistance mask must select exactly 3 seats");
  }
  Seat best = -1;
  for (Seat s = 0; s < kNumClasses; ++s) {
    if (!resistance[s]) continue;
    if (best < 0 || scores[s] > scores[best]) best = s;
  }
  return best;
}

int ArgMax(const Scores& scores) {
  int best = 0;
  for (int k = 1; k < kNumClasses; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return best;
}

}  // namespace avalon
