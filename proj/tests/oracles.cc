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

#include "oracles.h"

#include <algorithm>
#include <cmath>

#include "avalon/rng.h"

namespace avalon::testing {

double LinearObjective(const Matrix& x, std::span<const int> y, double c,
                       std::span<const double> w, double b) {
  double reg = 0.0;
  for (double v : w) reg += v * v;
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double m = b;
    for (std::size_t j = 0; j < x.cols(); ++j) m += w[j] * x(i, j);
    const double slack = std::max(0.0, 1.0 - y[i] * m);
    loss += slack * slack;
  }
  return 0.5 * reg + c * loss;
}

std::vector<double> LinearGradient(const Matrix& x, std::span<const int> y,
                                   double c, std::span<const double> w,
                                   double b) {
  const std::size_t d = x.cols();
  std::vector<double> g(d + 1, 0.0);
  for (std::size_t j = 0; j < d; ++j) g[j] = w[j];
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double m = b;
    for (std::size_t j = 0; j < d; ++j) m += w[j] * x(i, j);
    const double slack = 1.0 - y[i] * m;
    if (slack <= 0.0) continue;
    const double coef = -2.0 * c * slack * y[i];
    for (std::size_t j = 0; j < d; ++j) g[j] += coef * x(i, j);
    g[d] += coef;
  }
  return g;
}

ReferenceSolution ReferenceLinearSvc(const Matrix& x, std::span<const int> y,
                                     double c) {
  const std::size_t d = x.cols();
  // Lipschitz bound: 1 + 2C * sum_i |[x_i, 1]|^2.
  double lip = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 1.0;
    for (std::size_t j = 0; j < d; ++j) s += x(i, j) * x(i, j);
    lip += s;
  }
  lip = 1.0 + 2.0 * c * lip;
  const double step = 1.0 / lip;

  std::vector<double> theta(d + 1, 0.0), look = theta;
  auto f = [&](const std::vector<double>& t) {
    return LinearObjective(x, y, c, std::span(t).first(d), t[d]);
  };
  auto grad = [&](const std::vector<double>& t) {
    return LinearGradient(x, y, c, std::span(t).first(d), t[d]);
  };
  double momentum = 1.0;
  double f_cur = f(theta);
  ReferenceSolution out;
  const long max_iter = 4'000'000;
  long it = 0;
  for (; it < max_iter; ++it) {
    const std::vector<double> g = grad(look);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    if (std::sqrt(gn) < 1e-13) {
      theta = look;
      break;
    }
    std::vector<double> next(d + 1);
    for (std::size_t j = 0; j <= d; ++j) next[j] = look[j] - step * g[j];
    const double f_next = f(next);
    if (f_next > f_cur) {
      // Restart the momentum sequence from the last iterate.
      momentum = 1.0;
      look = theta;
      continue;
    }
    const double m_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / m_next;
    for (std::size_t j = 0; j <= d; ++j) {
      look[j] = next[j] + beta * (next[j] - theta[j]);
    }
    theta = next;
    momentum = m_next;
    f_cur = f_next;
  }
  out.w.assign(theta.begin(), theta.begin() + static_cast<long>(d));
  out.b = theta[d];
  out.objective = f(theta);
  out.iterations = it;
  return out;
}

KktReport KktAudit(const Matrix& kernel, std::span<const int> y,
                   std::span<const double> alpha, double bias, double c) {
  const std::size_t n = y.size();
  KktReport r;
  double eq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    eq += alpha[i] * y[i];
    r.max_box_violation =
        std::max({r.max_box_violation, -alpha[i], alpha[i] - c});
  }
  r.equality_residual = std::abs(eq);
  const double eps = 1e-9 * c;
  for (std::size_t i = 0; i < n; ++i) {
    double f = bias;
    for (std::size_t j = 0; j < n; ++j) f += alpha[j] * y[j] * kernel(i, j);
    const double margin = y[i] * f;
    double v = 0.0;
    if (alpha[i] <= eps) {
      v = std::max(0.0, 1.0 - margin);
    } else if (alpha[i] >= c - eps) {
      v = std::max(0.0, margin - 1.0);
    } else {
      v = std::abs(margin - 1.0);
    }
    r.max_margin_violation = std::max(r.max_margin_violation, v);
  }
  return r;
}

Matrix RandomMatrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                    double scale) {
  Rng rng(seed, 0x7e57);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = scale * (2.0 * rng.Uniform() - 1.0);
  return m;
}

}  // namespace avalon::testing
