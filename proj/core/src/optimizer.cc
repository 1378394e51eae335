// Copyright 2026 The Vizref Authors.
//
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

#include "vizref/optimizer.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "vizref/errors.h"

namespace vizref {

namespace {

double DotProduct(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double L1Norm(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += std::abs(v);
  return sum;
}

void PseudoGradient(std::span<const double> x, std::span<const double> g, double l1,
                    std::span<double> pg) {
  if (l1 == 0.0) {
    std::copy(g.begin(), g.end(), pg.begin());
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      pg[i] = g[i] + l1;
    } else if (x[i] < 0.0) {
      pg[i] = g[i] - l1;
    } else if (g[i] + l1 < 0.0) {
      pg[i] = g[i] + l1;
    } else if (g[i] - l1 > 0.0) {
      pg[i] = g[i] - l1;
    } else {
      pg[i] = 0.0;
    }
  }
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double ys;
};

}  // namespace

OwlqnResult MinimizeOwlqn(const SmoothObjective& objective, std::vector<double> x0,
                          const OwlqnOptions& options) {
  const std::size_t n = x0.size();
  OwlqnResult result;
  std::vector<double> x = std::move(x0);
  std::vector<double> g(n), pg(n), d(n), x_new(n), g_new(n), orthant(n);

  auto evaluate = [&](std::span<const double> at, std::span<double> grad, int iteration) {
    const double smooth = objective(at, grad);
    const double total = smooth + options.l1 * L1Norm(at);
    if (!std::isfinite(total)) throw NumericalError("non-finite training objective", iteration);
    return total;
  };

  double f = evaluate(x, g, 0);
  result.objective_history.push_back(f);
  std::deque<Correction> memory;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    PseudoGradient(x, g, options.l1, pg);
    const double pg_norm = std::sqrt(DotProduct(pg, pg));
    const double x_norm = std::sqrt(DotProduct(x, x));
    if (pg_norm / std::max(1.0, x_norm) < options.epsilon) {
      result.converged = true;
      result.stop_reason = "gradient norm below tolerance";
      break;
    }

    // Two-loop recursion on the pseudo-gradient.
    for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
    std::vector<double> alpha(memory.size());
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = DotProduct(memory[k].s, d) / memory[k].ys;
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * memory[k].y[i];
    }
    if (!memory.empty()) {
      const Correction& last = memory.back();
      const double gamma = last.ys / DotProduct(last.y, last.y);
      for (double& v : d) v *= gamma;
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = DotProduct(memory[k].y, d) / memory[k].ys;
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * memory[k].s[i];
    }
    if (options.l1 > 0.0) {
      // Keep only components that descend along the pseudo-gradient.
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] * pg[i] >= 0.0) d[i] = 0.0;
      }
    }
    double directional = DotProduct(d, pg);
    if (directional >= 0.0) {
      // Curvature information went stale; restart from steepest descent.
      memory.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
      directional = DotProduct(d, pg);
      if (directional >= 0.0) {
        result.converged = true;
        result.stop_reason = "no descent direction";
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      orthant[i] = x[i] != 0.0 ? (x[i] > 0.0 ? 1.0 : -1.0) : (pg[i] < 0.0 ? 1.0 : -1.0);
    }

    double step = memory.empty() ? 1.0 / std::sqrt(DotProduct(d, d)) : 1.0;
    bool accepted = false;
    double f_new = f;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      for (std::size_t i = 0; i < n; ++i) {
        x_new[i] = x[i] + step * d[i];
        if (options.l1 > 0.0 && x_new[i] * orthant[i] <= 0.0) x_new[i] = 0.0;
      }
      f_new = evaluate(x_new, g_new, iter);
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) decrease += pg[i] * (x_new[i] - x[i]);
      if (f_new <= f + 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.stop_reason = "line search failed";
      break;
    }

    Correction c{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      c.s[i] = x_new[i] - x[i];
      c.y[i] = g_new[i] - g[i];
    }
    c.ys = DotProduct(c.s, c.y);
    const bool moved = std::any_of(c.s.begin(), c.s.end(), [](double v) { return v != 0.0; });
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    result.objective_history.push_back(f);
    result.iterations = iter;
    if (c.ys > 1e-12) {
      memory.push_back(std::move(c));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }
    if (!moved) {
      result.converged = true;
      result.stop_reason = "step projected to zero";
      break;
    }
  }
  if (result.stop_reason.empty()) result.stop_reason = "iteration limit";
  result.x = std::move(x);
  return result;
}

}  // namespace vizref
