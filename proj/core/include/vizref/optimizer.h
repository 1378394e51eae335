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

#ifndef VIZREF_OPTIMIZER_H_
#define VIZREF_OPTIMIZER_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vizref {

// Evaluates the smooth part of the objective at x and writes its gradient.
using SmoothObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct OwlqnOptions {
  double l1 = 0.0;
  int max_iterations = 200;
  double epsilon = 1e-5;
  int history = 6;
  int max_line_search = 40;
};

struct OwlqnResult {
  std::vector<double> x;
  // Full objective (smooth + l1 term) at x0 and after each accepted step.
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
};

// Orthant-wise limited-memory quasi-Newton (Andrew & Gao, 2007). With l1 = 0
// this is plain L-BFGS with a backtracking Armijo line search.
OwlqnResult MinimizeOwlqn(const SmoothObjective& objective, std::vector<double> x0,
                          const OwlqnOptions& options);

}  // namespace vizref

#endif  // VIZREF_OPTIMIZER_H_
