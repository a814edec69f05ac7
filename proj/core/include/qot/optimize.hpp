// Copyright 2026 The qotsim Authors. All Rights Reserved.
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

#pragma once

// Small unconstrained minimizers used by the cheat-state search and the
// local-unitary equivalence fit.

#include <functional>
#include <vector>

namespace qot {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  // Best objective value after each iteration; non-increasing.
  std::vector<double> history;
};

struct BfgsOptions {
  int max_iterations = 400;
  double gradient_tolerance = 1e-9;
  double value_tolerance = 1e-15;
  double fd_step = 1e-6;  // central differences
};

// Quasi-Newton (BFGS inverse-Hessian update, Armijo backtracking) with
// finite-difference gradients.
OptimResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opts = {});

struct NelderMeadOptions {
  int max_iterations = 20000;
  double initial_step = 0.2;
  double value_tolerance = 1e-14;
};

OptimResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                 const NelderMeadOptions& opts = {});

}  // namespace qot
