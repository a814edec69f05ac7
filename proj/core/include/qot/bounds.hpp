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

// Analytic cheating-probability bounds as functions of the largest pairwise
// fidelity F between Bob's honest output states.
//
// Values are returned raw: a Bob bound below 1/2 is vacuous (Bob can always
// guess one bit and flip a coin) but is not clamped, so callers can tell the
// two situations apart.

#include <array>
#include <optional>
#include <vector>

#include "qot/linalg.hpp"

namespace qot {

struct TradeoffPoint {
  double F = 0.0;
  double alice_bound = 0.0;
  double bob_bound_general = 0.0;
  // Only defined for F <= 1/2.
  std::optional<double> bob_bound_pure_symmetric;
};

struct MinimaxResult {
  double F_star = 0.0;
  double value = 0.0;
};

// 1 - F, valid for any protocol in the framework.
double bob_bound_general(double F);

// (1/4) (1 + sqrt(1 - 2F)/2 + sqrt(1 + 2F)/2)^2 for pure symmetric outputs,
// 0 <= F <= 1/2.
double bob_bound_pure_symmetric(double F);

// (1 + F) / 2.
double alice_bound(double F);

// argmin_F max{(1+F)/2, 1-F} in closed form: (1/3, 2/3).
MinimaxResult minimax_general();

// Crossing of (1+F)/2 and the pure-symmetric Bob bound, by bisection on
// [0.4, 0.5] to 1e-10.
MinimaxResult minimax_pure_symmetric();

// Closed-form eigenvalues (lambda_0..lambda_3) of the circulant Gram matrix.
// Throws DomainError if any is below -1e-10.
std::array<double, 4> gram_eigenvalues(Complex f, double G);

// (1/16) (sum_i sqrt(lambda_i))^2 from the closed-form eigenvalues.
double srm_success_from_gram(Complex f, double G);

// (1/4) (sqrt(1 + G) + sqrt(1 - G))^2 for symmetric sets with f = 0, |G| <= 1.
double bob_cheat_case2(double G_abs);

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<double>& F_grid);

}  // namespace qot
