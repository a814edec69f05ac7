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

#include "qot/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qot/error.hpp"

namespace qot {
namespace {

void require_unit_interval(double F, const char* what) {
  if (!(F >= 0.0 && F <= 1.0)) {
    throw DomainError(std::string(what) + ": F = " + std::to_string(F) + " outside [0, 1]");
  }
}

}  // namespace

double bob_bound_general(double F) {
  require_unit_interval(F, "bob_bound_general");
  return 1.0 - F;
}

double bob_bound_pure_symmetric(double F) {
  if (!(F >= 0.0 && F <= 0.5)) {
    throw DomainError("bob_bound_pure_symmetric: F = " + std::to_string(F) +
                      " outside [0, 1/2]");
  }
  const double s = 1.0 + 0.5 * std::sqrt(1.0 - 2.0 * F) + 0.5 * std::sqrt(1.0 + 2.0 * F);
  return 0.25 * s * s;
}

double alice_bound(double F) {
  require_unit_interval(F, "alice_bound");
  return 0.5 * (1.0 + F);
}

MinimaxResult minimax_general() { return {1.0 / 3.0, 2.0 / 3.0}; }

MinimaxResult minimax_pure_symmetric() {
  auto gap = [](double F) { return alice_bound(F) - bob_bound_pure_symmetric(F); };
  double lo = 0.4;
  double hi = 0.5;
  if (!(gap(lo) < 0.0 && gap(hi) > 0.0)) {
    throw DomainError("minimax_pure_symmetric: bracket does not contain a sign change");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  const double F = 0.5 * (lo + hi);
  return {F, std::max(alice_bound(F), bob_bound_pure_symmetric(F))};
}

std::array<double, 4> gram_eigenvalues(Complex f, double G) {
  const Complex i(0.0, 1.0);
  const Complex fc = std::conj(f);
  const std::array<Complex, 4> raw = {1.0 + f + G + fc, 1.0 + i * f - G - i * fc,
                                      1.0 - f + G - fc, 1.0 - i * f - G + i * fc};
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    if (raw[k].real() < -kEigenClip) {
      throw DomainError("gram_eigenvalues: Gram matrix is not positive semidefinite");
    }
    out[k] = raw[k].real();
  }
  return out;
}

double srm_success_from_gram(Complex f, double G) {
  double s = 0.0;
  for (double l : gram_eigenvalues(f, G)) s += std::sqrt(std::max(0.0, l));
  return s * s / 16.0;
}

double bob_cheat_case2(double G_abs) {
  if (!(G_abs >= 0.0 && G_abs <= 1.0)) {
    throw DomainError("bob_cheat_case2: |G| outside [0, 1]");
  }
  const double s = std::sqrt(1.0 + G_abs) + std::sqrt(1.0 - G_abs);
  return 0.25 * s * s;
}

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<double>& F_grid) {
  std::vector<TradeoffPoint> out;
  out.reserve(F_grid.size());
  for (double F : F_grid) {
    TradeoffPoint p;
    p.F = F;
    p.alice_bound = alice_bound(F);
    p.bob_bound_general = bob_bound_general(F);
    if (F <= 0.5) p.bob_bound_pure_symmetric = bob_bound_pure_symmetric(F);
    out.push_back(p);
  }
  return out;
}

}  // namespace qot
