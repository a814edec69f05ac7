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

// Gate-level preparation of Alice's three-qubit cheat state and the
// local-unitary equivalence fit used to check it. Angles are in degrees at
// this interface. Qubit order is (B1, B2, A), big-endian.

#include <array>
#include <cstdint>
#include <vector>

#include "qot/linalg.hpp"
#include "qot/rng.hpp"

namespace qot {

struct CircuitParams {
  std::array<double, 3> theta{};  // product input, per qubit
  std::array<double, 3> phi{};
  double alpha = 0.0;  // controlled phase on (B1, B2)
  double beta = 0.0;   // doubly controlled phase on all three
};

// theta = (120, 90, 116.565), phi = (22.5, 90, 180), alpha = -138.190,
// beta = 180.
CircuitParams table_iv_params();

struct LocalUnitaryParams {
  // (A, B, C) per qubit.
  std::array<std::array<double, 3>, 3> angles{};
};

ComplexMatrix hadamard();
ComplexMatrix cp_gate(double alpha_deg);   // 1 + (e^{i alpha} - 1)|11><11|
ComplexMatrix ccp_gate(double beta_deg);   // 1 + (e^{i beta} - 1)|111><111|

// U_CCP(beta) (1 (x) H (x) 1) (U_CP(alpha) (x) 1)
ComplexMatrix circuit_unitary(double alpha_deg, double beta_deg);

// Each qubit starts in cos(theta/2)|0> + sin(theta/2) e^{-i phi}|1>. The
// tabulated angles only reach the target with this sign of the phase.
StateVector circuit_input(const CircuitParams& p);
StateVector prepare_sigma(const CircuitParams& p);

// (|00>|0> + |++>|1>) / sqrt 2
StateVector sigma_target();

// [[cos A e^{iB}, -sin A e^{-iC}], [sin A e^{iC}, cos A e^{-iB}]]
ComplexMatrix local_unitary(double a_deg, double b_deg, double c_deg);
ComplexMatrix local_unitary(const LocalUnitaryParams& p);  // V1 (x) V2 (x) V3

struct LuEquivalenceResult {
  double E = 0.0;  // max |<target| V |candidate>|^2
  LocalUnitaryParams params;
  bool converged = false;
  int starts = 0;
  std::vector<double> history;  // best-so-far E after each start
};

LuEquivalenceResult lu_equivalence(const StateVector& candidate, const StateVector& target,
                                   int starts = 50, std::uint64_t seed = kDefaultSeed);

// Eigenvalues of each single-qubit reduced state, descending.
std::array<std::array<double, 2>, 3> single_qubit_spectra(const StateVector& psi);

}  // namespace qot
