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

// Generic multi-round semi-random OT description: Bob holds B and M, Alice
// holds A. Subsystem order is B (x) M (x) A throughout.

#include <array>
#include <utility>
#include <vector>

#include "qot/bits.hpp"
#include "qot/linalg.hpp"
#include "qot/measurement.hpp"

namespace qot {

struct GenericFramework {
  Index dim_b = 1;
  Index dim_m = 1;
  Index dim_a = 1;
  ComplexMatrix initial_bm;  // rho_BM; Alice's register starts in |0>
  // u[k][i] acts on M (x) A in round i for input kCyclicInputs[k].
  std::array<std::vector<ComplexMatrix>, 4> u;
  std::vector<ComplexMatrix> v;  // v[i] acts on B (x) M
  Povm final_povm;               // on B (x) M, labels "0*", "1*", "*0", "*1"

  std::size_t rounds() const { return v.size(); }

  // Dimensions, unitarity, POVM labels and the honest correctness table.
  // Throws DomainError / DimensionError.
  void validate(double tol = 1e-9) const;
};

// Tr(Pi^z sigma^x) for every outcome z and input x; rows follow
// kCyclicInputs, columns follow the POVM order.
std::array<std::vector<double>, 4> correctness_table(const GenericFramework& fw);

// Largest deviation of the correctness table from the ideal 1/2-or-0 pattern.
double correctness_error(const GenericFramework& fw);

// sigma^{x0x1}_BM = Tr_A(V_n U_n ... V_1 U_1 (rho_BM (x) |0><0|_A) ...).
DensityMatrix run_framework(const GenericFramework& fw, BitPair input);

// Single round, dim_b = dim_a = 1, M = two qubits, U^k = (R (x) R)^k, V = 1,
// USE measurement at the end.
GenericFramework example_framework();

// Same as the example but with every input producing |00>; validate() fails
// on it, it only serves as a degenerate attack target.
GenericFramework degenerate_framework();

struct AliceAttackResult {
  BitPair pair_first;
  BitPair pair_second;
  double fidelity = 0.0;           // F(sigma^first, sigma^second)
  double prob_c0 = 0.0;            // Pr[Bob's outcome has c = 0]
  ComplexMatrix mu_c0;             // Alice's control qubit given c = 0
  ComplexMatrix mu_c1;             // ... given c = 1
  double distinguishability = 0.0; // trace distance of mu_c0, mu_c1
  double guess_probability = 0.0;  // Helstrom on the control qubit
  ComplexMatrix mu_measured;       // control qubit, Bob measured, outcome forgotten
  ComplexMatrix mu_unmeasured;     // control qubit, Bob did not measure
  double no_signalling_error = 0.0;
  ComplexMatrix bob_marginal;      // Bob's state under attack
  double undetectability_error = 0.0;  // vs (sigma^first + sigma^second) / 2
};

// Alice runs the honest operations for two inputs differing in one bit,
// controlled on a |+> qubit, and rotates her purifying system so the two
// branches are the maximal-overlap purifications.
AliceAttackResult framework_alice_attack(const GenericFramework& fw, BitPair first, BitPair second);

// For each (z, x) with Tr(Pi^z sigma^x) = 0, the norm of (Pi^z (x) 1)|phi^x>
// where |phi^x> purifies sigma^x. Returns the largest such norm (0 if no
// pair qualifies). purifier_unitary, if non-empty, rotates the purifying
// system first.
double lemma_annihilation_residual(const GenericFramework& fw,
                                   const ComplexMatrix& purifier_unitary = {});

// Recast of ROT + classical masking: Alice's outputs live in a
// four-level register C entangled with Bob's systems; instead of measuring C
// she writes z XOR x into a register D handed to Bob.
struct RecastCheck {
  ComplexMatrix bob_unmeasured;  // Bob's state on (BM (x) D), C never measured
  ComplexMatrix bob_measured;    // ... C measured first, outcome discarded
  double max_abs_diff = 0.0;
  // Bob reads D and runs the SRM on BM; probability of guessing (z0, z1).
  double bob_guess_z = 0.0;
};

RecastCheck recast_rot_in_framework(const GenericFramework& fw, BitPair z);

}  // namespace qot
