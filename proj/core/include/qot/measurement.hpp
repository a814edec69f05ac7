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

// State sets and measurements: POVMs, square-root measurements, Helstrom
// discrimination, and the unambiguous-state-elimination (USE) measurement
// honest Bob uses.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qot/bits.hpp"
#include "qot/linalg.hpp"
#include "qot/rng.hpp"

namespace qot {

// Labeled positive operators summing to the identity.
class Povm {
 public:
  Povm(std::vector<std::string> labels, std::vector<ComplexMatrix> effects, double tol = 1e-10);

  std::size_t size() const { return effects_.size(); }
  Index dim() const { return effects_.front().rows(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const ComplexMatrix& effect(std::size_t i) const { return effects_.at(i); }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  // Tr(E_i rho), clipped at zero.
  std::vector<double> probabilities(const ComplexMatrix& rho) const;
  std::vector<double> probabilities(const DensityMatrix& rho) const {
    return probabilities(rho.matrix());
  }

  // max-norm of sum_i E_i - 1.
  double completeness_error() const;

 private:
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> effects_;
};

enum class SymmetryCase {
  kCase1,  // generator visits inputs 00 -> 01 -> 11 -> 10
  kCase2,  // generator visits inputs 00 -> 11 -> 01 -> 10
};

// Four pure states |psi_k> = U^k |psi_0> with U^4 = 1, stored in generator
// order k = 0..3.
struct SymmetricStateSet {
  std::array<StateVector, 4> states;
  ComplexMatrix generator;
  SymmetryCase case_tag = SymmetryCase::kCase1;

  // Throws DomainError unless U^4 = 1 and U|psi_k> = |psi_{k+1}> within tol.
  void validate(double tol = 1e-9) const;
  // Input bits encoded by states[k].
  BitPair input_for(int k) const;
};

// Gram matrix of a symmetric set in the circulant form
//   [[1, f, G, f*], [f*, 1, f, G], [G, f*, 1, f], [f, G, f*, 1]].
struct GramMatrix {
  Complex f;
  double G = 0.0;
  ComplexMatrix matrix;
};

ComplexMatrix gram_pattern(Complex f, double G);

// R = |+><0| - |-><1|.
ComplexMatrix r_gate();

// Encodes 00 -> |00>, 01 -> |++>, 11 -> |11>, 10 -> |-->.
StateVector encode_input(BitPair x);

// {|00>, |++>, |11>, |-->} generated by R (x) R.
SymmetricStateSet protocol_state_set();

// Throws DomainError when the pairwise overlaps break the circulant pattern.
GramMatrix gram_matrix(const SymmetricStateSet& set, double tol = 1e-9);

// Square-root measurement E_i = rho^{-1/2} p_i rho_i rho^{-1/2} with
// rho = sum_i p_i rho_i, inverse taken on the support. Outcomes are labeled
// "0".."n-1"; when rho is rank deficient a "residual" effect projecting on
// the kernel completes the POVM.
Povm srm_construct(const std::vector<DensityMatrix>& states, const std::vector<double>& priors);

// sum_i p_i Tr(E_i rho_i) for the square-root measurement.
double srm_success_probability(const std::vector<DensityMatrix>& states,
                               const std::vector<double>& priors);

// (1/16) (sum_i sqrt(lambda_i))^2 with lambda_i from a numeric eigensolve of
// the Gram matrix; valid for equiprobable symmetric pure states.
double srm_success_from_gram_numeric(const GramMatrix& gram);

struct HelstromResult {
  Povm povm;  // outcome "0" guesses rho0, outcome "1" guesses rho1
  double success = 0.0;
};

// Minimum-error discrimination of two states. The null space of
// p0 rho0 - p1 rho1 is assigned to outcome "0".
HelstromResult helstrom_discriminate(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                     double prior0);

// Z on the first qubit and X on the second. Labels follow the star notation:
// "0*" = |0+>, "1*" = |1->  (c = 0, x0 = 0 / 1),
// "*0" = |0->, "*1" = |1+>  (c = 1, x1 = 0 / 1).
Povm use_measurement_povm();

struct UseOutcome {
  int c = 0;      // which of Alice's bits was learned
  int value = 0;  // its value
};
UseOutcome decode_use(std::string_view label);

// Two-qubit product-basis measurements used for the test rounds.
Povm zz_povm();  // labels "00", "01", "10", "11"
Povm xx_povm();  // labels "++", "+-", "-+", "--"

// Label of the ZZ or XX outcome that encode_input(x) produces with certainty.
std::string test_label_for(BitPair x);
// ZZ for 00 / 11, XX for 01 / 10.
const Povm& test_povm_for(BitPair x);

// Draws index i with probability probs[i]. Throws DomainError if the
// probabilities do not sum to 1 within 1e-8.
std::size_t sample_index(const std::vector<double>& probs, RngStream& rng);

// Draws an outcome index of povm on rho.
std::size_t sample_measurement(const DensityMatrix& rho, const Povm& povm, RngStream& rng);

}  // namespace qot
