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

// Optimal attacks on the four-state USE protocol: Bob's minimum-error
// measurement and Alice's entangled cheat state.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qot/bits.hpp"
#include "qot/linalg.hpp"
#include "qot/measurement.hpp"
#include "qot/rng.hpp"

namespace qot {

struct CheatReport {
  std::string strategy;
  double estimate = 0.0;
  double sigma = 0.0;
  std::optional<double> closed_form;
  std::optional<double> detection;
  std::uint64_t trials = 0;
};

// ---- Bob ------------------------------------------------------------------

struct QubitBasis {
  ComplexVector v0;
  ComplexVector v1;
};

// zeta (first qubit) and xi (second qubit) built from cos(pi/8), sin(pi/8).
std::pair<QubitBasis, QubitBasis> bob_srm_bases();

// Product measurement zeta (x) xi; labels "zeta0xi0", "zeta0xi1", "zeta1xi0",
// "zeta1xi1".
Povm bob_product_povm();

// Most likely protocol input for each product outcome (POVM order).
std::array<BitPair, 4> bob_guess_map();

// Compress each product effect onto span(S) and compare with the SRM effect
// of its guessed input; returns the largest entrywise difference.
double product_povm_srm_discrepancy();

CheatReport bob_cheat_simulate(std::uint64_t runs, std::uint64_t seed = kDefaultSeed);

// ---- Alice ----------------------------------------------------------------

// a|0>_A|00> + b|1>_A|++> + c|2>_A|11> + d|3>_A|-->.
struct CheatStateParams {
  Complex a;
  Complex b;
  Complex c;
  Complex d;

  std::array<Complex, 4> amplitudes() const { return {a, b, c, d}; }
  double norm_squared() const;
  void validate(double tol = 1e-10) const;  // throws DomainError

  // (|00>|0> + |++>|1>) / sqrt 2
  static CheatStateParams optimal();
  // Normalizes eight reals (re a, im a, re b, ...).
  static CheatStateParams from_reals(const std::vector<double>& v);
};

// 16-dimensional vector, Alice's four-level register first.
StateVector cheat_state(const CheatStateParams& p);

struct AliceConditionals {
  DensityMatrix rho0;  // Alice's register given Bob learned x0 (c = 0)
  DensityMatrix rho1;  // given c = 1
  double prior0 = 0.5;
  double prior1 = 0.5;
};

// Obtained by running Bob's USE measurement on the cheat state and grouping
// outcomes by c.
AliceConditionals alice_conditional_states(const CheatStateParams& p);

// (1/2)[1 + sqrt((|a|^2 + |c|^2)(|b|^2 + |d|^2))]
double alice_cheat_probability(const CheatStateParams& p);

HelstromResult alice_helstrom(const CheatStateParams& p);

struct AliceOptimizeResult {
  CheatStateParams params;
  double value = 0.0;
  bool converged = false;
  std::vector<double> start_values;  // best value reached from each start
};

// Multi-start BFGS over the normalized 8-real parameterization, maximizing the
// Helstrom success on the conditional states.
AliceOptimizeResult alice_cheat_optimize(std::uint64_t seed = kDefaultSeed, int starts = 20);

struct AliceCheatReport {
  CheatReport guess;
  double certain_fraction = 0.0;  // rounds where Alice's outcome fixes c
  double certain_sigma = 0.0;
  double uncertain_accuracy = 0.0;  // guess accuracy on the other rounds
  double uncertain_sigma = 0.0;
  std::uint64_t tests = 0;
  std::uint64_t failed_tests = 0;
};

AliceCheatReport alice_cheat_simulate(const CheatStateParams& p, std::uint64_t runs,
                                      std::uint64_t seed = kDefaultSeed);

}  // namespace qot
