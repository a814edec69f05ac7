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

#include "qot/cheating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qot/error.hpp"
#include "qot/optimize.hpp"
#include "qot/parallel.hpp"
#include "qot/protocol.hpp"

namespace qot {
namespace {

ComplexVector qubit(double a, double b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

std::array<StateVector, 4> protocol_states() { return protocol_state_set().states; }

}  // namespace

std::pair<QubitBasis, QubitBasis> bob_srm_bases() {
  const double al = std::cos(std::numbers::pi / 8.0);
  const double be = std::sin(std::numbers::pi / 8.0);
  return {QubitBasis{qubit(al, be), qubit(be, -al)}, QubitBasis{qubit(al, -be), qubit(be, al)}};
}

Povm bob_product_povm() {
  const auto [zeta, xi] = bob_srm_bases();
  auto e = [](const ComplexVector& p, const ComplexVector& q) {
    const ComplexVector v = kron(p, q);
    return ComplexMatrix(v * v.adjoint());
  };
  return Povm({"zeta0xi0", "zeta0xi1", "zeta1xi0", "zeta1xi1"},
              {e(zeta.v0, xi.v0), e(zeta.v0, xi.v1), e(zeta.v1, xi.v0), e(zeta.v1, xi.v1)});
}

std::array<BitPair, 4> bob_guess_map() {
  const Povm povm = bob_product_povm();
  const auto states = protocol_states();
  std::array<BitPair, 4> out{};
  for (std::size_t z = 0; z < 4; ++z) {
    double best = -1.0;
    for (int k = 0; k < 4; ++k) {
      const double p = (povm.effect(z) * states[k].projector()).trace().real();
      if (p > best + 1e-12) {
        best = p;
        out[z] = kCyclicInputs[k];
      }
    }
  }
  return out;
}

double product_povm_srm_discrepancy() {
  const auto states = protocol_states();
  std::vector<DensityMatrix> rhos;
  ComplexMatrix avg = ComplexMatrix::Zero(4, 4);
  for (const auto& s : states) {
    rhos.push_back(DensityMatrix::pure(s));
    avg += 0.25 * s.projector();
  }
  const Povm srm = srm_construct(rhos, {0.25, 0.25, 0.25, 0.25});
  const Povm product = bob_product_povm();
  const ComplexMatrix span = support_projector(avg);
  const auto guesses = bob_guess_map();
  double worst = 0.0;
  for (std::size_t z = 0; z < 4; ++z) {
    const ComplexMatrix compressed = span * product.effect(z) * span;
    const auto k = static_cast<std::size_t>(cyclic_index(guesses[z]));
    worst = std::max(worst, (compressed - srm.effect(k)).cwiseAbs().maxCoeff());
  }
  return worst;
}

// `runs` payload rounds plus floor(sqrt(runs)) test rounds on top.
static ProtocolConfig payload_config(std::uint64_t runs, std::uint64_t seed) {
  ProtocolConfig cfg;
  cfg.test_count = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(runs))));
  cfg.total_rounds = runs + *cfg.test_count;
  cfg.seed = seed;
  return cfg;
}

CheatReport bob_cheat_simulate(std::uint64_t runs, std::uint64_t seed) {
  ProtocolConfig cfg = payload_config(runs, seed);
  const Transcript t = run_protocol(cfg, CheatMode::kBob);
  const TranscriptSummary s = summarize(t);
  CheatReport r;
  r.strategy = "bob-srm";
  r.estimate = s.bob_guess.rate();
  r.sigma = s.bob_guess.sigma();
  r.closed_form = (3.0 + 2.0 * std::numbers::sqrt2) / 8.0;
  r.detection = s.test_failures.rate();
  r.trials = s.bob_guess.trials;
  return r;
}

double CheatStateParams::norm_squared() const {
  return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
}

void CheatStateParams::validate(double tol) const {
  if (std::abs(norm_squared() - 1.0) > tol) {
    throw DomainError("CheatStateParams: amplitudes are not normalized");
  }
}

CheatStateParams CheatStateParams::optimal() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {h, h, 0.0, 0.0};
}

CheatStateParams CheatStateParams::from_reals(const std::vector<double>& v) {
  if (v.size() != 8) throw DimensionError("CheatStateParams::from_reals: need eight reals");
  double n = 0.0;
  for (double x : v) n += x * x;
  if (!(n > 0.0)) throw DomainError("CheatStateParams::from_reals: zero vector");
  n = std::sqrt(n);
  return {Complex(v[0], v[1]) / n, Complex(v[2], v[3]) / n, Complex(v[4], v[5]) / n,
          Complex(v[6], v[7]) / n};
}

StateVector cheat_state(const CheatStateParams& p) {
  p.validate();
  const auto states = protocol_states();
  const auto amps = p.amplitudes();
  ComplexVector v = ComplexVector::Zero(16);
  for (int k = 0; k < 4; ++k) v += amps[k] * kron(StateVector::basis(4, k).amplitudes(), states[k].amplitudes());
  return StateVector(v);
}

AliceConditionals alice_conditional_states(const CheatStateParams& p) {
  const StateVector psi = cheat_state(p);
  const ComplexMatrix joint = psi.projector();
  const Povm use = use_measurement_povm();
  ComplexMatrix by_c[2] = {ComplexMatrix::Zero(4, 4), ComplexMatrix::Zero(4, 4)};
  for (std::size_t z = 0; z < use.size(); ++z) {
    const ComplexMatrix op = kron(identity(4), use.effect(z));
    by_c[decode_use(use.label(z)).c] += partial_trace(ComplexMatrix(op * joint), {4, 4}, {0});
  }
  const double p0 = by_c[0].trace().real();
  const double p1 = by_c[1].trace().real();
  return AliceConditionals{DensityMatrix(by_c[0] / p0), DensityMatrix(by_c[1] / p1), p0, p1};
}

double alice_cheat_probability(const CheatStateParams& p) {
  p.validate();
  const double s = std::norm(p.a) + std::norm(p.c);
  const double t = std::norm(p.b) + std::norm(p.d);
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, s * t)));
}

HelstromResult alice_helstrom(const CheatStateParams& p) {
  const AliceConditionals cond = alice_conditional_states(p);
  return helstrom_discriminate(cond.rho0, cond.rho1, cond.prior0);
}

AliceOptimizeResult alice_cheat_optimize(std::uint64_t seed, int starts) {
  if (starts < 1) throw DomainError("alice_cheat_optimize: need at least one start");
  const Objective objective = [](const std::vector<double>& x) {
    return -alice_helstrom(CheatStateParams::from_reals(x)).success;
  };
  const RngStream base(seed, "alice-optimize");
  std::vector<OptimResult> results(static_cast<std::size_t>(starts));
  parallel_for(results.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      RngStream rng = base.substream(s);
      std::vector<double> x0(8);
      for (double& x : x0) x = 2.0 * rng.uniform() - 1.0;
      results[s] = minimize_bfgs(objective, x0);
    }
  });
  AliceOptimizeResult out;
  std::size_t best = 0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    out.start_values.push_back(-results[s].value);
    if (results[s].value < results[best].value) best = s;
  }
  out.params = CheatStateParams::from_reals(results[best].x);
  out.value = -results[best].value;
  out.converged = results[best].converged;
  return out;
}

AliceCheatReport alice_cheat_simulate(const CheatStateParams& p, std::uint64_t runs,
                                      std::uint64_t seed) {
  ProtocolConfig cfg = payload_config(runs, seed);
  const Transcript t = run_protocol(cfg, CheatMode::kAlice, p);
  const TranscriptSummary s = summarize(t);
  AliceCheatReport r;
  r.guess.strategy = "alice-entangled";
  r.guess.estimate = s.alice_guess.rate();
  r.guess.sigma = s.alice_guess.sigma();
  r.guess.closed_form = alice_cheat_probability(p);
  r.guess.detection = s.test_failures.rate();
  r.guess.trials = s.alice_guess.trials;
  r.certain_fraction = s.alice_certain.rate();
  r.certain_sigma = s.alice_certain.sigma();
  r.uncertain_accuracy = s.alice_uncertain.rate();
  r.uncertain_sigma = s.alice_uncertain.sigma();
  r.tests = s.test_failures.trials;
  r.failed_tests = s.test_failures.successes;
  return r;
}

}  // namespace qot
