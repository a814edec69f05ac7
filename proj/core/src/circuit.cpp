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

#include "qot/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qot/error.hpp"
#include "qot/optimize.hpp"

namespace qot {
namespace {

double rad(double deg) { return deg * std::numbers::pi / 180.0; }
double deg(double r) { return r * 180.0 / std::numbers::pi; }

LocalUnitaryParams params_from(const std::vector<double>& x) {
  LocalUnitaryParams p;
  for (int q = 0; q < 3; ++q) {
    for (int k = 0; k < 3; ++k) p.angles[q][k] = deg(x[static_cast<std::size_t>(3 * q + k)]);
  }
  return p;
}

}  // namespace

CircuitParams table_iv_params() {
  return CircuitParams{{120.0, 90.0, 116.565}, {22.5, 90.0, 180.0}, -138.190, 180.0};
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::numbers::sqrt2;
}

ComplexMatrix cp_gate(double alpha_deg) {
  ComplexMatrix m = identity(4);
  m(3, 3) = std::polar(1.0, rad(alpha_deg));
  return m;
}

ComplexMatrix ccp_gate(double beta_deg) {
  ComplexMatrix m = identity(8);
  m(7, 7) = std::polar(1.0, rad(beta_deg));
  return m;
}

ComplexMatrix circuit_unitary(double alpha_deg, double beta_deg) {
  const ComplexMatrix id = identity(2);
  return ccp_gate(beta_deg) * kron(kron(id, hadamard()), id) * kron(cp_gate(alpha_deg), id);
}

StateVector circuit_input(const CircuitParams& p) {
  ComplexVector v = ComplexVector::Ones(1);
  for (int q = 0; q < 3; ++q) {
    const double t = rad(p.theta[q]) / 2.0;
    ComplexVector one(2);
    one << std::cos(t), std::sin(t) * std::polar(1.0, -rad(p.phi[q]));
    v = kron(v, one);
  }
  return StateVector(v);
}

StateVector prepare_sigma(const CircuitParams& p) {
  return StateVector::normalized(circuit_unitary(p.alpha, p.beta) * circuit_input(p).amplitudes());
}

StateVector sigma_target() {
  ComplexVector v = ComplexVector::Zero(8);
  // |00>|0>
  v(0) += 1.0;
  // |++>|1>: every B basis state with A = 1, amplitude 1/2
  for (Index b = 0; b < 4; ++b) v(2 * b + 1) += 0.5;
  return StateVector::normalized(v);
}

ComplexMatrix local_unitary(double a_deg, double b_deg, double c_deg) {
  const double a = rad(a_deg);
  const Complex eb = std::polar(1.0, rad(b_deg));
  const Complex ec = std::polar(1.0, rad(c_deg));
  ComplexMatrix m(2, 2);
  m << std::cos(a) * eb, -std::sin(a) * std::conj(ec),  //
      std::sin(a) * ec, std::cos(a) * std::conj(eb);
  return m;
}

ComplexMatrix local_unitary(const LocalUnitaryParams& p) {
  ComplexMatrix m = ComplexMatrix::Ones(1, 1);
  for (const auto& q : p.angles) m = kron(m, local_unitary(q[0], q[1], q[2]));
  return m;
}

LuEquivalenceResult lu_equivalence(const StateVector& candidate, const StateVector& target,
                                   int starts, std::uint64_t seed) {
  if (candidate.dim() != 8 || target.dim() != 8) {
    throw DimensionError("lu_equivalence: both states must have three qubits");
  }
  if (starts < 1) throw DomainError("lu_equivalence: need at least one start");
  const ComplexVector cand = candidate.amplitudes();
  const ComplexVector targ = target.amplitudes();
  const Objective loss = [&](const std::vector<double>& x) {
    ComplexMatrix v = ComplexMatrix::Ones(1, 1);
    for (int q = 0; q < 3; ++q) {
      v = kron(v, local_unitary(deg(x[3 * q]), deg(x[3 * q + 1]), deg(x[3 * q + 2])));
    }
    return 1.0 - std::norm(targ.dot(v * cand));
  };

  LuEquivalenceResult res;
  RngStream base(seed, "lu-equivalence");
  double best_loss = 2.0;
  std::vector<double> best_x;
  bool best_converged = false;
  for (int s = 0; s < starts; ++s) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(s));
    std::vector<double> x0(9);
    for (double& x : x0) x = 2.0 * std::numbers::pi * rng.uniform();
    BfgsOptions opts;
    opts.gradient_tolerance = 1e-10;
    const OptimResult r = minimize_bfgs(loss, x0, opts);
    if (r.value < best_loss) {
      best_loss = r.value;
      best_x = r.x;
      best_converged = r.converged;
    }
    res.history.push_back(1.0 - best_loss);
    ++res.starts;
  }
  res.E = std::clamp(1.0 - best_loss, 0.0, 1.0);
  res.params = params_from(best_x);
  res.converged = best_converged;
  return res;
}

std::array<std::array<double, 2>, 3> single_qubit_spectra(const StateVector& psi) {
  if (psi.dim() != 8) throw DimensionError("single_qubit_spectra: expected three qubits");
  const ComplexMatrix rho = psi.projector();
  std::array<std::array<double, 2>, 3> out{};
  for (Index q = 0; q < 3; ++q) {
    const RealVector ev = eig_hermitian(partial_trace(rho, {2, 2, 2}, {q}), 1e-9).values;
    out[static_cast<std::size_t>(q)] = {ev(0), ev(1)};
  }
  return out;
}

}  // namespace qot
