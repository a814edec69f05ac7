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

#include "qot/framework.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qot/error.hpp"

namespace qot {
namespace {

double ideal_entry(const std::string& label, BitPair x) {
  const UseOutcome o = decode_use(label);
  return o.value == x[o.c] ? 0.5 : 0.0;
}

BitPair xor_bits(BitPair a, BitPair b) {
  return BitPair{static_cast<std::uint8_t>(a.x0 ^ b.x0), static_cast<std::uint8_t>(a.x1 ^ b.x1)};
}

Index bits_index(BitPair x) { return 2 * x.x0 + x.x1; }

ComplexVector apply_on_first(const ComplexMatrix& op, const ComplexVector& v, Index rest) {
  return kron(op, identity(rest)) * v;
}

}  // namespace

void GenericFramework::validate(double tol) const {
  const Index dbm = dim_b * dim_m;
  const Index dma = dim_m * dim_a;
  if (dim_b < 1 || dim_m < 1 || dim_a < 1) throw DimensionError("GenericFramework: empty subsystem");
  if (initial_bm.rows() != dbm || initial_bm.cols() != dbm) {
    throw DimensionError("GenericFramework: initial state is not on B (x) M");
  }
  DensityMatrix check(initial_bm);
  (void)check;
  if (v.empty()) throw DomainError("GenericFramework: no rounds");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].rows() != dbm || v[i].cols() != dbm) {
      throw DimensionError("GenericFramework: V in round " + std::to_string(i + 1) +
                           " is not on B (x) M");
    }
    if (!is_unitary(v[i], tol)) {
      throw DomainError("GenericFramework: V in round " + std::to_string(i + 1) + " not unitary");
    }
  }
  for (int k = 0; k < 4; ++k) {
    if (u[k].size() != v.size()) {
      throw DomainError("GenericFramework: input " + kCyclicInputs[k].str() +
                        " has the wrong number of rounds");
    }
    for (const auto& m : u[k]) {
      if (m.rows() != dma || m.cols() != dma) {
        throw DimensionError("GenericFramework: U is not on M (x) A");
      }
      if (!is_unitary(m, tol)) {
        throw DomainError("GenericFramework: U for input " + kCyclicInputs[k].str() +
                          " not unitary");
      }
    }
  }
  if (final_povm.dim() != dbm) throw DimensionError("GenericFramework: POVM is not on B (x) M");
  if (final_povm.size() != 4) throw DomainError("GenericFramework: POVM needs four outcomes");
  for (const char* label : {"0*", "1*", "*0", "*1"}) {
    if (!final_povm.find(label)) {
      throw DomainError(std::string("GenericFramework: POVM lacks outcome ") + label);
    }
  }
  const double err = correctness_error(*this);
  if (err > tol) {
    throw DomainError("GenericFramework: honest outputs violate correctness (error " +
                      std::to_string(err) + ")");
  }
}

DensityMatrix run_framework(const GenericFramework& fw, BitPair input) {
  const int k = cyclic_index(input);
  if (k < 0) throw DomainError("run_framework: invalid input");
  ComplexMatrix alice0 = ComplexMatrix::Zero(fw.dim_a, fw.dim_a);
  alice0(0, 0) = 1.0;
  ComplexMatrix rho = kron(fw.initial_bm, alice0);
  const ComplexMatrix id_b = identity(fw.dim_b);
  const ComplexMatrix id_a = identity(fw.dim_a);
  for (std::size_t i = 0; i < fw.rounds(); ++i) {
    const ComplexMatrix step = kron(fw.v[i], id_a) * kron(id_b, fw.u[k].at(i));
    rho = step * rho * step.adjoint();
  }
  return DensityMatrix(partial_trace(rho, {fw.dim_b, fw.dim_m, fw.dim_a}, {0, 1}));
}

std::array<std::vector<double>, 4> correctness_table(const GenericFramework& fw) {
  std::array<std::vector<double>, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = fw.final_povm.probabilities(run_framework(fw, kCyclicInputs[k]));
  return out;
}

double correctness_error(const GenericFramework& fw) {
  const auto table = correctness_table(fw);
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (std::size_t z = 0; z < fw.final_povm.size(); ++z) {
      const double want = ideal_entry(fw.final_povm.label(z), kCyclicInputs[k]);
      worst = std::max(worst, std::abs(table[k][z] - want));
    }
  }
  return worst;
}

GenericFramework example_framework() {
  const ComplexMatrix gen = kron(r_gate(), r_gate());
  std::array<std::vector<ComplexMatrix>, 4> u;
  ComplexMatrix power = identity(4);
  for (int k = 0; k < 4; ++k) {
    u[k] = {power};
    power = gen * power;
  }
  ComplexMatrix start = ComplexMatrix::Zero(4, 4);
  start(0, 0) = 1.0;
  GenericFramework fw{1, 4, 1, start, u, {identity(4)}, use_measurement_povm()};
  fw.validate();
  return fw;
}

GenericFramework degenerate_framework() {
  ComplexMatrix start = ComplexMatrix::Zero(4, 4);
  start(0, 0) = 1.0;
  std::array<std::vector<ComplexMatrix>, 4> u;
  for (auto& r : u) r = {identity(4)};
  return GenericFramework{1, 4, 1, start, u, {identity(4)}, use_measurement_povm()};
}

AliceAttackResult framework_alice_attack(const GenericFramework& fw, BitPair first, BitPair second) {
  const int diff = (first.x0 != second.x0) + (first.x1 != second.x1);
  if (diff != 1) throw DomainError("framework_alice_attack: inputs must differ in exactly one bit");
  const DensityMatrix s0 = run_framework(fw, first);
  const DensityMatrix s1 = run_framework(fw, second);
  const Index d = s0.dim();
  const auto [p0, p1] = maximal_overlap_purifications(s0, s1);
  const std::array<ComplexVector, 2> phi = {p0.amplitudes(), p1.amplitudes()};

  AliceAttackResult res;
  res.pair_first = first;
  res.pair_second = second;
  res.fidelity = fidelity(s0, s1);

  // mu^z_D(a, b) = 1/2 <phi_b| Pi^z (x) 1 |phi_a>
  ComplexMatrix by_c[2] = {ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)};
  for (std::size_t z = 0; z < fw.final_povm.size(); ++z) {
    const int c = decode_use(fw.final_povm.label(z)).c;
    std::array<ComplexVector, 2> proj;
    for (int a = 0; a < 2; ++a) proj[a] = apply_on_first(fw.final_povm.effect(z), phi[a], d);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) by_c[c](a, b) += 0.5 * phi[b].dot(proj[a]);
    }
  }
  res.mu_measured = by_c[0] + by_c[1];
  res.mu_unmeasured = ComplexMatrix(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) res.mu_unmeasured(a, b) = 0.5 * phi[b].dot(phi[a]);
  }
  res.no_signalling_error = (res.mu_measured - res.mu_unmeasured).cwiseAbs().maxCoeff();

  res.prob_c0 = by_c[0].trace().real();
  const double prob_c1 = by_c[1].trace().real();
  if (res.prob_c0 <= 0.0 || prob_c1 <= 0.0) {
    throw DomainError("framework_alice_attack: one value of c never occurs");
  }
  res.mu_c0 = by_c[0] / res.prob_c0;
  res.mu_c1 = by_c[1] / prob_c1;
  res.distinguishability = 0.5 * trace_norm(res.mu_c0 - res.mu_c1);
  res.guess_probability = 0.5 * (1.0 + trace_norm(by_c[0] - by_c[1]));

  ComplexVector full(d * d * 2);
  full << phi[0] / std::sqrt(2.0), phi[1] / std::sqrt(2.0);
  // D is the leading factor in this layout: (D, BM, P).
  const ComplexMatrix rho = full * full.adjoint();
  res.bob_marginal = partial_trace(rho, {2, d, d}, {1});
  const ComplexMatrix honest = 0.5 * (s0.matrix() + s1.matrix());
  res.undetectability_error = (res.bob_marginal - honest).cwiseAbs().maxCoeff();
  return res;
}

double lemma_annihilation_residual(const GenericFramework& fw,
                                   const ComplexMatrix& purifier_unitary) {
  double worst = 0.0;
  for (const BitPair x : kCyclicInputs) {
    const DensityMatrix sigma = run_framework(fw, x);
    const Index d = sigma.dim();
    ComplexVector phi = maximal_overlap_purifications(sigma, sigma).first.amplitudes();
    if (purifier_unitary.size() > 0) {
      if (purifier_unitary.rows() != d || !is_unitary(purifier_unitary)) {
        throw DomainError("lemma_annihilation_residual: bad purifier unitary");
      }
      phi = kron(identity(d), purifier_unitary) * phi;
    }
    const auto probs = fw.final_povm.probabilities(sigma);
    for (std::size_t z = 0; z < probs.size(); ++z) {
      if (probs[z] > 1e-12) continue;
      worst = std::max(worst, apply_on_first(fw.final_povm.effect(z), phi, d).norm());
    }
  }
  return worst;
}

RecastCheck recast_rot_in_framework(const GenericFramework& fw, BitPair z) {
  std::array<DensityMatrix, 4> sigma = {run_framework(fw, kCyclicInputs[0]),
                                        run_framework(fw, kCyclicInputs[1]),
                                        run_framework(fw, kCyclicInputs[2]),
                                        run_framework(fw, kCyclicInputs[3])};
  const Index d = sigma[0].dim();
  // Layout (BM, D, C, P); C holds Alice's ROT output x, D receives z XOR x.
  const Index total = d * 4 * 4 * d;
  ComplexVector omega = ComplexVector::Zero(total);
  std::array<ComplexVector, 4> branch;
  for (int k = 0; k < 4; ++k) {
    const BitPair x = kCyclicInputs[k];
    const ComplexVector phi = maximal_overlap_purifications(sigma[k], sigma[k]).first.amplitudes();
    const ComplexVector c = StateVector::basis(4, bits_index(x)).amplitudes();
    const ComplexVector dreg = StateVector::basis(4, bits_index(xor_bits(z, x))).amplitudes();
    // phi is laid out (BM, P); splice D and C in between.
    ComplexVector v = ComplexVector::Zero(total);
    for (Index i = 0; i < d; ++i) {
      for (Index p = 0; p < d; ++p) {
        const Complex amp = phi(i * d + p);
        if (amp == Complex(0.0)) continue;
        v += 0.5 * amp * kron(kron(kron(StateVector::basis(d, i).amplitudes(), dreg), c),
                              StateVector::basis(d, p).amplitudes());
      }
    }
    branch[k] = v;
    omega += v;
  }
  const std::vector<Index> dims = {d, 4, 4, d};
  RecastCheck out;
  out.bob_unmeasured = partial_trace(ComplexMatrix(omega * omega.adjoint()), dims, {0, 1});
  out.bob_measured = ComplexMatrix::Zero(4 * d, 4 * d);
  for (int k = 0; k < 4; ++k) {
    out.bob_measured += partial_trace(ComplexMatrix(branch[k] * branch[k].adjoint()), dims, {0, 1});
  }
  out.max_abs_diff = (out.bob_unmeasured - out.bob_measured).cwiseAbs().maxCoeff();

  const Povm srm = srm_construct({sigma.begin(), sigma.end()}, {0.25, 0.25, 0.25, 0.25});
  for (int k = 0; k < 4; ++k) {
    const BitPair guess_x = kCyclicInputs[k];
    for (int m = 0; m < 4; ++m) {
      const BitPair seen{static_cast<std::uint8_t>(m >> 1), static_cast<std::uint8_t>(m & 1)};
      if (!(xor_bits(seen, guess_x) == z)) continue;
      const ComplexMatrix eff = kron(srm.effect(k), StateVector::basis(4, m).projector());
      out.bob_guess_z += (eff * out.bob_unmeasured).trace().real();
    }
  }
  return out;
}

}  // namespace qot
