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

#include "qot/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qot/error.hpp"

namespace qot {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexVector ket(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

ComplexVector zero() { return ket(1.0, 0.0); }
ComplexVector one() { return ket(0.0, 1.0); }
ComplexVector plus() { return ket(kInvSqrt2, kInvSqrt2); }
ComplexVector minus() { return ket(kInvSqrt2, -kInvSqrt2); }

ComplexMatrix proj(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

Povm::Povm(std::vector<std::string> labels, std::vector<ComplexMatrix> effects, double tol)
    : labels_(std::move(labels)), effects_(std::move(effects)) {
  if (effects_.empty()) throw DomainError("Povm: no effects");
  if (labels_.size() != effects_.size()) throw DomainError("Povm: label/effect count mismatch");
  const Index d = effects_.front().rows();
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    const ComplexMatrix& e = effects_[i];
    if (e.rows() != d || e.cols() != d) throw DimensionError("Povm: effects differ in dimension");
    if (!is_hermitian(e, tol)) throw DomainError("Povm: effect '" + labels_[i] + "' not Hermitian");
    if (eig_hermitian(e, tol).values.minCoeff() < -tol) {
      throw DomainError("Povm: effect '" + labels_[i] + "' is not positive semidefinite");
    }
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j]) throw DomainError("Povm: duplicate label '" + labels_[i] + "'");
    }
  }
  if (completeness_error() > tol) {
    throw DomainError("Povm: effects do not sum to identity (error " +
                      std::to_string(completeness_error()) + ")");
  }
}

std::optional<std::size_t> Povm::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t Povm::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw DomainError("Povm: unknown outcome label '" + std::string(label) + "'");
}

std::vector<double> Povm::probabilities(const ComplexMatrix& rho) const {
  if (rho.rows() != dim()) throw DimensionError("Povm::probabilities: dimension mismatch");
  std::vector<double> p(effects_.size());
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    p[i] = std::max(0.0, (effects_[i] * rho).trace().real());
  }
  return p;
}

double Povm::completeness_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (const auto& e : effects_) sum += e;
  return (sum - identity(dim())).cwiseAbs().maxCoeff();
}

void SymmetricStateSet::validate(double tol) const {
  const ComplexMatrix& u = generator;
  if (u.rows() != states[0].dim() || u.cols() != states[0].dim()) {
    throw DimensionError("SymmetricStateSet: generator dimension mismatch");
  }
  const ComplexMatrix u2 = u * u;
  if ((u2 * u2 - identity(u.rows())).cwiseAbs().maxCoeff() > tol) {
    throw DomainError("SymmetricStateSet: generator does not satisfy U^4 = 1");
  }
  for (int k = 0; k < 4; ++k) {
    const ComplexVector next = u * states[k].amplitudes();
    if ((next - states[(k + 1) % 4].amplitudes()).cwiseAbs().maxCoeff() > tol) {
      throw DomainError("SymmetricStateSet: generator does not map state " + std::to_string(k) +
                        " to its successor");
    }
  }
}

BitPair SymmetricStateSet::input_for(int k) const {
  static constexpr std::array<BitPair, 4> kCase2 = {BitPair{0, 0}, BitPair{1, 1}, BitPair{0, 1},
                                                    BitPair{1, 0}};
  return case_tag == SymmetryCase::kCase1 ? kCyclicInputs.at(k) : kCase2.at(k);
}

ComplexMatrix gram_pattern(Complex f, double G) {
  const Complex fc = std::conj(f);
  const Complex g = G;
  ComplexMatrix m(4, 4);
  m << 1.0, f, g, fc,  //
      fc, 1.0, f, g,   //
      g, fc, 1.0, f,   //
      f, g, fc, 1.0;
  return m;
}

ComplexMatrix r_gate() { return plus() * zero().adjoint() - minus() * one().adjoint(); }

StateVector encode_input(BitPair x) {
  if (x == BitPair{0, 0}) return StateVector(kron(zero(), zero()));
  if (x == BitPair{0, 1}) return StateVector(kron(plus(), plus()));
  if (x == BitPair{1, 1}) return StateVector(kron(one(), one()));
  return StateVector(kron(minus(), minus()));
}

SymmetricStateSet protocol_state_set() {
  SymmetricStateSet set{{encode_input(kCyclicInputs[0]), encode_input(kCyclicInputs[1]),
                         encode_input(kCyclicInputs[2]), encode_input(kCyclicInputs[3])},
                        kron(r_gate(), r_gate()),
                        SymmetryCase::kCase1};
  set.validate();
  return set;
}

GramMatrix gram_matrix(const SymmetricStateSet& set, double tol) {
  ComplexMatrix m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = set.states[i].inner(set.states[j]);
  }
  const Complex f = m(0, 1);
  const Complex g = m(0, 2);
  if (std::abs(g.imag()) > tol) throw DomainError("gram_matrix: opposite overlap is not real");
  if ((m - gram_pattern(f, g.real())).cwiseAbs().maxCoeff() > tol) {
    throw DomainError("gram_matrix: overlaps do not follow the symmetric circulant pattern");
  }
  return GramMatrix{f, g.real(), m};
}

Povm srm_construct(const std::vector<DensityMatrix>& states, const std::vector<double>& priors) {
  if (states.empty()) throw DomainError("srm_construct: empty state list");
  if (priors.size() != states.size()) throw DomainError("srm_construct: prior count mismatch");
  const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("srm_construct: priors do not sum to 1");
  const Index d = states.front().dim();
  ComplexMatrix avg = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) throw DimensionError("srm_construct: states differ in dimension");
    if (priors[i] < 0.0) throw DomainError("srm_construct: negative prior");
    avg += priors[i] * states[i].matrix();
  }
  const ComplexMatrix inv = inverse_sqrt_on_support(avg);
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> effects;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ComplexMatrix e = inv * (priors[i] * states[i].matrix()) * inv;
    labels.push_back(std::to_string(i));
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  const ComplexMatrix residual = identity(d) - support_projector(avg);
  if (residual.cwiseAbs().maxCoeff() > 1e-12) {
    labels.emplace_back("residual");
    effects.push_back(residual);
  }
  return Povm(std::move(labels), std::move(effects));
}

double srm_success_probability(const std::vector<DensityMatrix>& states,
                               const std::vector<double>& priors) {
  const Povm povm = srm_construct(states, priors);
  double p = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    p += priors[i] * (povm.effect(i) * states[i].matrix()).trace().real();
  }
  return p;
}

double srm_success_from_gram_numeric(const GramMatrix& gram) {
  const RealVector lambda = eig_hermitian(gram.matrix, 1e-9).values;
  double s = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -kNegativeEigenLimit) {
      throw DomainError("srm_success_from_gram_numeric: Gram matrix is not PSD");
    }
    s += std::sqrt(std::max(0.0, lambda(i)));
  }
  const double n = static_cast<double>(lambda.size());
  return s * s / (n * n);
}

HelstromResult helstrom_discriminate(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                     double prior0) {
  if (rho0.dim() != rho1.dim()) throw DimensionError("helstrom_discriminate: dimension mismatch");
  if (!(prior0 >= 0.0 && prior0 <= 1.0)) {
    throw DomainError("helstrom_discriminate: prior outside [0, 1]");
  }
  const double prior1 = 1.0 - prior0;
  const ComplexMatrix diff = prior0 * rho0.matrix() - prior1 * rho1.matrix();
  const HermitianEigen e = eig_hermitian(diff, 1e-10);
  const Index d = diff.rows();
  ComplexMatrix p0 = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    if (e.values(i) >= -1e-12) p0 += e.vectors.col(i) * e.vectors.col(i).adjoint();
  }
  const ComplexMatrix p1 = identity(d) - p0;
  const double success = prior0 * (p0 * rho0.matrix()).trace().real() +
                         prior1 * (p1 * rho1.matrix()).trace().real();
  return HelstromResult{Povm({"0", "1"}, {p0, p1}), success};
}

Povm use_measurement_povm() {
  return Povm({"0*", "1*", "*0", "*1"}, {proj(kron(zero(), plus())), proj(kron(one(), minus())),
                                         proj(kron(zero(), minus())), proj(kron(one(), plus()))});
}

UseOutcome decode_use(std::string_view label) {
  if (label.size() == 2) {
    if (label[1] == '*' && (label[0] == '0' || label[0] == '1')) return {0, label[0] - '0'};
    if (label[0] == '*' && (label[1] == '0' || label[1] == '1')) return {1, label[1] - '0'};
  }
  throw DomainError("decode_use: not a star-notation label: '" + std::string(label) + "'");
}

Povm zz_povm() {
  return Povm({"00", "01", "10", "11"}, {proj(kron(zero(), zero())), proj(kron(zero(), one())),
                                         proj(kron(one(), zero())), proj(kron(one(), one()))});
}

Povm xx_povm() {
  return Povm({"++", "+-", "-+", "--"}, {proj(kron(plus(), plus())), proj(kron(plus(), minus())),
                                         proj(kron(minus(), plus())), proj(kron(minus(), minus()))});
}

std::string test_label_for(BitPair x) {
  if (x == BitPair{0, 0}) return "00";
  if (x == BitPair{1, 1}) return "11";
  if (x == BitPair{0, 1}) return "++";
  return "--";
}

const Povm& test_povm_for(BitPair x) {
  static const Povm zz = zz_povm();
  static const Povm xx = xx_povm();
  return x.x0 == x.x1 ? zz : xx;
}

std::size_t sample_index(const std::vector<double>& probs, RngStream& rng) {
  if (probs.empty()) throw DomainError("sample_index: empty distribution");
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-8) {
    throw DomainError("sample_index: probabilities sum to " + std::to_string(total));
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

std::size_t sample_measurement(const DensityMatrix& rho, const Povm& povm, RngStream& rng) {
  return sample_index(povm.probabilities(rho), rng);
}

}  // namespace qot
