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

// Dense complex linear algebra over small Hilbert spaces.
//
// Subsystem ordering is big-endian everywhere in the library: in a tensor
// product A (x) B (x) C the first factor is the most significant digit of the
// flattened index, i.e. |a b c> sits at index (a * dB + b) * dC + c.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qot {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kEigenClip = 1e-10;
inline constexpr double kNegativeEigenLimit = 1e-8;

// Normalized pure state on a 2^n dimensional space.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  // Rescales a nonzero vector to unit norm.
  static StateVector normalized(ComplexVector v);
  static StateVector basis(Index dim, Index k);

  Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_(i); }

  // <this|other>
  Complex inner(const StateVector& other) const;
  ComplexMatrix projector() const;

 private:
  ComplexVector amps_;
};

// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Index dim);
  // Divides a nonzero PSD operator by its trace.
  static DensityMatrix from_unnormalized(const ComplexMatrix& m);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

ComplexMatrix identity(Index dim);
ComplexMatrix dagger(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
StateVector kron(const StateVector& a, const StateVector& b);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

// Traces out every subsystem not listed in `keep`. `dims` is the subsystem
// factorization of m (big-endian); kept subsystems stay in their original
// relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<Index>& dims,
                            const std::vector<Index>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Index>& dims,
                            const std::vector<Index>& keep);

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns, orthonormal
};

// Throws DomainError when m is not Hermitian within `tol`.
HermitianEigen eig_hermitian(const ComplexMatrix& m, double tol = 1e-10);

// Principal square root of a PSD operator. Eigenvalues in
// [-kNegativeEigenLimit, 0) are treated as roundoff and clipped.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

// Moore-Penrose inverse square root restricted to the support (eigenvalues
// above `cutoff`), zero on the kernel.
ComplexMatrix inverse_sqrt_on_support(const ComplexMatrix& m, double cutoff = kEigenClip);

// Projector onto the eigenspace of eigenvalues above `cutoff`.
ComplexMatrix support_projector(const ComplexMatrix& m, double cutoff = kEigenClip);

// Sum of absolute eigenvalues of a Hermitian operator.
double trace_norm(const ComplexMatrix& hermitian);

// Root fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Purifications |r>, |s> of rho and sigma on (system (x) purifier), purifier
// of the same dimension, chosen so that <r|s> = fidelity(rho, sigma) >= 0.
std::pair<StateVector, StateVector> maximal_overlap_purifications(const DensityMatrix& rho,
                                                                  const DensityMatrix& sigma);

}  // namespace qot
