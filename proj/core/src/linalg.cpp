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

#include "qot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qot/error.hpp"

namespace qot {
namespace {

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a nonempty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

// Eigenvalues clipped into [0, inf) with the roundoff tolerance applied.
RealVector clipped_psd_values(const RealVector& values, const char* what) {
  RealVector out = values;
  for (Index i = 0; i < out.size(); ++i) {
    if (out(i) < -kNegativeEigenLimit) {
      throw DomainError(std::string(what) + ": operator is not positive semidefinite (eigenvalue " +
                        std::to_string(out(i)) + ")");
    }
    out(i) = std::max(out(i), 0.0);
  }
  return out;
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (!is_power_of_two(amps_.size())) {
    throw DimensionError("StateVector: dimension " + std::to_string(amps_.size()) +
                         " is not a power of two");
  }
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw DomainError("StateVector: squared norm " + std::to_string(n2) + " differs from 1");
  }
}

StateVector StateVector::normalized(ComplexVector v) {
  const double n = v.norm();
  if (n == 0.0) throw DomainError("StateVector::normalized: zero vector");
  v /= n;
  return StateVector(std::move(v));
}

StateVector StateVector::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw DimensionError("StateVector::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return StateVector(std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw DimensionError("StateVector::inner: dimension mismatch");
  return amps_.dot(other.amps_);  // conjugates the left operand
}

ComplexMatrix StateVector::projector() const { return amps_ * amps_.adjoint(); }

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  require_square(m, "DensityMatrix");
  if (!is_hermitian(m, kHermitianTolerance)) {
    throw DomainError("DensityMatrix: matrix is not Hermitian");
  }
  m_ = 0.5 * (m + m.adjoint());
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr) + " differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenClip) {
    throw DomainError("DensityMatrix: negative eigenvalue " +
                      std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_unnormalized(const ComplexMatrix& m) {
  require_square(m, "DensityMatrix::from_unnormalized");
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw DomainError("DensityMatrix::from_unnormalized: nonpositive trace");
  return DensityMatrix(m / tr);
}

ComplexMatrix identity(Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  return StateVector::normalized(kron(a.amplitudes(), b.amplitudes()));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - identity(m.rows())).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<Index>& dims,
                            const std::vector<Index>& keep) {
  require_square(m, "partial_trace");
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  if (dims.empty() || total != m.rows()) {
    throw DimensionError("partial_trace: subsystem dimensions multiply to " +
                         std::to_string(total) + " but matrix has dimension " +
                         std::to_string(m.rows()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || k >= static_cast<Index>(dims.size()) || kept[k]) {
      throw DimensionError("partial_trace: invalid or repeated subsystem index " +
                           std::to_string(k));
    }
    kept[k] = true;
  }

  std::vector<Index> stride(dims.size());
  Index s = 1;
  for (Index k = static_cast<Index>(dims.size()) - 1; k >= 0; --k) {
    stride[k] = s;
    s *= dims[k];
  }

  // Offsets contributed to the flat index by every multi-index over the kept
  // (resp. traced) subsystems, enumerated big-endian.
  auto offsets = [&](bool want_kept) {
    std::vector<Index> out{0};
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (kept[k] != want_kept) continue;
      std::vector<Index> next;
      next.reserve(out.size() * dims[k]);
      for (Index base : out) {
        for (Index d = 0; d < dims[k]; ++d) next.push_back(base + d * stride[k]);
      }
      out = std::move(next);
    }
    return out;
  };
  const std::vector<Index> ko = offsets(true);
  const std::vector<Index> to = offsets(false);

  const Index n = static_cast<Index>(ko.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      Complex acc = 0.0;
      for (Index t : to) acc += m(ko[r] + t, ko[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Index>& dims,
                            const std::vector<Index>& keep) {
  return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

HermitianEigen eig_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m, tol)) throw DomainError("eig_hermitian: matrix is not Hermitian");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw DomainError("eig_hermitian: eigensolver failed");
  HermitianEigen out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  const HermitianEigen e = eig_hermitian(m, 1e-10);
  RealVector v = clipped_psd_values(e.values, "sqrt_psd");
  // Solver noise on a null eigenvalue would otherwise surface as ~1e-8 after
  // the square root.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, v.maxCoeff());
  for (Index i = 0; i < v.size(); ++i) v(i) = v(i) <= floor ? 0.0 : std::sqrt(v(i));
  return e.vectors * v.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix inverse_sqrt_on_support(const ComplexMatrix& m, double cutoff) {
  const HermitianEigen e = eig_hermitian(m, 1e-10);
  const RealVector v = clipped_psd_values(e.values, "inverse_sqrt_on_support");
  RealVector inv(v.size());
  for (Index i = 0; i < v.size(); ++i) inv(i) = v(i) > cutoff ? 1.0 / std::sqrt(v(i)) : 0.0;
  return e.vectors * inv.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix support_projector(const ComplexMatrix& m, double cutoff) {
  const HermitianEigen e = eig_hermitian(m, 1e-10);
  ComplexMatrix p = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > cutoff) p += e.vectors.col(i) * e.vectors.col(i).adjoint();
  }
  return p;
}

double trace_norm(const ComplexMatrix& hermitian) {
  return eig_hermitian(hermitian, 1e-10).values.cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  // Trace norm of sqrt(rho) sqrt(sigma), via its singular values.
  const ComplexMatrix prod = sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix());
  return std::clamp(Eigen::JacobiSVD<ComplexMatrix>(prod).singularValues().sum(), 0.0, 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  return std::clamp(0.5 * trace_norm(rho.matrix() - sigma.matrix()), 0.0, 1.0);
}

std::pair<StateVector, StateVector> maximal_overlap_purifications(const DensityMatrix& rho,
                                                                  const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "maximal_overlap_purifications");
  const Index d = rho.dim();
  const ComplexMatrix sr = sqrt_psd(rho.matrix());
  const ComplexMatrix ss = sqrt_psd(sigma.matrix());

  // Tr(sqrt(rho) sqrt(sigma) W) is maximal, and equal to the fidelity, for
  // W = Q P^dagger where sqrt(rho) sqrt(sigma) = P S Q^dagger.
  Eigen::JacobiSVD<ComplexMatrix> svd(sr * ss, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix w = svd.matrixV() * svd.matrixU().adjoint();
  const ComplexMatrix a = sr;
  const ComplexMatrix b = ss * w;

  // (X (x) 1) sum_i |i>|i> has amplitude X(j, i) at flat index j * d + i.
  auto purify = [d](const ComplexMatrix& x) {
    ComplexVector v(d * d);
    for (Index j = 0; j < d; ++j) {
      for (Index i = 0; i < d; ++i) v(j * d + i) = x(j, i);
    }
    return StateVector::normalized(std::move(v));
  };
  return {purify(a), purify(b)};
}

}  // namespace qot
