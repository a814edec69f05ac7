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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qot/bounds.hpp"
#include "qot/error.hpp"
#include "qot/measurement.hpp"
#include "test_util.hpp"

namespace qot {
namespace {

using testing::max_abs;
using testing::random_density;
using testing::random_state;
using testing::random_unitary;

const double kSrm = (3.0 + 2.0 * std::numbers::sqrt2) / 8.0;

std::vector<DensityMatrix> protocol_states() {
  std::vector<DensityMatrix> out;
  for (const StateVector& s : protocol_state_set().states) out.push_back(DensityMatrix::pure(s));
  return out;
}

TEST(Encoding, OverlapsAndGenerator) {
  const StateVector s00 = encode_input({0, 0}), spp = encode_input({0, 1});
  const StateVector s11 = encode_input({1, 1}), smm = encode_input({1, 0});
  EXPECT_NEAR(std::abs(s00.inner(spp)), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(s00.inner(s11)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(spp.inner(smm)), 0.0, 1e-12);
  // |++> in big-endian amplitudes is uniform.
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(spp[i] - 0.5), 0.0, 1e-12);
  const ComplexMatrix u = kron(r_gate(), r_gate());
  EXPECT_LT((u * s00.amplitudes() - spp.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(max_abs(u * u * u * u - identity(4)), 1e-12);
  EXPECT_NO_THROW(protocol_state_set().validate());
}

TEST(Encoding, CyclicOrderMatchesGenerator) {
  const SymmetricStateSet set = protocol_state_set();
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(set.input_for(k), kCyclicInputs[k]);
    EXPECT_NEAR(std::abs(set.states[k].inner(encode_input(kCyclicInputs[k]))), 1.0, 1e-12);
  }
}

TEST(Gram, ProtocolSetAndTrivialSets) {
  const GramMatrix g = gram_matrix(protocol_state_set());
  EXPECT_NEAR(g.f.real(), 0.5, 1e-12);
  EXPECT_NEAR(g.f.imag(), 0.0, 1e-12);
  EXPECT_NEAR(g.G, 0.0, 1e-12);

  SymmetricStateSet same{{StateVector::basis(2, 0), StateVector::basis(2, 0), StateVector::basis(2, 0),
                          StateVector::basis(2, 0)},
                         identity(2)};
  const GramMatrix g1 = gram_matrix(same);
  EXPECT_NEAR(std::abs(g1.f - Complex(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(g1.G, 1.0, 1e-12);

  ComplexMatrix shift = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) shift((k + 1) % 4, k) = 1.0;
  SymmetricStateSet orth{{StateVector::basis(4, 0), StateVector::basis(4, 1), StateVector::basis(4, 2),
                          StateVector::basis(4, 3)},
                         shift};
  EXPECT_NO_THROW(orth.validate());
  const GramMatrix g0 = gram_matrix(orth);
  EXPECT_NEAR(std::abs(g0.f), 0.0, 1e-12);
  EXPECT_NEAR(g0.G, 0.0, 1e-12);
}

TEST(Gram, RejectsBrokenPattern) {
  SymmetricStateSet bad = protocol_state_set();
  bad.states[2] = encode_input({0, 1});
  EXPECT_THROW(gram_matrix(bad), DomainError);
}

TEST(Povm, RejectsIncompleteOrNegative) {
  EXPECT_THROW(Povm({"a"}, {0.5 * identity(2)}), DomainError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = 1.0;
  ComplexMatrix rest = ComplexMatrix::Zero(2, 2);
  rest(0, 0) = -0.5;
  EXPECT_THROW(Povm({"a", "b"}, {neg, rest}), DomainError);
}

TEST(Srm, OrthogonalPairIsPerfect) {
  const std::vector<DensityMatrix> st = {DensityMatrix::pure(StateVector::basis(2, 0)),
                                         DensityMatrix::pure(StateVector::basis(2, 1))};
  EXPECT_NEAR(srm_success_probability(st, {0.5, 0.5}), 1.0, 1e-12);
}

TEST(Srm, ProtocolSet) {
  const auto st = protocol_states();
  EXPECT_NEAR(srm_success_probability(st, {0.25, 0.25, 0.25, 0.25}), kSrm, 1e-10);
  EXPECT_NEAR(srm_success_from_gram_numeric(gram_matrix(protocol_state_set())), kSrm, 1e-10);
  EXPECT_NEAR(srm_success_from_gram(Complex(0.5), 0.0), kSrm, 1e-12);
  const Povm p = srm_construct(st, {0.25, 0.25, 0.25, 0.25});
  EXPECT_LT(p.completeness_error(), 1e-10);
  EXPECT_TRUE(p.find("residual").has_value());
}

TEST(Srm, FourOrthogonalStates) {
  std::vector<DensityMatrix> st;
  for (int k = 0; k < 4; ++k) st.push_back(DensityMatrix::pure(StateVector::basis(4, k)));
  EXPECT_NEAR(srm_success_probability(st, {0.25, 0.25, 0.25, 0.25}), 1.0, 1e-12);
}

TEST(Srm, PureDyadMatchesHelstrom) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 100; ++t) {
    const StateVector a = random_state(4, gen), b = random_state(4, gen);
    const double ov = std::abs(a.inner(b));
    const double helstrom = 0.5 * (1.0 + std::sqrt(1.0 - ov * ov));
    const std::vector<DensityMatrix> st = {DensityMatrix::pure(a), DensityMatrix::pure(b)};
    EXPECT_NEAR(srm_success_probability(st, {0.5, 0.5}), helstrom, 1e-9);
  }
}

TEST(Srm, RandomSetsHaveCompletePovm) {
  std::mt19937_64 gen(22);
  for (int t = 0; t < 100; ++t) {
    std::vector<DensityMatrix> st;
    const int n = 2 + t % 4;
    for (int k = 0; k < n; ++k) st.push_back(random_density(4, gen, 1 + (t + k) % 3));
    const Povm p = srm_construct(st, std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    EXPECT_LT(p.completeness_error(), 1e-10);
    for (const auto& e : p.effects()) EXPECT_GE(eig_hermitian(e, 1e-9).values.minCoeff(), -1e-10);
  }
}

TEST(Srm, RejectsEmpty) { EXPECT_THROW(srm_construct({}, {}), DomainError); }

TEST(Helstrom, Examples) {
  const StateVector plus = StateVector::normalized(ComplexVector::Ones(2));
  const HelstromResult r =
      helstrom_discriminate(DensityMatrix::pure(plus), DensityMatrix::maximally_mixed(2), 0.5);
  EXPECT_NEAR(r.success, 0.75, 1e-12);
  EXPECT_LT(r.povm.completeness_error(), 1e-10);
  std::mt19937_64 gen(23);
  const DensityMatrix rho = random_density(3, gen);
  EXPECT_NEAR(helstrom_discriminate(rho, rho, 0.5).success, 0.5, 1e-12);
  EXPECT_THROW(helstrom_discriminate(rho, rho, 1.5), DomainError);
  EXPECT_THROW(helstrom_discriminate(rho, DensityMatrix::maximally_mixed(2), 0.5), DimensionError);
}

TEST(Helstrom, BeatsRandomPovms) {
  std::mt19937_64 gen(24);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix r0 = random_density(3, gen), r1 = random_density(3, gen);
    const double p0 = 0.2 + 0.6 * (t / 20.0);
    const HelstromResult h = helstrom_discriminate(r0, r1, p0);
    // Independent oracle: p0 + Tr positive part of (p1 r1 - p0 r0).
    const RealVector ev = eig_hermitian((1 - p0) * r1.matrix() - p0 * r0.matrix()).values;
    double pos = 0.0;
    for (Index i = 0; i < ev.size(); ++i) pos += std::max(ev(i), 0.0);
    EXPECT_NEAR(h.success, p0 + pos, 1e-10);
    const auto hp = h.povm.probabilities(r0);
    const auto hq = h.povm.probabilities(r1);
    EXPECT_NEAR(p0 * hp[h.povm.index_of("0")] + (1 - p0) * hq[h.povm.index_of("1")], h.success, 1e-10);
    for (int k = 0; k < 50; ++k) {
      // Random two-outcome projective POVM: rank-k projector from a random unitary.
      const ComplexMatrix u = random_unitary(3, gen);
      const Index rank = 1 + k % 2;
      const ComplexMatrix e0 = u.leftCols(rank) * u.leftCols(rank).adjoint();
      const double s = p0 * (e0 * r0.matrix()).trace().real() +
                       (1 - p0) * ((identity(3) - e0) * r1.matrix()).trace().real();
      EXPECT_LE(s, h.success + 1e-10);
    }
  }
}

TEST(Use, OutcomeTableOnProtocolStates) {
  const Povm use = use_measurement_povm();
  EXPECT_LT(use.completeness_error(), 1e-12);
  // Physical-state oracle: outcome labels 0* = |0+>, 1* = |1->, *0 = |0->, *1 = |1+>.
  const double h = 1.0 / std::numbers::sqrt2;
  auto vec = [&](int z, int sign) {
    ComplexVector v = ComplexVector::Zero(4);
    v(2 * z) = h;
    v(2 * z + 1) = sign * h;
    return v;
  };
  EXPECT_NEAR((use.effect(use.index_of("0*")) - vec(0, 1) * vec(0, 1).adjoint()).cwiseAbs().maxCoeff(), 0, 1e-12);
  EXPECT_NEAR((use.effect(use.index_of("1*")) - vec(1, -1) * vec(1, -1).adjoint()).cwiseAbs().maxCoeff(), 0, 1e-12);
  EXPECT_NEAR((use.effect(use.index_of("*0")) - vec(0, -1) * vec(0, -1).adjoint()).cwiseAbs().maxCoeff(), 0, 1e-12);
  EXPECT_NEAR((use.effect(use.index_of("*1")) - vec(1, 1) * vec(1, 1).adjoint()).cwiseAbs().maxCoeff(), 0, 1e-12);

  const auto p00 = use.probabilities(DensityMatrix::pure(encode_input({0, 0})));
  EXPECT_NEAR(p00[use.index_of("0*")], 0.5, 1e-12);
  EXPECT_NEAR(p00[use.index_of("*0")], 0.5, 1e-12);
  const auto ppp = use.probabilities(DensityMatrix::pure(encode_input({0, 1})));
  EXPECT_NEAR(ppp[use.index_of("0*")], 0.5, 1e-12);
  EXPECT_NEAR(ppp[use.index_of("*1")], 0.5, 1e-12);

  for (BitPair x : kCyclicInputs) {
    const auto p = use.probabilities(DensityMatrix::pure(encode_input(x)));
    double correct = 0.0, c0 = 0.0;
    for (std::size_t i = 0; i < use.size(); ++i) {
      const UseOutcome o = decode_use(use.label(i));
      if (o.value == x[o.c]) correct += p[i];
      else EXPECT_LT(p[i], 1e-12);
      if (o.c == 0) c0 += p[i];
    }
    EXPECT_NEAR(correct, 1.0, 1e-12);
    EXPECT_NEAR(c0, 0.5, 1e-12);
  }
}

TEST(Use, DecodeLabels) {
  EXPECT_EQ(decode_use("0*").c, 0);
  EXPECT_EQ(decode_use("1*").value, 1);
  EXPECT_EQ(decode_use("*0").c, 1);
  EXPECT_EQ(decode_use("*1").value, 1);
  EXPECT_THROW(decode_use("01"), DomainError);
}

TEST(TestPovms, CertainOutcomeForDeclaredState) {
  for (BitPair x : kCyclicInputs) {
    const Povm& p = test_povm_for(x);
    const auto probs = p.probabilities(DensityMatrix::pure(encode_input(x)));
    EXPECT_NEAR(probs[p.index_of(test_label_for(x))], 1.0, 1e-12);
  }
  EXPECT_LT(zz_povm().completeness_error(), 1e-12);
  EXPECT_LT(xx_povm().completeness_error(), 1e-12);
}

TEST(Sampling, EigenstateIsDeterministic) {
  RngStream rng(1, "t");
  const DensityMatrix s = DensityMatrix::pure(encode_input({1, 1}));
  for (int i = 0; i < 100; ++i) EXPECT_EQ(zz_povm().label(sample_measurement(s, zz_povm(), rng)), "11");
}

TEST(Sampling, UseFrequencyOnZeroZero) {
  RngStream rng(kDefaultSeed, "use-sampling");
  const Povm use = use_measurement_povm();
  const DensityMatrix s = DensityMatrix::pure(encode_input({0, 0}));
  const int n = 100000;
  const std::size_t target = use.index_of("0*");
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sample_measurement(s, use, rng) == target;
  const double sigma = std::sqrt(0.25 / n);
  EXPECT_NEAR(hits / double(n), 0.5, 5 * sigma);
}

TEST(Sampling, ReplayIsIdentical) {
  const Povm use = use_measurement_povm();
  const DensityMatrix s = DensityMatrix::pure(encode_input({0, 1}));
  RngStream a(7, "replay"), b(7, "replay");
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_measurement(s, use, a), sample_measurement(s, use, b));
}

TEST(Sampling, RejectsBadDistribution) {
  RngStream rng(1, "t");
  EXPECT_THROW(sample_index({0.5, 0.4}, rng), DomainError);
  EXPECT_EQ(sample_index({0.0, 1.0}, rng), 1u);
}

}  // namespace
}  // namespace qot
