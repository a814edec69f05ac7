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

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qot/error.hpp"
#include "qot/protocol.hpp"

namespace qot {
namespace {

const double kSrm = (3.0 + 2.0 * std::numbers::sqrt2) / 8.0;

double five_sigma(double p, std::uint64_t n) { return 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

ProtocolConfig config(std::uint64_t n, std::uint64_t seed = kDefaultSeed) {
  ProtocolConfig c;
  c.total_rounds = n;
  c.seed = seed;
  return c;
}

TEST(Config, DefaultsAndValidation) {
  EXPECT_EQ(config(10000).tests(), 100u);
  EXPECT_EQ(config(99).tests(), 9u);
  ProtocolConfig c = config(10);
  c.test_count = 3;
  EXPECT_EQ(c.tests(), 3u);
  EXPECT_NO_THROW(c.validate());
  c.test_count = 10;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(config(1).validate(), DomainError);
}

TEST(CheatMode, RoundTrip) {
  for (CheatMode m : {CheatMode::kNone, CheatMode::kAlice, CheatMode::kBob}) {
    EXPECT_EQ(parse_cheat_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_cheat_mode("eve"), DomainError);
}

TEST(Honest, NoErrorsAndBalancedChoice) {
  const Transcript t = run_honest(config(10000));
  EXPECT_FALSE(t.aborted);
  const TranscriptSummary s = summarize(t);
  EXPECT_EQ(s.test_rounds, 100u);
  EXPECT_EQ(s.payload_rounds, 9900u);
  EXPECT_EQ(s.correct.successes, s.correct.trials);
  EXPECT_EQ(s.test_failures.successes, 0u);
  EXPECT_NEAR(s.c_zero.rate(), 0.5, five_sigma(0.5, s.c_zero.trials));
  for (const RoundRecord& r : t.rounds) {
    ASSERT_TRUE(r.alice_input.has_value());
    if (r.role == RoundRole::kPayload) EXPECT_EQ(*r.y, (*r.alice_input)[*r.c]);
  }
}

TEST(Honest, HundredThousandPayloadRoundsAllCorrect) {
  const Transcript t = run_honest(config(100400));
  const TranscriptSummary s = summarize(t);
  EXPECT_GE(s.payload_rounds, 100000u);
  EXPECT_EQ(s.correct.successes, s.correct.trials);
}

TEST(Honest, OutcomeFrequenciesPerInput) {
  // Each input yields two outcomes with probability 1/2.
  const Transcript t = run_honest(config(40000, 5));
  std::array<std::array<std::uint64_t, 4>, 4> counts{};
  std::array<std::uint64_t, 4> totals{};
  const std::array<std::string, 4> labels = {"0*", "1*", "*0", "*1"};
  for (const RoundRecord& r : t.rounds) {
    if (r.role != RoundRole::kPayload) continue;
    const int k = cyclic_index(*r.alice_input);
    for (std::size_t j = 0; j < 4; ++j) counts[k][j] += r.bob_outcome == labels[j];
    ++totals[k];
  }
  for (int k = 0; k < 4; ++k) {
    const BitPair x = kCyclicInputs[k];
    for (std::size_t j = 0; j < 4; ++j) {
      const UseOutcome o = decode_use(labels[j]);
      const double want = o.value == x[o.c] ? 0.5 : 0.0;
      const double f = counts[k][j] / double(totals[k]);
      if (want == 0.0) EXPECT_EQ(counts[k][j], 0u);
      else EXPECT_NEAR(f, want, five_sigma(want, totals[k]));
    }
  }
}

TEST(Honest, Reproducible) {
  std::ostringstream a, b;
  export_transcript_jsonl(run_honest(config(500, 9)), a);
  export_transcript_jsonl(run_honest(config(500, 9)), b);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  export_transcript_jsonl(run_honest(config(500, 10)), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(Export, OneObjectPerRound) {
  const Transcript t = run_honest(config(50, 3));
  std::ostringstream out;
  export_transcript_jsonl(t, out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ASSERT_FALSE(line.empty());
    EXPECT_EQ(line.front(), '{');
    EXPECT_EQ(line.back(), '}');
    EXPECT_NE(line.find("\"round\""), std::string::npos);
    ++n;
  }
  EXPECT_EQ(n, t.rounds.size());
}

TEST(TestRounds, HonestStatesAlwaysPass) {
  for (BitPair x : kCyclicInputs) {
    EXPECT_NEAR(test_pass_probability(DensityMatrix::pure(encode_input(x)), x), 1.0, 1e-12);
  }
}

TEST(TestRounds, SubstitutedStateCaughtHalfTheTime) {
  // |0+> declared as 00: ZZ sees 00 or 01 with equal odds.
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(1) = 1.0 / std::numbers::sqrt2;
  const DensityMatrix sub = DensityMatrix::pure(StateVector(v));
  EXPECT_NEAR(test_pass_probability(sub, {0, 0}), 0.5, 1e-12);
  RngStream rng(kDefaultSeed, "soundness");
  const int n = 20000;
  int caught = 0;
  for (int i = 0; i < n; ++i) caught += !run_test_round(sub, {0, 0}, rng);
  EXPECT_NEAR(caught / double(n), 0.5, five_sigma(0.5, n));
  // |01> declared as 00 never passes.
  EXPECT_NEAR(test_pass_probability(DensityMatrix::pure(StateVector::basis(4, 1)), {0, 0}), 0.0, 1e-12);
}

TEST(CheatingBob, GuessRateAndOutput) {
  const Transcript t = run_protocol(config(40000, 11), CheatMode::kBob);
  const TranscriptSummary s = summarize(t);
  EXPECT_FALSE(t.aborted);
  EXPECT_NEAR(s.bob_guess.rate(), kSrm, five_sigma(kSrm, s.bob_guess.trials));
  for (const RoundRecord& r : t.rounds) {
    if (r.role != RoundRole::kPayload) continue;
    EXPECT_EQ(*r.c, 0);
    EXPECT_EQ(*r.y, r.bob_guess->x0);
  }
}

TEST(CheatingAlice, GuessRateNoDetection) {
  const Transcript t = run_protocol(config(40000, 12), CheatMode::kAlice);
  const TranscriptSummary s = summarize(t);
  EXPECT_FALSE(t.aborted);
  EXPECT_EQ(s.test_failures.successes, 0u);
  EXPECT_NEAR(s.alice_guess.rate(), 0.75, five_sigma(0.75, s.alice_guess.trials));
  EXPECT_NEAR(s.alice_certain.rate(), 0.25, five_sigma(0.25, s.alice_certain.trials));
  EXPECT_NEAR(s.alice_uncertain.rate(), 2.0 / 3.0, five_sigma(2.0 / 3.0, s.alice_uncertain.trials));
  // No definite input in payload rounds.
  EXPECT_EQ(s.correct.trials, 0u);
}

TEST(CheatingAlice, ProductStateIsACoinFlip) {
  const CheatStateParams p{Complex(1.0), Complex(0.0), Complex(0.0), Complex(0.0)};
  const Transcript t = run_protocol(config(400, 13), CheatMode::kAlice, p);
  EXPECT_FALSE(t.aborted);
  EXPECT_NEAR(summarize(t).alice_guess.rate(), 0.5, five_sigma(0.5, summarize(t).alice_guess.trials));
}

TEST(Reductions, RandomOtCellsUniform) {
  const Transcript t = run_honest(config(10202, 21));
  const auto semi = semi_random_instances(t);
  ASSERT_GE(semi.size(), 10000u);
  std::array<std::uint64_t, 8> cells{};
  for (const OtOutputs& s : semi) {
    const OtOutputs r = reduce_to_random_ot(s);
    EXPECT_EQ(r.mode, OtMode::kRandomOt);
    EXPECT_EQ(r.bob_bit, (*r.alice)[r.bob_choice]);
    ++cells[static_cast<std::size_t>(4 * r.alice->x0 + 2 * r.alice->x1 + r.bob_choice)];
  }
  for (std::uint64_t c : cells) EXPECT_NEAR(c / double(semi.size()), 0.125, five_sigma(0.125, semi.size()));
}

TEST(Reductions, OneTwoOtCorrectForAllMasksAndChoices) {
  const auto semi = semi_random_instances(run_honest(config(1100, 22)));
  for (int m = 0; m < 4; ++m) {
    const BitPair z{static_cast<std::uint8_t>(m >> 1), static_cast<std::uint8_t>(m & 1)};
    for (int b = 0; b < 2; ++b) {
      for (const OtOutputs& s : semi) {
        const OtOutputs o = reduce_to_one_two_ot(reduce_to_random_ot(s), z, b);
        ASSERT_EQ(o.bob_bit, z[b]);
        ASSERT_EQ(o.bob_choice, b);
      }
      for (const OtOutputs& s : semi) ASSERT_EQ(semi_random_from_rot(reduce_to_random_ot(s), z).bob_bit, z[s.bob_choice]);
    }
  }
}

TEST(Reductions, MaskingIdentity) {
  OtOutputs rot;
  rot.mode = OtMode::kRandomOt;
  rot.alice = BitPair{1, 1};
  rot.bob_choice = 0;
  rot.bob_bit = 1;
  EXPECT_EQ(semi_random_from_rot(rot, {1, 0}).bob_bit, 1);
  EXPECT_EQ(reduce_to_one_two_ot(rot, {1, 0}, 0).bob_bit, 1);
  EXPECT_EQ(reduce_to_one_two_ot(rot, {1, 0}, 1).bob_bit, 0);
  EXPECT_THROW(reduce_to_one_two_ot(rot, {1, 0}, 2), DomainError);
  EXPECT_THROW(semi_random_from_rot(OtOutputs{}, {0, 0}), DomainError);
}

TEST(Reductions, AbortPropagates) {
  OtOutputs bad;
  bad.aborted = true;
  const OtOutputs rot = reduce_to_random_ot(bad);
  EXPECT_TRUE(rot.aborted);
  EXPECT_TRUE(reduce_to_one_two_ot(rot, {0, 1}, 1).aborted);
  EXPECT_TRUE(semi_random_from_rot(rot, {0, 1}).aborted);
  Transcript t;
  t.aborted = true;
  const auto inst = semi_random_instances(t);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_TRUE(inst[0].aborted);
}

TEST(Reductions, CheatRatesPreserved) {
  const auto bob = semi_random_instances(run_protocol(config(20000, 23), CheatMode::kBob));
  const auto alice = semi_random_instances(run_protocol(config(20000, 24), CheatMode::kAlice));
  std::uint64_t b_before = 0, b_after = 0, a_before = 0, a_after = 0;
  RngStream rng(25, "inputs");
  for (const OtOutputs& s : bob) {
    const BitPair z{static_cast<std::uint8_t>(rng.below(2)), static_cast<std::uint8_t>(rng.below(2))};
    const int b = static_cast<int>(rng.below(2));
    b_before += *s.bob_guess == *s.alice;
    b_after += *reduce_to_one_two_ot(reduce_to_random_ot(s), z, b).bob_guess == z;
  }
  for (const OtOutputs& s : alice) {
    const BitPair z{static_cast<std::uint8_t>(rng.below(2)), static_cast<std::uint8_t>(rng.below(2))};
    const int b = static_cast<int>(rng.below(2));
    a_before += *s.alice_guess == s.bob_choice;
    a_after += *reduce_to_one_two_ot(reduce_to_random_ot(s), z, b).alice_guess == b;
  }
  // Deterministic relabeling: counts coincide exactly.
  EXPECT_EQ(b_before, b_after);
  EXPECT_EQ(a_before, a_after);
  EXPECT_NEAR(b_after / double(bob.size()), kSrm, five_sigma(kSrm, bob.size()));
  EXPECT_NEAR(a_after / double(alice.size()), 0.75, five_sigma(0.75, alice.size()));
}

TEST(Combined, Endpoints) {
  const CombinedResult one = run_combined(1.0, 0);
  EXPECT_NEAR(one.alice_analytic, 0.75, 1e-15);
  EXPECT_NEAR(one.bob_analytic, kSrm, 1e-15);
  const CombinedResult zero = run_combined(0.0, 0);
  EXPECT_NEAR(zero.alice_analytic, 0.5, 1e-15);
  EXPECT_NEAR(zero.bob_analytic, 1.0, 1e-15);
  EXPECT_THROW(run_combined(1.5, 10), DomainError);
}

TEST(Combined, MonteCarloAgreesWithAnalytic) {
  for (double p : {0.0, 0.5, 1.0}) {
    const CombinedResult r = run_combined(p, 40000, 31);
    const double sa = std::max(five_sigma(r.alice_analytic, 40000), 1e-12);
    const double sb = std::max(five_sigma(r.bob_analytic, 40000), 1e-12);
    EXPECT_NEAR(r.alice_mc.rate(), r.alice_analytic, sa) << p;
    EXPECT_NEAR(r.bob_mc.rate(), r.bob_analytic, sb) << p;
  }
}

TEST(Combined, EqualizingMix) {
  const EqualizingMix m = equalizing_mix_probability();
  EXPECT_NEAR(m.p, 4.0 / (7.0 - 2.0 * std::numbers::sqrt2), 1e-12);
  EXPECT_NEAR(m.p, 0.958871, 1e-6);
  const CombinedResult r = run_combined(m.p, 0);
  EXPECT_NEAR(r.alice_analytic, r.bob_analytic, 1e-12);
  EXPECT_NEAR(m.value, r.alice_analytic, 1e-12);
  EXPECT_NEAR(m.value, 0.7397, 1e-4);
  EXPECT_LT(m.value, 0.749);
  EXPECT_GT(m.value, 2.0 / 3.0);
  EXPECT_EQ(std::round(m.value * 100) / 100, 0.74);
}

TEST(EstimateStats, Sigma) {
  Estimate e{25, 100};
  EXPECT_DOUBLE_EQ(e.rate(), 0.25);
  EXPECT_NEAR(e.sigma(), std::sqrt(0.25 * 0.75 / 100), 1e-15);
  EXPECT_EQ(Estimate{}.rate(), 0.0);
}

}  // namespace
}  // namespace qot
