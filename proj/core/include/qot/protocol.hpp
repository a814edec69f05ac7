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

// Monte Carlo execution of the four-state USE protocol, the classical
// reductions to random and 1-2 OT, and the mixture with the trivial protocol.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qot/bits.hpp"
#include "qot/cheating.hpp"
#include "qot/rng.hpp"

namespace qot {

enum class CheatMode { kNone, kAlice, kBob };
enum class RoundRole { kTest, kPayload };

std::string to_string(CheatMode m);
CheatMode parse_cheat_mode(std::string_view s);  // "none", "alice", "bob"

struct ProtocolConfig {
  std::uint64_t total_rounds = 0;
  std::optional<std::uint64_t> test_count;  // default floor(sqrt(total_rounds))
  std::uint64_t seed = kDefaultSeed;

  std::uint64_t tests() const;
  void validate() const;  // throws DomainError
};

struct RoundRecord {
  std::uint64_t index = 0;
  RoundRole role = RoundRole::kPayload;
  // Absent in payload rounds where Alice holds an entangled cheat state.
  std::optional<BitPair> alice_input;
  std::string bob_outcome;
  bool test_passed = true;
  std::optional<int> c;
  std::optional<int> y;
  std::optional<BitPair> bob_guess;  // cheating Bob
  std::optional<int> alice_guess;    // cheating Alice, guess of c
  bool alice_certain = false;
};

struct Transcript {
  ProtocolConfig config;
  CheatMode mode = CheatMode::kNone;
  std::vector<RoundRecord> rounds;  // truncated after an abort
  bool aborted = false;
  std::optional<std::uint64_t> abort_round;
  std::string abort_reason;
};

Transcript run_protocol(const ProtocolConfig& config, CheatMode mode,
                        const CheatStateParams& alice_state = CheatStateParams::optimal());
Transcript run_honest(const ProtocolConfig& config);

// Bob's test on an arbitrary two-qubit state that Alice declares as
// `declared`: ZZ for 00/11, XX for ++/--. Returns true if the result matches.
bool run_test_round(const DensityMatrix& state, BitPair declared, RngStream& rng);
double test_pass_probability(const DensityMatrix& state, BitPair declared);

// One JSON object per round.
void export_transcript_jsonl(const Transcript& t, std::ostream& out);

struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
  double sigma() const;  // binomial standard error
};

struct TranscriptSummary {
  std::uint64_t payload_rounds = 0;
  std::uint64_t test_rounds = 0;
  Estimate correct;          // honest parties: y == x_c
  Estimate c_zero;           // Bob learned x0
  Estimate bob_guess;        // cheating Bob got both bits
  Estimate alice_guess;      // cheating Alice got c
  Estimate alice_certain;    // Alice's outcome fixed c
  Estimate alice_uncertain;  // accuracy when it did not
  Estimate test_failures;
};

TranscriptSummary summarize(const Transcript& t);

// ---- reductions -------------------------------------------------------------

enum class OtMode { kSemiRandom, kRandomOt, kOneTwoOt };
std::string to_string(OtMode m);

struct OtOutputs {
  OtMode mode = OtMode::kSemiRandom;
  bool aborted = false;
  std::optional<BitPair> alice;  // (x0, x1), or (z0, z1) after masking
  int bob_choice = 0;            // c, or b in 1-2 OT
  int bob_bit = 0;               // y or y'
  std::optional<BitPair> bob_guess;  // cheating Bob's guess of Alice's pair
  std::optional<int> alice_guess;    // cheating Alice's guess of Bob's choice
};

// One semi-random OT instance per payload round; a single aborted entry if
// the transcript aborted.
std::vector<OtOutputs> semi_random_instances(const Transcript& t);

OtOutputs reduce_to_random_ot(const OtOutputs& semi_random);

// Alice sends (z0 ^ x0, z1 ^ x1); Bob outputs (c, z_c ^ x_c ^ y).
OtOutputs semi_random_from_rot(const OtOutputs& rot, BitPair z);

// Bob announces d = b ^ c, Alice answers e_i = z_i ^ x_{i ^ d}, Bob outputs
// e_b ^ y.
OtOutputs reduce_to_one_two_ot(const OtOutputs& rot, BitPair z, int b);

// ---- combined protocol ----------------------------------------------------

struct CombinedResult {
  double p = 0.0;
  double alice_analytic = 0.0;
  double bob_analytic = 0.0;
  Estimate alice_mc;
  Estimate bob_mc;
};

// A fair coin picks the USE protocol with probability p, the trivial one
// (Alice sends both bits) otherwise.
CombinedResult run_combined(double p, std::uint64_t runs, std::uint64_t seed = kDefaultSeed);

struct EqualizingMix {
  double p = 0.0;
  double value = 0.0;
};

// p = 4 / (7 - 2 sqrt 2) from B = (3 + 2 sqrt 2) / 8.
EqualizingMix equalizing_mix_probability();

}  // namespace qot
