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

#include "qot/protocol.hpp"

#include <cmath>
#include <numbers>

#include "qot/error.hpp"
#include "qot/measurement.hpp"
#include "qot/parallel.hpp"

namespace qot {
namespace {

std::uint8_t bit(std::uint64_t v) { return static_cast<std::uint8_t>(v & 1U); }

// Outcome distributions precomputed once per run; rounds only sample.
struct RoundModel {
  std::array<StateVector, 4> states = protocol_state_set().states;
  Povm use = use_measurement_povm();
  Povm product = bob_product_povm();
  std::array<BitPair, 4> bob_map = bob_guess_map();
  std::array<std::vector<double>, 4> use_probs;
  std::array<std::vector<double>, 4> product_probs;
  std::array<std::vector<double>, 4> test_probs;  // declared = prepared

  // Alice's cheat: declaration distribution in test rounds, and the joint
  // (USE outcome, Alice outcome) distribution in payload rounds.
  std::vector<double> declare_probs;
  std::vector<double> joint_probs;  // index z * 2 + e
  std::array<bool, 2> certain{};

  explicit RoundModel(const std::optional<CheatStateParams>& cheat) {
    for (int k = 0; k < 4; ++k) {
      const DensityMatrix rho = DensityMatrix::pure(states[k]);
      use_probs[k] = use.probabilities(rho);
      product_probs[k] = product.probabilities(rho);
      test_probs[k] = test_povm_for(kCyclicInputs[k]).probabilities(rho);
    }
    if (!cheat) return;
    const auto amps = cheat->amplitudes();
    for (const Complex& a : amps) declare_probs.push_back(std::norm(a));
    const ComplexMatrix joint = cheat_state(*cheat).projector();
    const HelstromResult h = alice_helstrom(*cheat);
    joint_probs.assign(8, 0.0);
    std::array<std::array<double, 2>, 2> by_guess_c{};  // [e][c]
    for (std::size_t z = 0; z < 4; ++z) {
      for (std::size_t e = 0; e < 2; ++e) {
        const ComplexMatrix op = kron(h.povm.effect(e), use.effect(z));
        const double p = std::max(0.0, (op * joint).trace().real());
        joint_probs[z * 2 + e] = p;
        by_guess_c[e][decode_use(use.label(z)).c] += p;
      }
    }
    for (int e = 0; e < 2; ++e) {
      certain[e] = by_guess_c[e][e] > 1e-12 && by_guess_c[e][1 - e] <= 1e-12;
    }
  }
};

// Bob holds the declared state k and measures it in the matching basis.
void fill_test(const RoundModel& m, int k, RngStream& bob, RoundRecord& rec) {
  const std::size_t o = sample_index(m.test_probs[k], bob);
  rec.bob_outcome = test_povm_for(kCyclicInputs[k]).label(o);
  rec.test_passed = rec.bob_outcome == test_label_for(kCyclicInputs[k]);
}

void fill_use(const RoundModel& m, std::size_t z, RoundRecord& rec) {
  rec.bob_outcome = m.use.label(z);
  const UseOutcome o = decode_use(rec.bob_outcome);
  rec.c = o.c;
  rec.y = o.value;
}

void simulate_round(const RoundModel& m, CheatMode mode, RngStream& alice, RngStream& bob,
                    RoundRecord& rec) {
  if (mode == CheatMode::kAlice) {
    if (rec.role == RoundRole::kTest) {
      // Alice measures her register in the computational basis and declares
      // the state it points to; Bob's pair collapses onto that state.
      const int k = static_cast<int>(sample_index(m.declare_probs, alice));
      rec.alice_input = kCyclicInputs[k];
      fill_test(m, k, bob, rec);
    } else {
      const std::size_t j = sample_index(m.joint_probs, alice);
      fill_use(m, j / 2, rec);
      const int e = static_cast<int>(j % 2);
      rec.alice_guess = e;
      rec.alice_certain = m.certain[e];
    }
    return;
  }
  const int k = static_cast<int>(alice.below(4));
  rec.alice_input = kCyclicInputs[k];
  if (rec.role == RoundRole::kTest) {
    fill_test(m, k, bob, rec);
  } else if (mode == CheatMode::kBob) {
    const std::size_t z = sample_index(m.product_probs[k], bob);
    rec.bob_outcome = m.product.label(z);
    rec.bob_guess = m.bob_map[z];
    rec.c = 0;
    rec.y = m.bob_map[z].x0;
  } else {
    fill_use(m, sample_index(m.use_probs[k], bob), rec);
  }
}

std::vector<char> choose_tests(const ProtocolConfig& cfg) {
  // Floyd's sampling of test_count distinct positions.
  const std::uint64_t n = cfg.total_rounds;
  const std::uint64_t t = cfg.tests();
  std::vector<char> flags(n, 0);
  RngStream rng(cfg.seed, "test-selection");
  for (std::uint64_t j = n - t; j < n; ++j) {
    const std::uint64_t r = rng.below(j + 1);
    flags[flags[r] ? j : r] = 1;
  }
  return flags;
}

void json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out << '\\';
    out << ch;
  }
  out << '"';
}

}  // namespace

std::string to_string(CheatMode m) {
  switch (m) {
    case CheatMode::kAlice:
      return "alice";
    case CheatMode::kBob:
      return "bob";
    case CheatMode::kNone:
      break;
  }
  return "none";
}

CheatMode parse_cheat_mode(std::string_view s) {
  if (s == "none") return CheatMode::kNone;
  if (s == "alice") return CheatMode::kAlice;
  if (s == "bob") return CheatMode::kBob;
  throw DomainError("unknown cheat mode '" + std::string(s) + "'");
}

std::uint64_t ProtocolConfig::tests() const {
  if (test_count) return *test_count;
  return static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(total_rounds))));
}

void ProtocolConfig::validate() const {
  if (total_rounds < 2) throw DomainError("ProtocolConfig: need at least two rounds");
  const std::uint64_t t = tests();
  if (t < 1) throw DomainError("ProtocolConfig: need at least one test round");
  if (t >= total_rounds) throw DomainError("ProtocolConfig: test_count must be below total_rounds");
}

Transcript run_protocol(const ProtocolConfig& config, CheatMode mode,
                        const CheatStateParams& alice_state) {
  config.validate();
  if (mode == CheatMode::kAlice) alice_state.validate();
  const RoundModel model(mode == CheatMode::kAlice ? std::optional(alice_state) : std::nullopt);
  const std::vector<char> is_test = choose_tests(config);

  Transcript t;
  t.config = config;
  t.mode = mode;
  t.rounds.resize(config.total_rounds);
  const RngStream alice_base(config.seed, "alice");
  const RngStream bob_base(config.seed, "bob");
  parallel_for(config.total_rounds, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream alice = alice_base.substream(i);
      RngStream bob = bob_base.substream(i);
      RoundRecord& rec = t.rounds[i];
      rec.index = i;
      rec.role = is_test[i] ? RoundRole::kTest : RoundRole::kPayload;
      simulate_round(model, mode, alice, bob, rec);
    }
  });
  for (const RoundRecord& rec : t.rounds) {
    if (rec.role == RoundRole::kTest && !rec.test_passed) {
      t.aborted = true;
      t.abort_round = rec.index;
      t.abort_reason = "test mismatch: declared " + test_label_for(*rec.alice_input) +
                       ", measured " + rec.bob_outcome;
      t.rounds.resize(rec.index + 1);
      break;
    }
  }
  return t;
}

double test_pass_probability(const DensityMatrix& state, BitPair declared) {
  const Povm& povm = test_povm_for(declared);
  return povm.probabilities(state)[povm.index_of(test_label_for(declared))];
}

bool run_test_round(const DensityMatrix& state, BitPair declared, RngStream& rng) {
  const Povm& povm = test_povm_for(declared);
  return povm.label(sample_measurement(state, povm, rng)) == test_label_for(declared);
}

Transcript run_honest(const ProtocolConfig& config) { return run_protocol(config, CheatMode::kNone); }

void export_transcript_jsonl(const Transcript& t, std::ostream& out) {
  for (const RoundRecord& r : t.rounds) {
    out << "{\"round\":" << r.index << ",\"role\":\""
        << (r.role == RoundRole::kTest ? "test" : "payload") << "\",\"alice_input\":";
    if (r.alice_input) {
      json_string(out, r.alice_input->str());
    } else {
      out << "null";
    }
    out << ",\"bob_outcome\":";
    json_string(out, r.bob_outcome);
    if (r.role == RoundRole::kTest) {
      out << ",\"test_passed\":" << (r.test_passed ? "true" : "false");
    } else {
      out << ",\"c\":" << *r.c << ",\"y\":" << *r.y;
    }
    if (r.bob_guess) {
      out << ",\"bob_guess\":";
      json_string(out, r.bob_guess->str());
    }
    if (r.alice_guess) {
      out << ",\"alice_guess\":" << *r.alice_guess
          << ",\"alice_certain\":" << (r.alice_certain ? "true" : "false");
    }
    const bool failing = t.abort_round && *t.abort_round == r.index;
    out << ",\"abort\":" << (failing ? "true" : "false");
    if (failing) {
      out << ",\"abort_reason\":";
      json_string(out, t.abort_reason);
    }
    out << "}\n";
  }
}

double Estimate::sigma() const {
  if (trials == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

TranscriptSummary summarize(const Transcript& t) {
  TranscriptSummary s;
  auto tally = [](Estimate& e, bool ok) {
    ++e.trials;
    e.successes += ok ? 1 : 0;
  };
  for (const RoundRecord& r : t.rounds) {
    if (r.role == RoundRole::kTest) {
      ++s.test_rounds;
      tally(s.test_failures, !r.test_passed);
      continue;
    }
    ++s.payload_rounds;
    if (r.c) tally(s.c_zero, *r.c == 0);
    if (t.mode == CheatMode::kNone) tally(s.correct, (*r.alice_input)[*r.c] == *r.y);
    if (r.bob_guess) tally(s.bob_guess, *r.bob_guess == *r.alice_input);
    if (r.alice_guess) {
      const bool ok = *r.alice_guess == *r.c;
      tally(s.alice_guess, ok);
      tally(s.alice_certain, r.alice_certain);
      if (!r.alice_certain) tally(s.alice_uncertain, ok);
    }
  }
  return s;
}

std::string to_string(OtMode m) {
  switch (m) {
    case OtMode::kRandomOt:
      return "random-ot";
    case OtMode::kOneTwoOt:
      return "one-two-ot";
    case OtMode::kSemiRandom:
      break;
  }
  return "semi-random";
}

std::vector<OtOutputs> semi_random_instances(const Transcript& t) {
  if (t.aborted) {
    OtOutputs o;
    o.aborted = true;
    return {o};
  }
  std::vector<OtOutputs> out;
  for (const RoundRecord& r : t.rounds) {
    if (r.role != RoundRole::kPayload) continue;
    OtOutputs o;
    o.alice = r.alice_input;
    o.bob_choice = *r.c;
    o.bob_bit = *r.y;
    o.bob_guess = r.bob_guess;
    o.alice_guess = r.alice_guess;
    out.push_back(o);
  }
  return out;
}

OtOutputs reduce_to_random_ot(const OtOutputs& semi_random) {
  if (semi_random.mode != OtMode::kSemiRandom) {
    throw DomainError("reduce_to_random_ot: input is not a semi-random OT instance");
  }
  OtOutputs o = semi_random;
  o.mode = OtMode::kRandomOt;
  return o;
}

OtOutputs semi_random_from_rot(const OtOutputs& rot, BitPair z) {
  if (rot.mode != OtMode::kRandomOt) throw DomainError("semi_random_from_rot: input is not ROT");
  OtOutputs o;
  o.mode = OtMode::kSemiRandom;
  o.aborted = rot.aborted;
  if (rot.aborted) return o;
  const BitPair x = rot.alice.value_or(BitPair{});
  const BitPair masked{static_cast<std::uint8_t>(z.x0 ^ x.x0), static_cast<std::uint8_t>(z.x1 ^ x.x1)};
  o.alice = z;
  o.bob_choice = rot.bob_choice;
  o.bob_bit = masked[rot.bob_choice] ^ rot.bob_bit;
  if (rot.bob_guess) {
    o.bob_guess = BitPair{static_cast<std::uint8_t>(masked.x0 ^ rot.bob_guess->x0),
                          static_cast<std::uint8_t>(masked.x1 ^ rot.bob_guess->x1)};
  }
  o.alice_guess = rot.alice_guess;
  return o;
}

OtOutputs reduce_to_one_two_ot(const OtOutputs& rot, BitPair z, int b) {
  if (rot.mode != OtMode::kRandomOt) throw DomainError("reduce_to_one_two_ot: input is not ROT");
  if (b != 0 && b != 1) throw DomainError("reduce_to_one_two_ot: choice bit must be 0 or 1");
  OtOutputs o;
  o.mode = OtMode::kOneTwoOt;
  o.aborted = rot.aborted;
  if (rot.aborted) return o;
  // A cheating Alice holds no definite x; she masks with zeros.
  const BitPair x = rot.alice.value_or(BitPair{});
  const int d = b ^ rot.bob_choice;
  const std::array<int, 2> e = {z.x0 ^ x[d], z.x1 ^ x[1 ^ d]};
  o.alice = z;
  o.bob_choice = b;
  o.bob_bit = e[b] ^ rot.bob_bit;
  if (rot.bob_guess) {
    o.bob_guess = BitPair{bit(e[0] ^ (*rot.bob_guess)[d]), bit(e[1] ^ (*rot.bob_guess)[1 ^ d])};
  }
  if (rot.alice_guess) o.alice_guess = *rot.alice_guess ^ d;
  return o;
}

CombinedResult run_combined(double p, std::uint64_t runs, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("run_combined: p outside [0, 1]");
  const double bob_use = (3.0 + 2.0 * std::numbers::sqrt2) / 8.0;
  CombinedResult r;
  r.p = p;
  r.alice_analytic = 0.75 * p + 0.5 * (1.0 - p);
  r.bob_analytic = bob_use * p + (1.0 - p);
  if (runs == 0) return r;

  const RoundModel model(CheatStateParams::optimal());
  const RngStream coin_base(seed, "coin");
  const RngStream alice_base(seed, "combined-alice");
  const RngStream bob_base(seed, "combined-bob");
  std::vector<char> alice_ok(runs), bob_ok(runs);
  parallel_for(runs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream coin = coin_base.substream(i);
      RngStream alice = alice_base.substream(i);
      RngStream bob = bob_base.substream(i);
      const bool use_protocol = coin.bernoulli(p);
      // Separate executions against a cheating Alice and a cheating Bob.
      RoundRecord ra, rb;
      if (use_protocol) {
        simulate_round(model, CheatMode::kAlice, alice, bob, ra);
        alice_ok[i] = *ra.alice_guess == *ra.c;
        simulate_round(model, CheatMode::kBob, alice, bob, rb);
        bob_ok[i] = *rb.bob_guess == *rb.alice_input;
      } else {
        // Trivial protocol: Bob receives both bits and picks c himself.
        const int c = static_cast<int>(bob.below(2));
        alice_ok[i] = static_cast<int>(alice.below(2)) == c;
        bob_ok[i] = 1;
      }
    }
  });
  for (std::uint64_t i = 0; i < runs; ++i) {
    r.alice_mc.successes += alice_ok[i] ? 1 : 0;
    r.bob_mc.successes += bob_ok[i] ? 1 : 0;
  }
  r.alice_mc.trials = runs;
  r.bob_mc.trials = runs;
  return r;
}

EqualizingMix equalizing_mix_probability() {
  // 3p/4 + (1 - p)/2 = B p + (1 - p)  =>  p = 1 / (5/4 - B) = 4 / (7 - 2 sqrt 2)
  const double p = 4.0 / (7.0 - 2.0 * std::numbers::sqrt2);
  return {p, 0.5 + 0.25 * p};
}

}  // namespace qot
