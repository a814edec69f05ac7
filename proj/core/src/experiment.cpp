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

#include "qot/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qot/cheating.hpp"
#include "qot/error.hpp"
#include "qot/measurement.hpp"

namespace qot {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

int state_index(const std::string& label) {
  if (label == "00") return 0;
  if (label == "++") return 1;
  if (label == "11") return 2;
  if (label == "--") return 3;
  throw DomainError("unknown input state label '" + label + "'");
}

// Physical USE outcome |zx> mapped onto the star labels.
std::string use_label(const std::string& outcome) {
  if (outcome == "0+") return "0*";
  if (outcome == "1-") return "1*";
  if (outcome == "0-") return "*0";
  if (outcome == "1+") return "*1";
  throw DomainError("unknown USE outcome label '" + outcome + "'");
}

// Recorded Bob columns carry the xi index flipped relative to the
// product-basis labels: table zeta{i}xi{j} is effect zeta{i} x xi{1-j}.
std::string bob_label(const std::string& outcome) {
  if (outcome.size() != 8 || outcome.compare(0, 4, "zeta") != 0 || outcome.compare(5, 2, "xi") != 0 ||
      (outcome[4] != '0' && outcome[4] != '1') || (outcome[7] != '0' && outcome[7] != '1')) {
    throw DomainError("unknown Bob outcome label '" + outcome + "'");
  }
  std::string out = outcome;
  out[7] = outcome[7] == '0' ? '1' : '0';
  return out;
}

double prob_of(const Povm& povm, const DensityMatrix& rho, const std::string& label) {
  const auto i = povm.find(label);
  if (!i) throw DomainError("outcome '" + label + "' is not produced by this measurement");
  return povm.probabilities(rho)[*i];
}

DensityMatrix protocol_state(const std::string& label) {
  return DensityMatrix::pure(protocol_state_set().states[state_index(label)]);
}

void require_all(const std::string& input) {
  if (input != "all") throw DomainError("expected input label 'all', got '" + input + "'");
}

bool correct_transfer_ok(const std::string& input, const std::string& outcome) {
  const BitPair x = kCyclicInputs[state_index(input)];
  const UseOutcome o = decode_use(use_label(outcome));
  return x[o.c] == o.value;
}

bool alarm(const std::string& input, const std::string& outcome) { return input != outcome; }

bool alice_guess_ok(const std::string& outcome) { return outcome == "e0c0" || outcome == "e1c1"; }

bool alice_test_failed(const std::string& outcome) {
  if (outcome.size() != 4 || outcome[1] != ':') return true;
  const std::string measured = outcome.substr(2);
  return outcome[0] == '0' ? measured != "00" : measured != "++";
}

}  // namespace

std::vector<std::string> CountTable::groups() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.input_label) == out.end()) out.push_back(r.input_label);
  }
  return out;
}

CountTable parse_counts(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split(line);
      break;
    }
  }
  if (header.empty()) throw ParseError(source + ": empty file");
  const std::vector<std::string> base = {"table_id", "input_state", "outcome", "counts"};
  const bool with_p = header.size() == 5 && header[4] == "p_t";
  if (!(header.size() == 4 || with_p) || !std::equal(base.begin(), base.end(), header.begin())) {
    throw ParseError(where(source, lineno) + "expected header table_id,input_state,outcome,counts[,p_t]");
  }

  CountTable t;
  t.has_p_t = with_p;
  std::set<std::pair<std::string, std::string>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ParseError(where(source, lineno) + "expected " + std::to_string(header.size()) +
                       " fields, found " + std::to_string(cells.size()));
    }
    for (const auto& c : cells) {
      if (c.empty()) throw ParseError(where(source, lineno) + "empty field");
    }
    if (t.table_id.empty()) {
      t.table_id = cells[0];
    } else if (cells[0] != t.table_id) {
      throw ParseError(where(source, lineno) + "mixed table ids '" + t.table_id + "' and '" +
                       cells[0] + "'");
    }
    CountRow row;
    row.input_label = cells[1];
    row.outcome_label = cells[2];
    const std::string& cnt = cells[3];
    if (cnt.front() == '-') throw ParseError(where(source, lineno) + "negative count " + cnt);
    const auto [ptr, ec] = std::from_chars(cnt.data(), cnt.data() + cnt.size(), row.count);
    if (ec != std::errc() || ptr != cnt.data() + cnt.size()) {
      throw ParseError(where(source, lineno) + "count '" + cnt + "' is not a non-negative integer");
    }
    if (with_p) {
      try {
        std::size_t used = 0;
        const double p = std::stod(cells[4], &used);
        if (used != cells[4].size() || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("");
        row.p_t = p;
      } catch (const std::exception&) {
        throw ParseError(where(source, lineno) + "p_t '" + cells[4] + "' is not a probability");
      }
    }
    if (!seen.insert({row.input_label, row.outcome_label}).second) {
      throw ParseError(where(source, lineno) + "duplicate entry (" + row.input_label + ", " +
                       row.outcome_label + ")");
    }
    t.rows.push_back(std::move(row));
  }
  if (t.rows.empty()) throw ParseError(source + ": no data rows");
  return t;
}

CountTable load_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return parse_counts(in, path.string());
}

std::vector<ComparisonRow> relative_frequencies(const CountTable& table) {
  std::map<std::string, std::uint64_t> totals;
  for (const auto& r : table.rows) totals[r.input_label] += r.count;
  std::vector<ComparisonRow> out;
  for (const auto& r : table.rows) {
    const std::uint64_t n = totals[r.input_label];
    if (n == 0) throw DomainError("relative_frequencies: group '" + r.input_label + "' has no counts");
    ComparisonRow c;
    c.input_label = r.input_label;
    c.outcome_label = r.outcome_label;
    c.count = r.count;
    c.f = static_cast<double>(r.count) / static_cast<double>(n);
    c.sigma_f = std::sqrt(c.f * (1.0 - c.f) / static_cast<double>(n));
    c.p_t = r.p_t;
    if (c.p_t && c.sigma_f > 0.0) c.z_score = (c.f - *c.p_t) / c.sigma_f;
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_uncertainty(double value, double sigma) {
  char buf[64];
  if (!(sigma > 0.0)) {
    std::snprintf(buf, sizeof buf, "%.3f(0)", value);
    return buf;
  }
  int exponent = static_cast<int>(std::floor(std::log10(sigma)));
  double digit = std::round(sigma / std::pow(10.0, exponent));
  if (digit >= 10.0) {
    ++exponent;
    digit = 1.0;
  }
  const int decimals = std::max(0, -exponent);
  std::snprintf(buf, sizeof buf, "%.*f(%d)", decimals, value, static_cast<int>(digit));
  return buf;
}

std::optional<TableKind> table_kind(const std::string& table_id) {
  if (table_id == "correct_transfer") return TableKind::kCorrectTransfer;
  if (table_id == "honest_alarms") return TableKind::kHonestAlarms;
  if (table_id == "bob_cheating") return TableKind::kBobCheating;
  if (table_id == "alice_cheating_guess") return TableKind::kAliceGuess;
  if (table_id == "alice_cheating_tests") return TableKind::kAliceTests;
  return std::nullopt;
}

std::string to_string(TableKind k) {
  switch (k) {
    case TableKind::kCorrectTransfer:
      return "correct_transfer";
    case TableKind::kHonestAlarms:
      return "honest_alarms";
    case TableKind::kBobCheating:
      return "bob_cheating";
    case TableKind::kAliceGuess:
      return "alice_cheating_guess";
    case TableKind::kAliceTests:
      return "alice_cheating_tests";
  }
  return "unknown";
}

double model_probability(TableKind kind, const std::string& input, const std::string& outcome) {
  switch (kind) {
    case TableKind::kCorrectTransfer:
      return prob_of(use_measurement_povm(), protocol_state(input), use_label(outcome));
    case TableKind::kHonestAlarms: {
      const BitPair x = kCyclicInputs[state_index(input)];
      return prob_of(test_povm_for(x), protocol_state(input), outcome);
    }
    case TableKind::kBobCheating:
      return prob_of(bob_product_povm(), protocol_state(input), bob_label(outcome));
    case TableKind::kAliceGuess: {
      require_all(input);
      if (outcome.size() != 4 || outcome[0] != 'e' || outcome[2] != 'c' ||
          (outcome[1] != '0' && outcome[1] != '1') || (outcome[3] != '0' && outcome[3] != '1')) {
        throw DomainError("unknown guess label '" + outcome + "'");
      }
      const CheatStateParams p = CheatStateParams::optimal();
      const ComplexMatrix joint = cheat_state(p).projector();
      const HelstromResult h = alice_helstrom(p);
      const Povm use = use_measurement_povm();
      const std::size_t e = static_cast<std::size_t>(outcome[1] - '0');
      const int c = outcome[3] - '0';
      double total = 0.0;
      for (std::size_t z = 0; z < use.size(); ++z) {
        if (decode_use(use.label(z)).c != c) continue;
        total += (kron(h.povm.effect(e), use.effect(z)) * joint).trace().real();
      }
      return total;
    }
    case TableKind::kAliceTests: {
      require_all(input);
      if (outcome.size() != 4 || outcome[1] != ':' || (outcome[0] != '0' && outcome[0] != '1')) {
        throw DomainError("unknown test label '" + outcome + "'");
      }
      const int a = outcome[0] - '0';
      const CheatStateParams p = CheatStateParams::optimal();
      const double weight = std::norm(p.amplitudes()[a]);
      const std::string declared = a == 0 ? "00" : "++";
      return weight * prob_of(test_povm_for(kCyclicInputs[state_index(declared)]),
                              protocol_state(declared), outcome.substr(2));
    }
  }
  throw DomainError("model_probability: unknown table kind");
}

ComparisonReport compare_to_theory(const CountTable& table) {
  const auto kind = table_kind(table.table_id);
  if (!kind) throw DomainError("compare_to_theory: unknown table id '" + table.table_id + "'");
  ComparisonReport rep;
  rep.table_id = table.table_id;
  rep.kind = *kind;
  rep.rows = relative_frequencies(table);

  // Validates every label against the model as a side effect.
  std::vector<double> model;
  for (const auto& r : rep.rows) model.push_back(model_probability(*kind, r.input_label, r.outcome_label));

  Aggregate agg;
  const auto groups = table.groups();
  double theory_sum = 0.0;
  auto add = [&](std::size_t i, bool hit) {
    agg.trials += rep.rows[i].count;
    if (hit) agg.successes += rep.rows[i].count;
  };
  switch (*kind) {
    case TableKind::kCorrectTransfer:
    case TableKind::kHonestAlarms: {
      const bool transfer = *kind == TableKind::kCorrectTransfer;
      agg.name = transfer ? "honest_transfer_success" : "false_alarm_rate";
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        const bool hit = transfer ? correct_transfer_ok(r.input_label, r.outcome_label)
                                  : alarm(r.input_label, r.outcome_label);
        add(i, hit);
        if (hit) theory_sum += model[i];
      }
      theory_sum /= static_cast<double>(groups.size());
      break;
    }
    case TableKind::kBobCheating: {
      // One designated success cell per input: the largest p_t if the table
      // carries one, otherwise the model's most likely outcome.
      agg.name = "bob_cheat_success";
      for (const auto& g : groups) {
        std::optional<std::size_t> pick;
        double best_model = 0.0;
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
          if (rep.rows[i].input_label != g) continue;
          best_model = std::max(best_model, model[i]);
          const double key = table.has_p_t ? *rep.rows[i].p_t : model[i];
          const double cur = !pick ? -1.0 : (table.has_p_t ? *rep.rows[*pick].p_t : model[*pick]);
          if (key > cur) pick = i;
        }
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
          if (rep.rows[i].input_label == g) add(i, i == *pick);
        }
        theory_sum += best_model;
      }
      theory_sum /= static_cast<double>(groups.size());
      break;
    }
    case TableKind::kAliceGuess:
      agg.name = "alice_guess_rate";
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const bool hit = alice_guess_ok(rep.rows[i].outcome_label);
        add(i, hit);
        if (hit) theory_sum += model[i];
      }
      break;
    case TableKind::kAliceTests:
      agg.name = "alice_detection_rate";
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const bool hit = alice_test_failed(rep.rows[i].outcome_label);
        add(i, hit);
        if (hit) theory_sum += model[i];
      }
      break;
  }
  if (agg.trials == 0) throw DomainError("compare_to_theory: table has no counts");
  agg.value = static_cast<double>(agg.successes) / static_cast<double>(agg.trials);
  agg.sigma = std::sqrt(agg.value * (1.0 - agg.value) / static_cast<double>(agg.trials));
  agg.theory = theory_sum;
  agg.display = format_uncertainty(agg.value, agg.sigma);
  rep.aggregates.push_back(agg);
  return rep;
}

}  // namespace qot
