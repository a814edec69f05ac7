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

// Detection-count tables: loading, relative frequencies with Poisson
// uncertainties, and comparison with the model predictions.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace qot {

struct CountRow {
  std::string input_label;
  std::string outcome_label;
  std::uint64_t count = 0;
  std::optional<double> p_t;
};

struct CountTable {
  std::string table_id;
  std::vector<CountRow> rows;
  bool has_p_t = false;

  // Input labels in order of first appearance.
  std::vector<std::string> groups() const;
};

// Header `table_id,input_state,outcome,counts` with an optional trailing
// `p_t` column. Throws ParseError on malformed rows, negative counts,
// duplicate (input, outcome) pairs, mixed table ids or an empty table.
CountTable parse_counts(std::istream& in, const std::string& source = "<stream>");
CountTable load_counts(const std::filesystem::path& path);

struct ComparisonRow {
  std::string input_label;
  std::string outcome_label;
  std::uint64_t count = 0;
  double f = 0.0;
  double sigma_f = 0.0;
  std::optional<double> p_t;
  std::optional<double> z_score;  // (f - p_t) / sigma_f when sigma_f > 0
};

// f = C / N per input group, sigma_f = sqrt(f (1 - f) / N): first-order
// propagation of independent Poisson counts through C / (C + rest). At
// f = 0 or 1 this gives sigma_f = 0.
std::vector<ComparisonRow> relative_frequencies(const CountTable& table);

// Value with its one-significant-digit uncertainty in parentheses at the last
// printed place: 0.52(1), 0.0012(9). sigma = 0 prints three decimals, 0.000(0).
std::string format_uncertainty(double value, double sigma);

enum class TableKind { kCorrectTransfer, kHonestAlarms, kBobCheating, kAliceGuess, kAliceTests };

std::optional<TableKind> table_kind(const std::string& table_id);
std::string to_string(TableKind k);

struct Aggregate {
  std::string name;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double value = 0.0;
  double sigma = 0.0;
  double theory = 0.0;
  std::string display;  // format_uncertainty(value, sigma)
};

struct ComparisonReport {
  std::string table_id;
  TableKind kind = TableKind::kCorrectTransfer;
  std::vector<ComparisonRow> rows;
  std::vector<Aggregate> aggregates;
};

// Model prediction for one (input, outcome) cell of a known table kind.
// Throws DomainError for labels that do not belong to the table.
double model_probability(TableKind kind, const std::string& input, const std::string& outcome);

// Throws DomainError on an unknown table id or labels foreign to its kind.
ComparisonReport compare_to_theory(const CountTable& table);

}  // namespace qot
