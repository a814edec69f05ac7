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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qot/bounds.hpp"
#include "qot/cheating.hpp"
#include "qot/circuit.hpp"
#include "qot/error.hpp"
#include "qot/experiment.hpp"
#include "qot/protocol.hpp"
#include "qot/rng.hpp"

#ifndef QOTSIM_VERSION
#define QOTSIM_VERSION "0.0.0"
#endif

namespace qot::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised for options that parse but make no sense together or are out of range.
struct UsageValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json estimate_json(const Estimate& e) {
  return Json{{"successes", e.successes}, {"trials", e.trials}, {"rate", e.rate()}, {"sigma", e.sigma()}};
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  std::optional<double> f;
  std::optional<std::string> curve;
  bool minimax = false;
  bool pure_symmetric = false;
};

Json bounds_point(double F) {
  Json j{{"F", F}, {"alice", alice_bound(F)}, {"bob_general", bob_bound_general(F)}};
  j["bob_pure_symmetric"] = F <= 0.5 ? Json(bob_bound_pure_symmetric(F)) : Json(nullptr);
  return j;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageValueError("--curve: '" + spec + "' is not start:stop:step");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw UsageValueError("--curve: '" + spec + "' is not start:stop:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0)) throw UsageValueError("--curve: step must be positive");
  if (a < 0.0 || b > 1.0 || a > b) throw UsageValueError("--curve: need 0 <= start <= stop <= 1");
  const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  if (n > 1000000) throw UsageValueError("--curve: more than 10^6 points");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = std::min(b, a + static_cast<double>(i) * step);
  return grid;
}

Json cmd_bounds(const BoundsArgs& a, Json& params) {
  const int modes = (a.f ? 1 : 0) + (a.curve ? 1 : 0) + (a.minimax ? 1 : 0);
  if (modes != 1) throw UsageValueError("bounds: give exactly one of --f, --curve, --minimax");
  if (a.pure_symmetric && !a.minimax) throw UsageValueError("bounds: --pure-symmetric needs --minimax");
  params["f"] = a.f ? Json(*a.f) : Json(nullptr);
  params["curve"] = a.curve ? Json(*a.curve) : Json(nullptr);
  params["minimax"] = a.minimax;
  params["pure_symmetric"] = a.pure_symmetric;

  if (a.f) {
    if (!(*a.f >= 0.0 && *a.f <= 1.0)) throw UsageValueError("bounds: F must lie in [0, 1]");
    return bounds_point(*a.f);
  }
  if (a.curve) {
    const std::vector<TradeoffPoint> pts = tradeoff_curve(parse_grid(*a.curve));
    std::ostringstream csv;
    csv.precision(17);
    csv << "F,alice,bob_general,bob_pure_symmetric\n";
    for (const TradeoffPoint& p : pts) {
      csv << p.F << ',' << p.alice_bound << ',' << p.bob_bound_general << ',';
      if (p.bob_bound_pure_symmetric) csv << *p.bob_bound_pure_symmetric;
      csv << '\n';
    }
    return Json{{"points", pts.size()}, {"csv", csv.str()}};
  }
  const MinimaxResult m = a.pure_symmetric ? minimax_pure_symmetric() : minimax_general();
  return Json{{"family", a.pure_symmetric ? "pure_symmetric" : "general"}, {"F", m.F_star}, {"value", m.value}};
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::uint64_t rounds = 0;
  std::string cheat = "none";
  std::optional<std::string> export_path;
};

Json cmd_simulate(const SimulateArgs& a, std::uint64_t seed, Json& params) {
  params["rounds"] = a.rounds;
  params["cheat"] = a.cheat;
  params["export"] = a.export_path ? Json(*a.export_path) : Json(nullptr);
  if (a.rounds < 4) throw UsageValueError("simulate: --rounds must be at least 4");
  const CheatMode mode = parse_cheat_mode(a.cheat);

  ProtocolConfig cfg;
  cfg.total_rounds = a.rounds;
  cfg.seed = seed;
  const Transcript t = run_protocol(cfg, mode);
  if (a.export_path) {
    std::ofstream f(*a.export_path, std::ios::binary);
    if (!f) throw ParseError("cannot open '" + *a.export_path + "' for writing");
    export_transcript_jsonl(t, f);
    if (!f) throw ParseError("write to '" + *a.export_path + "' failed");
  }
  const TranscriptSummary s = summarize(t);
  Json r{{"payload_rounds", s.payload_rounds},
         {"test_rounds", s.test_rounds},
         {"aborted", t.aborted},
         {"abort_round", t.abort_round ? Json(*t.abort_round) : Json(nullptr)},
         {"detection", estimate_json(s.test_failures)}};
  switch (mode) {
    case CheatMode::kNone:
      r["correct"] = estimate_json(s.correct);
      r["c_zero"] = estimate_json(s.c_zero);
      break;
    case CheatMode::kBob:
      r["bob_guess"] = estimate_json(s.bob_guess);
      r["closed_form"] = (3.0 + 2.0 * std::numbers::sqrt2) / 8.0;
      break;
    case CheatMode::kAlice:
      r["alice_guess"] = estimate_json(s.alice_guess);
      r["alice_certain"] = estimate_json(s.alice_certain);
      r["alice_uncertain"] = estimate_json(s.alice_uncertain);
      r["closed_form"] = alice_cheat_probability(CheatStateParams::optimal());
      break;
  }
  return r;
}

// ---- combined / optimize-cheat / prep / compare ---------------------------

Json cmd_combined(std::uint64_t runs, std::uint64_t seed, Json& params) {
  params["runs"] = runs;
  const EqualizingMix m = equalizing_mix_probability();
  const CombinedResult c = run_combined(m.p, runs, seed);
  return Json{{"p", m.p},
              {"value", m.value},
              {"alice_analytic", c.alice_analytic},
              {"bob_analytic", c.bob_analytic},
              {"alice_mc", estimate_json(c.alice_mc)},
              {"bob_mc", estimate_json(c.bob_mc)}};
}

Json cmd_optimize_cheat(int starts, std::uint64_t seed, Json& params) {
  params["starts"] = starts;
  if (starts < 1) throw UsageValueError("optimize-cheat: --starts must be positive");
  const AliceOptimizeResult r = alice_cheat_optimize(seed, starts);
  Json amps = Json::array();
  for (Complex z : r.params.amplitudes()) amps.push_back(complex_json(z));
  return Json{{"value", r.value},
              {"closed_form", alice_cheat_probability(r.params)},
              {"converged", r.converged},
              {"amplitudes", amps},
              {"start_values", r.start_values}};
}

Json cmd_prep(bool verify, int starts, std::uint64_t seed, Json& params) {
  params["verify_table_iv"] = verify;
  params["starts"] = starts;
  if (starts < 1) throw UsageValueError("prep: --starts must be positive");
  const CircuitParams p = table_iv_params();
  const StateVector out = prepare_sigma(p);
  Json amps = Json::array();
  for (Index i = 0; i < out.dim(); ++i) amps.push_back(complex_json(out[i]));
  Json r{{"circuit",
          {{"theta", p.theta}, {"phi", p.phi}, {"alpha", p.alpha}, {"beta", p.beta}}},
         {"amplitudes", amps}};
  if (!verify) return r;

  const LuEquivalenceResult lu = lu_equivalence(out, sigma_target(), starts, seed);
  const auto got = single_qubit_spectra(out);
  const auto want = single_qubit_spectra(sigma_target());
  Json deltas = Json::array();
  double worst = 0.0;
  for (int q = 0; q < 3; ++q) {
    Json row = Json::array();
    for (int k = 0; k < 2; ++k) {
      const double d = got[q][k] - want[q][k];
      worst = std::max(worst, std::abs(d));
      row.push_back(d);
    }
    deltas.push_back(row);
  }
  r["E"] = lu.E;
  r["one_minus_E"] = 1.0 - lu.E;
  r["converged"] = lu.converged;
  r["spectra"] = got;
  r["spectra_target"] = want;
  r["spectra_delta"] = deltas;
  r["spectra_max_delta"] = worst;
  return r;
}

Json cmd_compare(const std::string& path, Json& params) {
  params["data"] = path;
  const ComparisonReport rep = compare_to_theory(load_counts(path));
  Json rows = Json::array();
  for (const ComparisonRow& row : rep.rows) {
    rows.push_back(Json{{"input", row.input_label},
                        {"outcome", row.outcome_label},
                        {"count", row.count},
                        {"f", row.f},
                        {"sigma_f", row.sigma_f},
                        {"display", format_uncertainty(row.f, row.sigma_f)},
                        {"model", model_probability(rep.kind, row.input_label, row.outcome_label)},
                        {"p_t", row.p_t ? Json(*row.p_t) : Json(nullptr)},
                        {"z", row.z_score ? Json(*row.z_score) : Json(nullptr)}});
  }
  Json aggs = Json::array();
  for (const Aggregate& a : rep.aggregates) {
    aggs.push_back(Json{{"name", a.name},
                        {"successes", a.successes},
                        {"trials", a.trials},
                        {"value", a.value},
                        {"sigma", a.sigma},
                        {"display", a.display},
                        {"theory", a.theory}});
  }
  return Json{{"table_id", rep.table_id}, {"rows", rows}, {"aggregates", aggs}};
}

// ---- output ---------------------------------------------------------------

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string() && j.get_ref<const std::string&>().find('\n') != std::string::npos) {
    out << path << ":\n" << j.get<std::string>();
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and analysis toolkit for imperfect 1-out-of-2 quantum oblivious transfer", "qotsim"};
  app.require_subcommand(1);
  app.fallthrough();  // --pretty and --timestamp may follow the subcommand
  app.set_version_flag("--version", std::string(QOTSIM_VERSION));
  bool pretty = false;
  bool stamp = false;
  std::uint64_t seed = kDefaultSeed;
  app.add_flag("--pretty", pretty, "Human-readable summary instead of JSON");
  app.add_flag("--timestamp", stamp, "Record the wall-clock time in the manifest");

  BoundsArgs bounds;
  CLI::App* b = app.add_subcommand("bounds", "Cheating-probability bounds versus fidelity");
  b->add_option("--f", bounds.f, "Largest pairwise fidelity F in [0, 1]");
  b->add_option("--curve", bounds.curve, "Tradeoff curve over start:stop:step");
  b->add_flag("--minimax", bounds.minimax, "Protocol-optimal F and value");
  b->add_flag("--pure-symmetric", bounds.pure_symmetric, "Minimax over pure symmetric outputs");

  SimulateArgs sim;
  CLI::App* s = app.add_subcommand("simulate", "Monte Carlo run of the four-state protocol");
  s->add_option("--rounds", sim.rounds, "Total rounds N, tests included (N >= 4)")->required();
  s->add_option("--seed", seed, "Master seed");
  s->add_option("--cheat", sim.cheat, "none, alice or bob")->check(CLI::IsMember({"none", "alice", "bob"}));
  s->add_option("--export", sim.export_path, "Write the transcript as JSON lines");

  std::uint64_t runs = 100000;
  CLI::App* c = app.add_subcommand("combined", "Equalizing mixture with the trivial protocol");
  c->add_option("--runs", runs, "Monte Carlo runs");
  c->add_option("--seed", seed, "Master seed");

  int opt_starts = 20;
  CLI::App* o = app.add_subcommand("optimize-cheat", "Numerical search for Alice's best cheat state");
  o->add_option("--starts", opt_starts, "Random starts");
  o->add_option("--seed", seed, "Master seed");

  bool verify = false;
  int prep_starts = 50;
  CLI::App* p = app.add_subcommand("prep", "Gate-level preparation of Alice's cheat state");
  p->add_flag("--verify-table-iv", verify, "Fit local unitaries against the target state");
  p->add_option("--starts", prep_starts, "Random starts of the equivalence fit");
  p->add_option("--seed", seed, "Master seed");

  std::string data;
  CLI::App* d = app.add_subcommand("compare", "Reanalyse a detection-count table");
  d->add_option("--data", data, "CSV count table")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Json params = Json::object();
  Json manifest{{"subcommand", sub->get_name()}};
  Json result;
  bool seeded = false;
  try {
    if (sub == b) {
      result = cmd_bounds(bounds, params);
    } else if (sub == s) {
      seeded = true;
      result = cmd_simulate(sim, seed, params);
    } else if (sub == c) {
      seeded = true;
      result = cmd_combined(runs, seed, params);
    } else if (sub == o) {
      seeded = true;
      result = cmd_optimize_cheat(opt_starts, seed, params);
    } else if (sub == p) {
      seeded = verify;
      result = cmd_prep(verify, prep_starts, seed, params);
    } else {
      result = cmd_compare(data, params);
    }
  } catch (const UsageValueError& e) {
    err << "qotsim: " << e.what() << '\n';
    return kBadValue;
  } catch (const ParseError& e) {
    err << "qotsim: " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    err << "qotsim: " << e.what() << '\n';
    return kBadValue;
  } catch (const std::exception& e) {
    err << "qotsim: internal error: " << e.what() << '\n';
    return kInternal;
  }

  manifest["params"] = params;
  manifest["seed"] = seeded ? Json(seed) : Json(nullptr);
  manifest["version"] = QOTSIM_VERSION;
  manifest["timestamp"] = stamp ? Json(utc_now()) : Json(nullptr);
  const Json doc{{"manifest", manifest}, {"result", result}};
  if (pretty) {
    flatten(doc, "", out);
  } else {
    out << doc.dump() << '\n';
  }
  return kOk;
}

}  // namespace qot::cli
