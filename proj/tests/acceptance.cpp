// Copyright 2026 The entcool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: nine end-to-end checks at fixed tolerances. Prints one
// PASS/FAIL line per check and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "entcool/circuit.hpp"
#include "entcool/cooling.hpp"
#include "entcool/harness.hpp"
#include "entcool/io.hpp"
#include "entcool/rng.hpp"
#include "entcool/spacings.hpp"
#include "entcool/spectrum.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace entcool;
using harness::ExperimentConfig;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream o;
  o << std::setprecision(prec) << v;
  return o.str();
}

struct Context {
  fs::path out;
  unsigned workers = 0;
  // Ensembles shared by checks 1-3.
  std::map<std::string, harness::HeatingResult> heated;
  ExperimentConfig ensemble_cfg;
};

ExperimentConfig statistics_config(const Context& ctx) {
  ExperimentConfig c;
  c.n_qubits = 12;
  c.n_heat_gates = 300;
  c.n_realizations = 500;
  c.n_cool_samples = 1;
  c.stats_cut = "half";
  c.curve_stride = 10;
  c.output_dir = ctx.out / "ensemble_n12";
  c.workers = ctx.workers;
  return c;
}

void ensure_ensembles(Context& ctx) {
  if (!ctx.heated.empty()) return;
  ctx.ensemble_cfg = statistics_config(ctx);
  for (const GateSet& set : standard_gate_sets()) {
    ctx.heated[set.label()] = harness::run_heating_ensemble(ctx.ensemble_cfg, set);
  }
}

Outcome heating_saturation(Context& ctx) {
  ensure_ensembles(ctx);
  Outcome o{true, ""};
  for (const auto& [label, res] : ctx.heated) {
    const double s0 = res.curve.mean_s0.back();
    const bool ok = std::abs(s0 - 6.0) <= 0.02 && res.curve.gate_numbers.back() == 300;
    o.pass = o.pass && ok;
    o.detail += label + " mean S0(300)=" + fmt(s0, 6) + " S1(300)=" + fmt(res.curve.mean_s1.back()) + "; ";
  }
  return o;
}

Outcome universal_statistics(Context& ctx) {
  ensure_ensembles(ctx);
  const FitReport f = harness::run_stats(ctx.ensemble_cfg, GateSet::cnot_h_t());
  const bool pass = f.best_fit == SurmiseKind::kGUE && f.ks_gue < 0.05 && f.ks_gue < f.ks_poisson &&
                    std::abs(f.mean_r_tilde - 0.5996) <= 0.03;
  return {pass, "cnot-h-t best=" + SurmiseModel{f.best_fit}.name() + " ks_gue=" + fmt(f.ks_gue) +
                    " ks_goe=" + fmt(f.ks_goe) + " ks_poisson=" + fmt(f.ks_poisson) +
                    " <r~>=" + fmt(f.mean_r_tilde) + " n_ratios=" + std::to_string(f.n_ratios)};
}

Outcome clifford_statistics(Context& ctx) {
  ensure_ensembles(ctx);
  Outcome o{true, ""};
  for (const GateSet& set : {GateSet::cnot_h_s(), GateSet::cnot_h_not()}) {
    const FitReport f = harness::run_stats(ctx.ensemble_cfg, set);
    const bool ok = f.best_fit == SurmiseKind::kPoisson && f.ks_poisson < 0.05 &&
                    std::abs(f.mean_r_tilde - (2 * std::numbers::ln2 - 1)) <= 0.03;
    o.pass = o.pass && ok;
    o.detail += set.label() + " best=" + SurmiseModel{f.best_fit}.name() + " ks_poisson=" +
                fmt(f.ks_poisson) + " <r~>=" + fmt(f.mean_r_tilde) + " n_ratios=" +
                std::to_string(f.n_ratios) + " dropped=" + std::to_string(f.drop_count) + "; ";
  }
  return o;
}

Outcome cooling_dichotomy(Context& ctx) {
  ExperimentConfig c;
  c.n_qubits = 10;
  c.n_heat_gates = 200;
  c.n_realizations = 100;
  c.n_cool_samples = 20;
  c.beta = 5.0;
  c.max_cool_steps = 200000;
  c.write_traces = false;
  c.output_dir = ctx.out / "cooling_n10";
  c.workers = ctx.workers;

  std::size_t not_done = 0, t_stuck = 0;
  double not_mean = 0.0, t_ratio_min = std::numeric_limits<double>::infinity();
  for (const GateSet& set : {GateSet::cnot_h_not(), GateSet::cnot_h_t()}) {
    harness::run_heating_ensemble(c, set);
    const auto rows = harness::run_cooling_ensemble(c, set);
    for (const auto& r : rows) {
      if (set.name == GateSet::Name::kCnotHNot) {
        not_done += r.final_mean_s1 < 0.05;
        not_mean += r.final_mean_s1 / rows.size();
      } else {
        const double ratio = r.final_mean_s1 / r.initial_mean_s1;
        t_ratio_min = std::min(t_ratio_min, ratio);
        t_stuck += r.outcome == CoolingOutcome::kStepBudgetExhausted && ratio > 0.5;
      }
    }
  }
  const bool pass = not_done >= 18 && t_stuck == 20;
  return {pass, "cnot-h-not disentangled " + std::to_string(not_done) + "/20 (mean final S1=" +
                    fmt(not_mean) + "); cnot-h-t stuck " + std::to_string(t_stuck) +
                    "/20 (min final/initial S1=" + fmt(t_ratio_min) + ")"};
}

Outcome oracle_equivalence(Context&) {
  std::mt19937_64 gen(20260101);
  double worst = 0.0;
  for (unsigned n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto psi = oracle::random_state(n, gen);
      const StateVector s = StateVector::from_amplitudes(psi);
      for (unsigned c = 1; c < n; ++c) {
        const auto mine = entanglement_spectrum(s, Bipartition(n, c)).values;
        const auto ref = oracle::hermitian_eigenvalues(oracle::partial_trace(psi, n, c), std::size_t{1} << c);
        for (std::size_t i = 0; i < ref.size(); ++i) {
          const double v = i < mine.size() ? mine[i] : 0.0;
          worst = std::max(worst, std::abs(v - ref[i]));
        }
      }
    }
  }
  return {worst <= 1e-10, "max elementwise deviation " + fmt(worst, 3) + " over 500 states"};
}

Outcome surmise_integrity(Context&) {
  const SurmiseModel models[] = {SurmiseModel::poisson(), SurmiseModel::goe(), SurmiseModel::gue()};
  double worst_norm = 0.0;
  for (SurmiseModel m : models) {
    const double total = oracle::simpson(
        [&](double t) {
          t = std::min(t, 1.0 - 1e-12);
          const double r = t / (1.0 - t);
          return surmise_pdf(m, r) / ((1.0 - t) * (1.0 - t));
        },
        0.0, 1.0, 200000);
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
  }
  double worst_cdf = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double r = 0.07 * i;
    worst_cdf = std::max(worst_cdf, std::abs(surmise_cdf(SurmiseModel::poisson(), r) -
                                             oracle::simpson(oracle::poisson_pdf, 0.0, r, 4000)));
  }
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RatioEnsemble e;
  SpacingRatios sr;
  for (int i = 0; i < 100000; ++i) {
    const double r = oracle::poisson_inverse_cdf(u(gen));
    sr.ratios.push_back(r);
    sr.folded.push_back(std::min(r, 1.0 / r));
  }
  e.add(0, sr);
  const FitReport f = classify(e);
  const bool pass = worst_norm <= 1e-6 && worst_cdf <= 1e-10 && f.best_fit == SurmiseKind::kPoisson &&
                    f.ks_poisson < 0.01;
  return {pass, "max |int pdf - 1|=" + fmt(worst_norm, 3) + " max |cdf - quad|=" + fmt(worst_cdf, 3) +
                    " poisson samples best=" + SurmiseModel{f.best_fit}.name() + " ks=" + fmt(f.ks_poisson)};
}

Outcome reversal(Context&) {
  double worst_amp = 0.0, worst_s1 = 0.0;
  const auto sets = standard_gate_sets();
  for (std::uint64_t k = 0; k < 50; ++k) {
    const GateSet& set = sets[k % sets.size()];
    RngStream rng(derive_seed(4242, k, StreamPurpose::kHeating));
    std::vector<double> th(10);
    for (double& t : th) t = std::numbers::pi * rng.uniform();
    StateVector s = new_product_state(th);
    const StateVector start = s;
    const Circuit circ = heat(s, set, 512, rng);
    apply_circuit(s, inverse_circuit(circ));
    worst_amp = std::max(worst_amp, max_abs_difference(s, start));
    worst_s1 = std::max(worst_s1, mean_cut_entropy(s, 1.0));
  }
  return {worst_amp < 1e-8 && worst_s1 < 1e-9,
          "max amplitude error " + fmt(worst_amp, 3) + ", max mean-cut S1 " + fmt(worst_s1, 3)};
}

Outcome metropolis(Context&) {
  const double beta = 5.0;
  const int n_bins = 6;
  const double width = 0.15;
  std::vector<double> expected(n_bins, 0.0), var(n_bins, 0.0);
  std::vector<long> accepted(n_bins, 0), total(n_bins, 0);
  long uphill = 0;
  for (std::uint64_t r = 0; uphill < 10000; ++r) {
    RngStream hr(derive_seed(777, r, StreamPurpose::kHeating));
    std::vector<double> th(6);
    for (double& t : th) t = std::numbers::pi * hr.uniform();
    StateVector s = new_product_state(th);
    heat(s, GateSet::cnot_h_t(), 100, hr);
    RngStream cr(derive_seed(777, r, StreamPurpose::kCooling));
    CoolingConfig cfg;
    cfg.beta = beta;
    cfg.max_steps = 4000;
    const CoolingTrace t = cool(s, GateSet::cnot_h_t(), cfg, cr);
    for (const CoolingStep& st : t.steps) {
      if (st.delta_s <= kFlatMoveTolerance) continue;
      ++uphill;
      const int b = std::min(n_bins - 1, static_cast<int>(st.delta_s / width));
      const double p = std::exp(-beta * st.delta_s);
      expected[b] += p;
      var[b] += p * (1 - p);
      ++total[b];
      accepted[b] += st.accepted;
    }
  }
  bool bins_ok = true;
  double worst_z = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    if (total[b] == 0) continue;
    const double sigma = std::sqrt(var[b]);
    const double dev = std::abs(accepted[b] - expected[b]);
    if (sigma > 0) worst_z = std::max(worst_z, dev / sigma);
    bins_ok = bins_ok && dev <= 3 * sigma + 1e-9;
  }

  bool monotone = true;
  for (const GateSet& set : standard_gate_sets()) {
    for (std::uint64_t r = 0; r < 5; ++r) {
      RngStream hr(derive_seed(888, r, StreamPurpose::kHeating));
      std::vector<double> th(8);
      for (double& t : th) t = std::numbers::pi * hr.uniform();
      StateVector s = new_product_state(th);
      heat(s, set, 150, hr);
      RngStream cr(derive_seed(888, r, StreamPurpose::kCooling));
      CoolingConfig cfg;
      cfg.beta = std::numeric_limits<double>::infinity();
      cfg.max_steps = 5000;
      const CoolingTrace t = cool(s, set, cfg, cr);
      double prev = t.initial_mean_s1;
      for (const CoolingStep& st : t.steps) {
        if (!st.accepted) continue;
        monotone = monotone && st.mean_s1 <= prev;
        prev = st.mean_s1;
      }
    }
  }
  return {bins_ok && monotone, std::to_string(uphill) + " uphill proposals, worst bin deviation " +
                                   fmt(worst_z, 3) + " sigma; zero-temperature sequence " +
                                   (monotone ? "non-increasing" : "INCREASED")};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == "timestamps.log") continue;
    out[fs::relative(e.path(), dir).string()] = io::read_file(e.path());
  }
  return out;
}

Outcome determinism(Context& ctx) {
  ExperimentConfig c;
  c.n_qubits = 8;
  c.n_heat_gates = 120;
  c.n_realizations = 60;
  c.n_cool_samples = 4;
  c.max_cool_steps = 3000;
  c.stats_cut = "all";
  c.output_dir = ctx.out / "determinism_a";
  c.workers = 1;
  fs::remove_all(c.output_dir);
  harness::run_pipeline(c);
  c.output_dir = ctx.out / "determinism_b";
  c.workers = 4;
  fs::remove_all(c.output_dir);
  harness::run_pipeline(c);
  const auto a = snapshot(ctx.out / "determinism_a");
  const auto b = snapshot(ctx.out / "determinism_b");
  std::size_t differing = 0;
  for (const auto& [name, data] : a) differing += !b.contains(name) || b.at(name) != data;
  const bool pass = a.size() == b.size() && differing == 0 && a.contains("verdicts.csv");
  return {pass, std::to_string(a.size()) + " files compared (workers 1 vs 4), " +
                    std::to_string(differing) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entcool acceptance suite"};
  Context ctx;
  ctx.out = "acceptance_runs";
  std::vector<int> only;
  app.add_option("--out", ctx.out, "scratch directory for ensembles");
  app.add_option("--workers", ctx.workers, "threads, 0 = all cores");
  app.add_option("--only", only, "run just these criteria (1-9)");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(ctx.out);

  struct Check {
    int id;
    const char* name;
    Outcome (*run)(Context&);
  };
  const Check checks[] = {
      {1, "heating saturation", heating_saturation},
      {2, "universal set statistics", universal_statistics},
      {3, "Clifford set statistics", clifford_statistics},
      {4, "cooling dichotomy", cooling_dichotomy},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "surmise integrity", surmise_integrity},
      {7, "reversal", reversal},
      {8, "Metropolis contract", metropolis},
      {9, "determinism", determinism},
  };

  int failures = 0;
  for (const Check& c : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail
              << " (" << fmt(secs, 3) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
