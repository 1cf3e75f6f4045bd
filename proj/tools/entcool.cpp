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

// entcool: heat random circuits, cool them back down, and look at their
// entanglement spectrum statistics.

#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entcool/circuit.hpp"
#include "entcool/errors.hpp"
#include "entcool/harness.hpp"

namespace {

using entcool::harness::ExperimentConfig;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadConfig = 2,
  kIoFailure = 3,
  kNotFound = 4,
  kInvariant = 5,
  kInterrupted = 6,
};

int report(const char* kind, int code, const std::string& message, const std::string& path = {}) {
  nlohmann::ordered_json rec;
  rec["error"] = kind;
  rec["exit_code"] = code;
  rec["message"] = message;
  if (!path.empty()) rec["path"] = path;
  std::cerr << rec.dump() << '\n';
  return code;
}

void print_fit(const std::string& label, const entcool::FitReport& fit) {
  std::cout << label << ": best_fit=" << entcool::SurmiseModel{fit.best_fit}.name()
            << " ks_poisson=" << fit.ks_poisson << " ks_goe=" << fit.ks_goe
            << " ks_gue=" << fit.ks_gue << " mean_r_tilde=" << fit.mean_r_tilde
            << " n_ratios=" << fit.n_ratios << " dropped=" << fit.drop_count << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement heating and cooling of random quantum circuits"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "TOML file; keys are the long flag names", false);

  ExperimentConfig cfg;
  std::string gate_set = "all";
  std::string beta_text = "5";

  app.add_option("--seed", cfg.master_seed, "master seed")->capture_default_str();
  app.add_option("--n-qubits", cfg.n_qubits, "register size")->capture_default_str();
  app.add_option("--gate-set", gate_set, "cnot-h-t, cnot-h-s, cnot-h-not or all")
      ->check(CLI::IsMember({"cnot-h-t", "cnot-h-s", "cnot-h-not", "all"}))
      ->capture_default_str();
  app.add_option("--n-gates", cfg.n_heat_gates, "heating gates per realization")
      ->capture_default_str();
  app.add_option("--realizations", cfg.n_realizations, "heating ensemble size")
      ->capture_default_str();
  app.add_option("--beta", beta_text, "inverse temperature (number or inf)")
      ->capture_default_str();
  app.add_option("--max-steps", cfg.max_cool_steps, "cooling step budget")->capture_default_str();
  app.add_option("--cut", cfg.stats_cut, "half, all or a cut index")->capture_default_str();
  app.add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
  app.add_option("--workers", cfg.workers, "threads, 0 = all cores")->capture_default_str();
  app.add_option("--cool-samples", cfg.n_cool_samples, "realizations to cool")
      ->capture_default_str();
  app.add_option("--curve-stride", cfg.curve_stride, "entropy curve stride, 0 = auto")
      ->capture_default_str();
  app.add_option("--target-entropy", cfg.target_entropy, "cooling stops below this")
      ->capture_default_str();
  app.add_option("--objective-q", cfg.objective_q, "Renyi order minimized by cooling")
      ->capture_default_str();
  app.add_option("--bin-width", cfg.bin_width, "histogram bin width")->capture_default_str();
  app.add_option("--r-max", cfg.r_max, "histogram range")->capture_default_str();
  app.add_option("--trace-every", cfg.trace_every, "entropy columns every k-th trace row")
      ->capture_default_str();
  app.add_flag("--store-states", cfg.store_states, "keep heated states of cooling samples");
  app.add_flag("!--no-traces", cfg.write_traces, "skip per-sample cooling traces");

  auto* heat_cmd = app.add_subcommand("heat", "run the heating ensemble");
  auto* cool_cmd = app.add_subcommand("cool", "cool sampled realizations of a heating run");
  auto* stats_cmd = app.add_subcommand("stats", "spacing-ratio statistics of a spectrum dump");
  auto* all_cmd = app.add_subcommand("all", "heat, cool and stats for each gate set");
  auto* replay_cmd = app.add_subcommand("replay", "re-execute one realization");
  std::size_t replay_index = 0;
  replay_cmd->add_option("realization", replay_index, "realization index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", kBadConfig, e.what());
  }

  try {
    if (beta_text == "inf" || beta_text == "infinity") {
      cfg.beta = std::numeric_limits<double>::infinity();
    } else {
      std::size_t used = 0;
      cfg.beta = std::stod(beta_text, &used);
      if (used != beta_text.size()) throw std::invalid_argument("trailing characters");
    }
  } catch (const std::exception&) {
    return report("config", kBadConfig, "invalid value for --beta: '" + beta_text + "'");
  }
  if (gate_set != "all") cfg.gate_sets = {gate_set};

  try {
    cfg.validate();
    if (*all_cmd) {
      for (const std::string& line : entcool::harness::run_pipeline(cfg).verdicts) {
        std::cout << line << '\n';
      }
      return kOk;
    }
    for (const std::string& label : cfg.gate_sets) {
      const entcool::GateSet set = entcool::GateSet::from_label(label);
      if (*heat_cmd) {
        const auto res = entcool::harness::run_heating_ensemble(cfg, set);
        std::cout << label << ": heated " << cfg.n_realizations << " realizations, final mean S0="
                  << res.curve.mean_s0.back() << " S1=" << res.curve.mean_s1.back() << '\n';
      } else if (*cool_cmd) {
        const auto rows = entcool::harness::run_cooling_ensemble(cfg, set);
        std::size_t done = 0;
        for (const auto& r : rows) done += r.outcome == entcool::CoolingOutcome::kDisentangled;
        std::cout << label << ": disentangled " << done << "/" << rows.size() << '\n';
      } else if (*stats_cmd) {
        print_fit(label, entcool::harness::run_stats(cfg, set));
      } else if (*replay_cmd) {
        const auto r = entcool::harness::replay_realization(cfg, set, replay_index);
        std::cout << label << ": realization " << r.realization << ' '
                  << (r.matches ? "matches" : "DIFFERS") << " (" << r.rows_compared
                  << " rows), circuit " << r.circuit_file.string() << '\n';
        if (!r.matches) {
          return report("mismatch", kInvariant,
                        "replayed spectra differ from the dump for realization " +
                            std::to_string(replay_index));
        }
      }
    }
    return kOk;
  } catch (const entcool::ConfigError& e) {
    return report("config", kBadConfig, e.what());
  } catch (const entcool::NotFoundError& e) {
    return report("not_found", kNotFound, e.what(), e.path());
  } catch (const entcool::IoError& e) {
    return report("io", kIoFailure, e.what());
  } catch (const entcool::InvariantError& e) {
    return report("invariant", kInvariant, e.what());
  } catch (const entcool::harness::Interrupted& e) {
    return report("interrupted", kInterrupted, e.what());
  } catch (const std::invalid_argument& e) {
    return report("invalid_argument", kBadConfig, e.what());
  } catch (const std::exception& e) {
    return report("internal", kFailure, e.what());
  }
}
