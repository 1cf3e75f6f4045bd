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

#pragma once

// Experiment orchestration: heating ensembles, cooling of sampled
// realizations, spacing-ratio statistics, and the files that connect them.
//
// Every gate set writes into <output_dir>/<gate-set label>/:
//
//   manifest.json         config snapshots, per-realization seeds, checksums
//   entropy_curve.csv     gate_number,mean_s0,mean_s1,stderr_s0,stderr_s1
//   spectra.csv           realization,cut,level_index,lambda
//   cooling_summary.csv   sample,outcome,final_mean_s0,final_mean_s1,steps_used
//   traces/sample_<i>.csv per-proposal cooling trace
//   ratios.csv, histogram.csv, fit.json
//   timestamps.log        wall-clock times (kept out of the JSON/CSV files so
//                         those are byte-reproducible)
//
// Realization i always uses the streams derive_seed(master_seed, i, ...), so
// results do not depend on the worker count or on interruptions.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entcool/circuit.hpp"
#include "entcool/cooling.hpp"
#include "entcool/spacings.hpp"
#include "entcool/spectrum.hpp"
#include "entcool/state_vector.hpp"

namespace entcool::harness {

inline constexpr const char* kSoftwareName = "entcool";
inline constexpr const char* kSoftwareVersion = "0.1.0";

struct ExperimentConfig {
  unsigned n_qubits = 16;
  std::vector<std::string> gate_sets = {"cnot-h-not", "cnot-h-s", "cnot-h-t"};
  std::size_t n_heat_gates = 512;
  std::size_t n_realizations = 5000;
  std::size_t n_cool_samples = 100;
  double beta = 5.0;
  std::size_t max_cool_steps = 200000;
  double target_entropy = 1e-8;
  double objective_q = 1.0;
  std::uint64_t master_seed = 12345;
  std::string stats_cut = "half";  // "half", "all" or a cut index
  std::filesystem::path output_dir = "out";
  unsigned workers = 0;            // 0 = OpenMP default
  std::size_t curve_stride = 0;    // 0 = every gate for n <= 16, every 4th above
  bool store_states = false;
  double bin_width = 0.05;
  double r_max = 10.0;
  std::size_t trace_every = 1;     // entropy columns of traces every k-th row
  bool write_traces = true;

  // Stops a run with Interrupted after this many newly computed realizations
  // or cooling samples (0 = never). Used to exercise checkpoint resume.
  std::size_t interrupt_after = 0;

  /// Throws ConfigError on invalid values.
  void validate() const;

  /// Cuts whose spectra are dumped and analysed.
  std::vector<unsigned> stats_cuts() const;
  /// Cut of the entropy curve: the stats cut, or n/2 with "all".
  unsigned curve_cut() const;
  std::size_t effective_curve_stride() const;
  /// Gate numbers at which the entropy curve is sampled (0 and the last gate
  /// included).
  std::vector<std::size_t> curve_points() const;

  /// Fields that determine the heating output.
  nlohmann::ordered_json heating_json() const;
  nlohmann::ordered_json cooling_json() const;
  nlohmann::ordered_json stats_json() const;
  /// Overwrites the heating fields from a heating_json() snapshot.
  void apply_heating_json(const nlohmann::json& j);
};

/// Thrown when ExperimentConfig::interrupt_after stops a run.
class Interrupted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory of one gate set's artifacts.
std::filesystem::path set_directory(const ExperimentConfig& cfg, const GateSet& set);

/// Initial angles are uniform on [0, pi], drawn from the heating stream
/// before the first gate.
struct HeatedRealization {
  std::vector<double> thetas;
  Circuit circuit;
  StateVector state;
};

/// Re-creates realization `index` bit-exactly.
HeatedRealization heat_realization(const ExperimentConfig& cfg, const GateSet& set,
                                   std::size_t index, const HeatObserver& observer = {});

struct EntropyCurve {
  std::vector<std::size_t> gate_numbers;
  std::vector<double> mean_s0;
  std::vector<double> mean_s1;
  std::vector<double> stderr_s0;
  std::vector<double> stderr_s1;
};

struct HeatingResult {
  EntropyCurve curve;
  std::vector<SpectrumRecord> spectra;  // realization-major, cut-minor
};

/// Heats every realization, writes entropy_curve.csv, spectra.csv and
/// manifest.json. Throws IoError before computing if the output directory is
/// not writable.
HeatingResult run_heating_ensemble(const ExperimentConfig& cfg, const GateSet& set);

/// Realizations picked for cooling: a seeded uniform subset, ascending.
std::vector<std::size_t> select_cool_samples(std::uint64_t master_seed,
                                             std::size_t n_realizations, std::size_t count);

struct CoolingSummaryRow {
  std::size_t sample = 0;
  CoolingOutcome outcome = CoolingOutcome::kStepBudgetExhausted;
  double initial_mean_s0 = 0.0;
  double initial_mean_s1 = 0.0;
  double final_mean_s0 = 0.0;
  double final_mean_s1 = 0.0;
  std::size_t steps_used = 0;
};

/// Cools the selected realizations of a finished heating run, writes
/// cooling_summary.csv and traces. Heating parameters come from the manifest;
/// throws NotFoundError naming manifest.json when it is missing.
std::vector<CoolingSummaryRow> run_cooling_ensemble(const ExperimentConfig& cfg,
                                                    const GateSet& set);

/// Reads spectra.csv, writes ratios.csv, histogram.csv and fit.json. Throws
/// NotFoundError for a missing dump and std::invalid_argument for one without
/// usable spectra.
FitReport run_stats(const ExperimentConfig& cfg, const GateSet& set);

/// "Poisson" statistics predict a reversible circuit, Wigner-Dyson ones an
/// irreversible one.
std::string verdict_line(const GateSet& set, const FitReport& fit,
                         const std::vector<CoolingSummaryRow>* cooling);

struct PipelineResult {
  std::vector<std::string> verdicts;
};

/// heat, cool and stats for every configured gate set, then verdicts.csv.
PipelineResult run_pipeline(const ExperimentConfig& cfg);

struct ReplayResult {
  std::size_t realization = 0;
  std::size_t rows_compared = 0;
  bool matches = false;
  std::filesystem::path circuit_file;
};

/// Re-executes one realization from the manifest, writes its circuit to
/// replay/r<index>.circuit and compares its spectra with spectra.csv.
ReplayResult replay_realization(const ExperimentConfig& cfg, const GateSet& set,
                                std::size_t realization);

}  // namespace entcool::harness
