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

#include "entcool/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "entcool/errors.hpp"
#include "entcool/io.hpp"
#include "entcool/rng.hpp"

namespace entcool::harness {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kCurveFile = "entropy_curve.csv";
constexpr const char* kSpectraFile = "spectra.csv";
constexpr const char* kCoolingFile = "cooling_summary.csv";
constexpr const char* kRatiosFile = "ratios.csv";
constexpr const char* kHistogramFile = "histogram.csv";
constexpr const char* kFitFile = "fit.json";
constexpr const char* kTimestampFile = "timestamps.log";
constexpr const char* kVerdictFile = "verdicts.csv";

// Runs body(i) for i in [0, count) on `workers` threads. The first exception
// cancels the remaining iterations and is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body body) {
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex mu;
  const int threads = workers > 0 ? static_cast<int>(workers) : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (error) std::rethrow_exception(error);
}

// Counts newly computed work items and stops the run once the configured
// budget is used up.
class InterruptBudget {
 public:
  explicit InterruptBudget(std::size_t limit) : limit_(limit) {}
  void charge() {
    if (limit_ != 0 && used_.fetch_add(1) >= limit_) {
      throw Interrupted("run interrupted after " + std::to_string(limit_) + " new items");
    }
  }

 private:
  std::size_t limit_;
  std::atomic<std::size_t> used_{0};
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void log_stage(const fs::path& dir, const std::string& stage, const std::string& start) {
  std::ofstream out(dir / kTimestampFile, std::ios::app);
  out << stage << " start=" << start << " end=" << utc_now() << '\n';
}

std::string short_fingerprint(const ordered_json& j) { return io::sha256_hex(j.dump()).substr(0, 16); }

// ---- binary checkpoints ----------------------------------------------------

class BinaryWriter {
 public:
  template <typename T>
  void put(const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf_.append(p, sizeof(T));
  }
  void put_doubles(const std::vector<double>& v) {
    put<std::uint64_t>(v.size());
    buf_.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
  }
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string data) : data_(std::move(data)) {}
  template <typename T>
  T get() {
    T v{};
    need(sizeof(T));
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::vector<double> get_doubles() {
    const auto n = get<std::uint64_t>();
    need(n * sizeof(double));
    std::vector<double> v(n);
    std::memcpy(v.data(), data_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
    return v;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t bytes) const {
    if (pos_ + bytes > data_.size()) throw IoError("truncated checkpoint");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

constexpr std::uint32_t kHeatCheckpointMagic = 0x31484345;  // "ECH1"
constexpr std::uint32_t kStateMagic = 0x31534345;           // "ECS1"

struct RealizationData {
  std::vector<double> s0;
  std::vector<double> s1;
  std::vector<SpectrumRecord> spectra;
};

std::string encode_realization(const RealizationData& r) {
  BinaryWriter w;
  w.put(kHeatCheckpointMagic);
  w.put_doubles(r.s0);
  w.put_doubles(r.s1);
  w.put<std::uint64_t>(r.spectra.size());
  for (const SpectrumRecord& rec : r.spectra) {
    w.put<std::uint64_t>(rec.realization);
    w.put<std::uint32_t>(rec.cut);
    w.put_doubles(rec.spectrum.values);
  }
  return w.str();
}

std::optional<RealizationData> decode_realization(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    BinaryReader r(io::read_file(path));
    if (r.get<std::uint32_t>() != kHeatCheckpointMagic) return std::nullopt;
    RealizationData d;
    d.s0 = r.get_doubles();
    d.s1 = r.get_doubles();
    const auto n = r.get<std::uint64_t>();
    for (std::uint64_t i = 0; i < n; ++i) {
      SpectrumRecord rec;
      rec.realization = r.get<std::uint64_t>();
      rec.cut = r.get<std::uint32_t>();
      rec.spectrum.values = r.get_doubles();
      d.spectra.push_back(std::move(rec));
    }
    if (!r.done()) return std::nullopt;
    return d;
  } catch (const IoError&) {
    return std::nullopt;  // torn or foreign file: recompute
  }
}

void write_state_file(const fs::path& path, const StateVector& state) {
  BinaryWriter w;
  w.put(kStateMagic);
  w.put<std::uint32_t>(state.n_qubits());
  for (const Complex& a : state.amplitudes()) {
    w.put(a.real());
    w.put(a.imag());
  }
  io::write_file_atomic(path, w.str());
}

StateVector read_state_file(const fs::path& path) {
  BinaryReader r(io::read_file(path));
  if (r.get<std::uint32_t>() != kStateMagic) throw IoError("not a state file: " + path.string());
  const auto n = r.get<std::uint32_t>();
  if (n < 1 || n > StateVector::kMaxQubits) throw IoError("bad qubit count in " + path.string());
  std::vector<Complex> amps(std::size_t{1} << n);
  for (Complex& a : amps) {
    const double re = r.get<double>();
    const double im = r.get<double>();
    a = Complex(re, im);
  }
  return StateVector::from_amplitudes(std::move(amps));
}

// ---- manifest ----------------------------------------------------------------

fs::path manifest_path(const fs::path& dir) { return dir / kManifestFile; }

ordered_json load_manifest(const fs::path& dir) {
  const fs::path path = manifest_path(dir);
  const std::string text = io::read_file(path);  // NotFoundError names the file
  try {
    return ordered_json::parse(text);
  } catch (const json::exception& e) {
    throw IoError("corrupt manifest " + path.string() + ": " + e.what());
  }
}

void record_files(ordered_json& manifest, const std::map<std::string, std::string>& contents) {
  std::map<std::string, std::string> files;
  if (manifest.contains("files")) {
    for (auto it = manifest["files"].begin(); it != manifest["files"].end(); ++it) {
      files[it.key()] = it.value().get<std::string>();
    }
  }
  for (const auto& [name, data] : contents) files[name] = io::sha256_hex(data);
  ordered_json out = ordered_json::object();
  for (const auto& [name, sum] : files) out[name] = sum;
  manifest["files"] = out;
}

void save_manifest(const fs::path& dir, const ordered_json& manifest) {
  io::write_file_atomic(manifest_path(dir), manifest.dump(2) + "\n");
}

// Config with the heating fields taken from an existing manifest, so later
// stages replay exactly what was heated.
ExperimentConfig heating_config_from_manifest(const ExperimentConfig& cfg,
                                              const ordered_json& manifest) {
  ExperimentConfig heat_cfg = cfg;
  if (!manifest.contains("heating") || !manifest["heating"].contains("config")) {
    throw IoError("manifest has no heating section");
  }
  heat_cfg.apply_heating_json(json::parse(manifest["heating"]["config"].dump()));
  return heat_cfg;
}

std::string cooling_summary_csv(const std::vector<CoolingSummaryRow>& rows) {
  std::ostringstream out;
  out << "sample,outcome,final_mean_s0,final_mean_s1,steps_used\n";
  for (const CoolingSummaryRow& r : rows) {
    out << r.sample << ',' << to_string(r.outcome) << ',' << io::format_double(r.final_mean_s0)
        << ',' << io::format_double(r.final_mean_s1) << ',' << r.steps_used << '\n';
  }
  return out.str();
}

ordered_json row_to_json(const CoolingSummaryRow& r) {
  ordered_json j;
  j["sample"] = r.sample;
  j["outcome"] = to_string(r.outcome);
  j["initial_mean_s0"] = r.initial_mean_s0;
  j["initial_mean_s1"] = r.initial_mean_s1;
  j["final_mean_s0"] = r.final_mean_s0;
  j["final_mean_s1"] = r.final_mean_s1;
  j["steps_used"] = r.steps_used;
  return j;
}

std::optional<CoolingSummaryRow> load_cooling_checkpoint(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    const json j = json::parse(io::read_file(path));
    CoolingSummaryRow r;
    r.sample = j.at("sample").get<std::size_t>();
    r.outcome = j.at("outcome").get<std::string>() == "Disentangled"
                    ? CoolingOutcome::kDisentangled
                    : CoolingOutcome::kStepBudgetExhausted;
    r.initial_mean_s0 = j.at("initial_mean_s0").get<double>();
    r.initial_mean_s1 = j.at("initial_mean_s1").get<double>();
    r.final_mean_s0 = j.at("final_mean_s0").get<double>();
    r.final_mean_s1 = j.at("final_mean_s1").get<double>();
    r.steps_used = j.at("steps_used").get<std::size_t>();
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

// ---- ExperimentConfig ----------------------------------------------------------

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("invalid configuration: " + msg); };
  if (n_qubits < 2 || n_qubits > StateVector::kMaxQubits) fail("n_qubits must be in [2, 24]");
  if (gate_sets.empty()) fail("no gate set selected");
  for (const std::string& label : gate_sets) {
    try {
      GateSet::from_label(label);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (n_heat_gates < 1) fail("n_heat_gates must be >= 1");
  if (n_realizations < 1) fail("n_realizations must be >= 1");
  if (n_cool_samples < 1) fail("n_cool_samples must be >= 1");
  if (n_cool_samples > n_realizations) fail("n_cool_samples must not exceed n_realizations");
  if (!(beta >= 0.0)) fail("beta must be >= 0");
  if (max_cool_steps < 1) fail("max_cool_steps must be >= 1");
  if (!(target_entropy >= 0.0)) fail("target_entropy must be >= 0");
  if (!(objective_q >= 0.0)) fail("objective_q must be >= 0");
  if (!(bin_width > 0.0)) fail("bin_width must be > 0");
  if (!(r_max > 0.0)) fail("r_max must be > 0");
  if (output_dir.empty()) fail("output_dir is empty");
  stats_cuts();
}

std::vector<unsigned> ExperimentConfig::stats_cuts() const {
  if (stats_cut == "half") return {n_qubits / 2};
  if (stats_cut == "all") {
    std::vector<unsigned> cuts;
    for (unsigned c = 1; c < n_qubits; ++c) cuts.push_back(c);
    return cuts;
  }
  unsigned cut = 0;
  auto res = std::from_chars(stats_cut.data(), stats_cut.data() + stats_cut.size(), cut);
  if (res.ec != std::errc() || res.ptr != stats_cut.data() + stats_cut.size() || cut < 1 ||
      cut >= n_qubits) {
    throw ConfigError("invalid configuration: cut must be 'half', 'all' or an integer in [1, " +
                      std::to_string(n_qubits - 1) + "], got '" + stats_cut + "'");
  }
  return {cut};
}

unsigned ExperimentConfig::curve_cut() const {
  return stats_cut == "all" ? n_qubits / 2 : stats_cuts().front();
}

std::size_t ExperimentConfig::effective_curve_stride() const {
  if (curve_stride > 0) return curve_stride;
  return n_qubits <= 16 ? 1 : 4;
}

std::vector<std::size_t> ExperimentConfig::curve_points() const {
  const std::size_t stride = effective_curve_stride();
  std::vector<std::size_t> points;
  for (std::size_t g = 0; g <= n_heat_gates; g += stride) points.push_back(g);
  if (points.back() != n_heat_gates) points.push_back(n_heat_gates);
  return points;
}

ordered_json ExperimentConfig::heating_json() const {
  ordered_json j;
  j["n_qubits"] = n_qubits;
  j["n_heat_gates"] = n_heat_gates;
  j["n_realizations"] = n_realizations;
  j["master_seed"] = master_seed;
  j["theta_distribution"] = "uniform[0,pi]";
  j["stats_cut"] = stats_cut;
  j["curve_stride"] = effective_curve_stride();
  j["store_states"] = store_states;
  j["n_cool_samples"] = n_cool_samples;
  return j;
}

ordered_json ExperimentConfig::cooling_json() const {
  ordered_json j;
  j["n_cool_samples"] = n_cool_samples;
  j["beta"] = std::isinf(beta) ? json("inf") : json(beta);
  j["max_cool_steps"] = max_cool_steps;
  j["target_entropy"] = target_entropy;
  j["objective_q"] = objective_q;
  j["trace_every"] = trace_every;
  j["write_traces"] = write_traces;
  return j;
}

ordered_json ExperimentConfig::stats_json() const {
  ordered_json j;
  j["stats_cut"] = stats_cut;
  j["bin_width"] = bin_width;
  j["r_max"] = r_max;
  j["degenerate_spacing"] = kDegenerateSpacing;
  j["rank_tolerance"] = RankTolerance::kDefault;
  return j;
}

void ExperimentConfig::apply_heating_json(const json& j) {
  n_qubits = j.at("n_qubits").get<unsigned>();
  n_heat_gates = j.at("n_heat_gates").get<std::size_t>();
  n_realizations = j.at("n_realizations").get<std::size_t>();
  master_seed = j.at("master_seed").get<std::uint64_t>();
  stats_cut = j.at("stats_cut").get<std::string>();
  curve_stride = j.at("curve_stride").get<std::size_t>();
  store_states = j.at("store_states").get<bool>();
}

fs::path set_directory(const ExperimentConfig& cfg, const GateSet& set) {
  return cfg.output_dir / set.label();
}

// ---- heating -------------------------------------------------------------------

HeatedRealization heat_realization(const ExperimentConfig& cfg, const GateSet& set,
                                   std::size_t index, const HeatObserver& observer) {
  RngStream rng(derive_seed(cfg.master_seed, index, StreamPurpose::kHeating));
  std::vector<double> thetas(cfg.n_qubits);
  for (double& t : thetas) t = std::numbers::pi * rng.uniform();
  StateVector state = new_product_state(thetas);
  Circuit circuit = heat(state, set, cfg.n_heat_gates, rng, observer);
  return {std::move(thetas), std::move(circuit), std::move(state)};
}

std::vector<std::size_t> select_cool_samples(std::uint64_t master_seed,
                                             std::size_t n_realizations, std::size_t count) {
  count = std::min(count, n_realizations);
  std::vector<std::size_t> perm(n_realizations);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RngStream rng(derive_seed(master_seed, 0, StreamPurpose::kSampleSelection));
  // Partial Fisher-Yates: the first `count` entries are a uniform subset, and
  // a larger count extends a smaller one.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n_realizations - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(count);
  std::sort(perm.begin(), perm.end());
  return perm;
}

HeatingResult run_heating_ensemble(const ExperimentConfig& cfg, const GateSet& set) {
  cfg.validate();
  const fs::path dir = set_directory(cfg, set);
  io::ensure_writable_directory(dir);
  const std::string started = utc_now();

  const ordered_json heat_json = [&] {
    ordered_json j = cfg.heating_json();
    j["gate_set"] = set.label();
    return j;
  }();
  const fs::path ckpt_dir = dir / "checkpoints" / ("heat-" + short_fingerprint(heat_json));
  fs::create_directories(ckpt_dir);
  if (cfg.store_states) fs::create_directories(dir / "states");

  const std::vector<std::size_t> points = cfg.curve_points();
  const std::vector<unsigned> cuts = cfg.stats_cuts();
  const unsigned curve_cut = cfg.curve_cut();
  const std::vector<std::size_t> cool_samples =
      cfg.store_states ? select_cool_samples(cfg.master_seed, cfg.n_realizations, cfg.n_cool_samples)
                       : std::vector<std::size_t>{};

  std::vector<RealizationData> results(cfg.n_realizations);
  InterruptBudget budget(cfg.interrupt_after);

  parallel_for(cfg.n_realizations, cfg.workers, [&](std::size_t idx) {
    const fs::path ckpt = ckpt_dir / ("r" + std::to_string(idx) + ".bin");
    if (auto cached = decode_realization(ckpt)) {
      results[idx] = std::move(*cached);
      return;
    }
    budget.charge();

    RealizationData data;
    data.s0.reserve(points.size());
    data.s1.reserve(points.size());
    std::optional<CutEntropyProfile> profile;
    std::size_t next_point = 0;
    auto record = [&] {
      data.s0.push_back(profile->entries().front().s0);
      data.s1.push_back(profile->entries().front().s1);
      ++next_point;
    };

    RngStream rng(derive_seed(cfg.master_seed, idx, StreamPurpose::kHeating));
    std::vector<double> thetas(cfg.n_qubits);
    for (double& t : thetas) t = std::numbers::pi * rng.uniform();
    StateVector state = new_product_state(thetas);
    profile.emplace(state, std::vector<unsigned>{curve_cut}, 1.0);
    if (points.front() == 0) record();

    heat(state, set, cfg.n_heat_gates, rng,
         [&](std::size_t gate_number, const GateInstance& gate, const StateVector& s) {
           profile->update(s, gate);
           if (next_point < points.size() && points[next_point] == gate_number) record();
         });

    for (unsigned c : cuts) {
      data.spectra.push_back({idx, c, entanglement_spectrum(state, Bipartition(cfg.n_qubits, c))});
    }
    if (std::binary_search(cool_samples.begin(), cool_samples.end(), idx)) {
      write_state_file(dir / "states" / ("r" + std::to_string(idx) + ".bin"), state);
    }
    io::write_file_atomic(ckpt, encode_realization(data));
    results[idx] = std::move(data);
  });

  // Reduce in realization order.
  HeatingResult out;
  EntropyCurve& curve = out.curve;
  curve.gate_numbers = points;
  const std::size_t np = points.size();
  const double count = static_cast<double>(cfg.n_realizations);
  curve.mean_s0.assign(np, 0.0);
  curve.mean_s1.assign(np, 0.0);
  curve.stderr_s0.assign(np, 0.0);
  curve.stderr_s1.assign(np, 0.0);
  for (const RealizationData& r : results) {
    for (std::size_t p = 0; p < np; ++p) {
      curve.mean_s0[p] += r.s0[p];
      curve.mean_s1[p] += r.s1[p];
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    curve.mean_s0[p] /= count;
    curve.mean_s1[p] /= count;
  }
  if (cfg.n_realizations > 1) {
    for (const RealizationData& r : results) {
      for (std::size_t p = 0; p < np; ++p) {
        curve.stderr_s0[p] += (r.s0[p] - curve.mean_s0[p]) * (r.s0[p] - curve.mean_s0[p]);
        curve.stderr_s1[p] += (r.s1[p] - curve.mean_s1[p]) * (r.s1[p] - curve.mean_s1[p]);
      }
    }
    for (std::size_t p = 0; p < np; ++p) {
      curve.stderr_s0[p] = std::sqrt(curve.stderr_s0[p] / (count - 1.0) / count);
      curve.stderr_s1[p] = std::sqrt(curve.stderr_s1[p] / (count - 1.0) / count);
    }
  }

  std::ostringstream curve_csv;
  curve_csv << "gate_number,mean_s0,mean_s1,stderr_s0,stderr_s1\n";
  for (std::size_t p = 0; p < np; ++p) {
    curve_csv << curve.gate_numbers[p] << ',' << io::format_double(curve.mean_s0[p]) << ','
              << io::format_double(curve.mean_s1[p]) << ','
              << io::format_double(curve.stderr_s0[p]) << ','
              << io::format_double(curve.stderr_s1[p]) << '\n';
  }
  std::ostringstream spectra_csv;
  write_spectra_header(spectra_csv);
  for (RealizationData& r : results) {
    for (SpectrumRecord& rec : r.spectra) {
      write_spectrum_rows(spectra_csv, rec.realization, rec.cut, rec.spectrum);
      out.spectra.push_back(std::move(rec));
    }
  }
  const std::string curve_text = curve_csv.str();
  const std::string spectra_text = spectra_csv.str();
  io::write_file_atomic(dir / kCurveFile, curve_text);
  io::write_file_atomic(dir / kSpectraFile, spectra_text);

  ordered_json manifest;
  manifest["software"] = {{"name", kSoftwareName}, {"version", kSoftwareVersion}};
  manifest["rng"] = {
      {"algorithm", RngStream::kAlgorithm},
      {"stream_seed", "splitmix64(master_seed ^ splitmix64(index ^ (purpose << 56)))"},
      {"purposes", {{"heating", 1}, {"cooling", 2}, {"sample_selection", 3}}}};
  manifest["gate_set"] = set.label();
  ordered_json realizations = ordered_json::array();
  for (std::size_t i = 0; i < cfg.n_realizations; ++i) {
    realizations.push_back(
        {{"index", i},
         {"heating_seed", derive_seed(cfg.master_seed, i, StreamPurpose::kHeating)},
         {"cooling_seed", derive_seed(cfg.master_seed, i, StreamPurpose::kCooling)}});
  }
  manifest["heating"] = {{"config", heat_json}, {"realizations", realizations}};
  std::map<std::string, std::string> files{{kCurveFile, curve_text}, {kSpectraFile, spectra_text}};
  if (cfg.store_states) {
    for (std::size_t idx : cool_samples) {
      const std::string name = "states/r" + std::to_string(idx) + ".bin";
      files[name] = io::read_file(dir / name);
    }
  }
  record_files(manifest, files);
  save_manifest(dir, manifest);

  fs::remove_all(dir / "checkpoints");
  log_stage(dir, "heat", started);
  return out;
}

// ---- cooling -------------------------------------------------------------------

std::vector<CoolingSummaryRow> run_cooling_ensemble(const ExperimentConfig& cfg,
                                                    const GateSet& set) {
  cfg.validate();
  const fs::path dir = set_directory(cfg, set);
  ordered_json manifest = load_manifest(dir);
  const ExperimentConfig heat_cfg = heating_config_from_manifest(cfg, manifest);
  if (cfg.n_cool_samples > heat_cfg.n_realizations) {
    throw ConfigError("invalid configuration: n_cool_samples exceeds the " +
                      std::to_string(heat_cfg.n_realizations) + " heated realizations");
  }
  io::ensure_writable_directory(dir);
  const std::string started = utc_now();

  CoolingConfig cc;
  cc.beta = cfg.beta;
  cc.max_steps = cfg.max_cool_steps;
  cc.target_entropy = cfg.target_entropy;
  cc.objective_q = cfg.objective_q;
  cc.validate();

  const std::vector<std::size_t> samples =
      select_cool_samples(heat_cfg.master_seed, heat_cfg.n_realizations, cfg.n_cool_samples);
  ordered_json fingerprint_src = {{"heating", manifest["heating"]["config"]},
                                  {"cooling", cfg.cooling_json()}};
  const fs::path ckpt_dir = dir / "checkpoints" / ("cool-" + short_fingerprint(fingerprint_src));
  fs::create_directories(ckpt_dir);
  if (cfg.write_traces) fs::create_directories(dir / "traces");

  std::vector<CoolingSummaryRow> rows(samples.size());
  InterruptBudget budget(cfg.interrupt_after);

  parallel_for(samples.size(), cfg.workers, [&](std::size_t k) {
    const std::size_t idx = samples[k];
    const fs::path ckpt = ckpt_dir / ("s" + std::to_string(idx) + ".json");
    if (auto cached = load_cooling_checkpoint(ckpt)) {
      rows[k] = *cached;
      return;
    }
    budget.charge();

    StateVector state = heat_cfg.store_states
                            ? read_state_file(dir / "states" / ("r" + std::to_string(idx) + ".bin"))
                            : heat_realization(heat_cfg, set, idx).state;
    RngStream rng(derive_seed(heat_cfg.master_seed, idx, StreamPurpose::kCooling));
    const CoolingTrace trace = cool(state, set, cc, rng);

    CoolingSummaryRow row;
    row.sample = idx;
    row.outcome = trace.outcome;
    row.initial_mean_s0 = trace.initial_mean_s0;
    row.initial_mean_s1 = trace.initial_mean_s1;
    row.final_mean_s0 = trace.final_mean_s0;
    row.final_mean_s1 = trace.final_mean_s1;
    row.steps_used = trace.steps_used();

    if (cfg.write_traces) {
      std::ostringstream tr;
      write_trace_csv(tr, trace, cfg.trace_every);
      io::write_file_atomic(dir / "traces" / ("sample_" + std::to_string(idx) + ".csv"), tr.str());
    }
    io::write_file_atomic(ckpt, row_to_json(row).dump());
    rows[k] = row;
  });

  const std::string summary = cooling_summary_csv(rows);
  io::write_file_atomic(dir / kCoolingFile, summary);

  ordered_json sample_list = ordered_json::array();
  for (const CoolingSummaryRow& r : rows) sample_list.push_back(row_to_json(r));
  manifest["cooling"] = {{"config", cfg.cooling_json()}, {"samples", sample_list}};
  std::map<std::string, std::string> files{{kCoolingFile, summary}};
  if (cfg.write_traces) {
    for (std::size_t idx : samples) {
      const std::string name = "traces/sample_" + std::to_string(idx) + ".csv";
      files[name] = io::read_file(dir / name);
    }
  }
  record_files(manifest, files);
  save_manifest(dir, manifest);

  fs::remove_all(dir / "checkpoints");
  log_stage(dir, "cool", started);
  return rows;
}

// ---- statistics -----------------------------------------------------------------

FitReport run_stats(const ExperimentConfig& cfg, const GateSet& set) {
  const fs::path dir = set_directory(cfg, set);
  const fs::path spectra_path = dir / kSpectraFile;
  const std::string text = io::read_file(spectra_path);
  const std::string started = utc_now();

  ExperimentConfig stats_cfg = cfg;
  std::optional<ordered_json> manifest;
  if (fs::exists(manifest_path(dir))) {
    manifest = load_manifest(dir);
    stats_cfg.n_qubits = heating_config_from_manifest(cfg, *manifest).n_qubits;
  }
  stats_cfg.stats_cut = cfg.stats_cut;
  const std::vector<unsigned> wanted = stats_cfg.stats_cuts();

  std::istringstream in(text);
  const std::vector<SpectrumRecord> records = read_spectra_csv(in);
  if (records.empty()) {
    throw std::invalid_argument("spectra file " + spectra_path.string() + " contains no spectra");
  }

  RatioEnsemble ensemble;
  ensemble.source_cut = wanted.size() == 1 ? static_cast<int>(wanted.front()) : RatioEnsemble::kAllCuts;
  std::set<std::size_t> realizations;
  for (const SpectrumRecord& rec : records) {
    if (std::find(wanted.begin(), wanted.end(), rec.cut) == wanted.end()) continue;
    realizations.insert(rec.realization);
    ensemble.add(rec.realization, spacing_ratios(rec.spectrum));
  }
  ensemble.n_realizations = realizations.size();
  if (ensemble.n_realizations == 0) {
    throw std::invalid_argument("spectra file " + spectra_path.string() +
                                " has no spectra for cut '" + cfg.stats_cut + "'");
  }
  if (ensemble.ratios.empty()) {
    throw std::invalid_argument("spectra in " + spectra_path.string() +
                                " yield no spacing ratios (fewer than 3 distinct levels)");
  }

  const FitReport fit = classify(ensemble);
  const Histogram hist = histogram(ensemble, cfg.bin_width, cfg.r_max);

  std::ostringstream ratios_csv, hist_csv;
  write_ratios_csv(ratios_csv, ensemble);
  write_histogram_csv(hist_csv, hist);
  const std::string fit_text = fit_report_json(fit);
  io::write_file_atomic(dir / kRatiosFile, ratios_csv.str());
  io::write_file_atomic(dir / kHistogramFile, hist_csv.str());
  io::write_file_atomic(dir / kFitFile, fit_text);

  if (manifest) {
    ordered_json stats = cfg.stats_json();
    stats["overflow_fraction"] = hist.overflow_fraction;
    stats["n_realizations"] = ensemble.n_realizations;
    (*manifest)["stats"] = {{"config", stats}};
    record_files(*manifest, {{kRatiosFile, ratios_csv.str()},
                             {kHistogramFile, hist_csv.str()},
                             {kFitFile, fit_text}});
    save_manifest(dir, *manifest);
  }
  log_stage(dir, "stats", started);
  return fit;
}

std::string verdict_line(const GateSet& set, const FitReport& fit,
                         const std::vector<CoolingSummaryRow>* cooling) {
  const bool poisson = fit.best_fit == SurmiseKind::kPoisson;
  const double best_ks = poisson ? fit.ks_poisson
                                 : (fit.best_fit == SurmiseKind::kGOE ? fit.ks_goe : fit.ks_gue);
  std::ostringstream out;
  out << set.label() << ": spacing ratios follow " << SurmiseModel{fit.best_fit}.name()
      << " (KS " << io::format_double(best_ks) << ", <r~> " << io::format_double(fit.mean_r_tilde)
      << ") -> predicted " << (poisson ? "reversible" : "irreversible");
  if (cooling != nullptr) {
    const auto done = std::count_if(cooling->begin(), cooling->end(), [](const CoolingSummaryRow& r) {
      return r.outcome == CoolingOutcome::kDisentangled;
    });
    out << "; cooling disentangled " << done << "/" << cooling->size();
  }
  if (fit.low_statistics) out << " [low statistics]";
  return out.str();
}

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
  cfg.validate();
  io::ensure_writable_directory(cfg.output_dir);
  PipelineResult result;
  std::ostringstream table;
  table << "gate_set,best_fit,ks_poisson,ks_goe,ks_gue,mean_r_tilde,predicted,disentangled,cooled_samples\n";
  for (const std::string& label : cfg.gate_sets) {
    const GateSet set = GateSet::from_label(label);
    run_heating_ensemble(cfg, set);
    const std::vector<CoolingSummaryRow> rows = run_cooling_ensemble(cfg, set);
    const FitReport fit = run_stats(cfg, set);
    result.verdicts.push_back(verdict_line(set, fit, &rows));
    const auto done = std::count_if(rows.begin(), rows.end(), [](const CoolingSummaryRow& r) {
      return r.outcome == CoolingOutcome::kDisentangled;
    });
    table << label << ',' << SurmiseModel{fit.best_fit}.name() << ','
          << io::format_double(fit.ks_poisson) << ',' << io::format_double(fit.ks_goe) << ','
          << io::format_double(fit.ks_gue) << ',' << io::format_double(fit.mean_r_tilde) << ','
          << (fit.best_fit == SurmiseKind::kPoisson ? "reversible" : "irreversible") << ','
          << done << ',' << rows.size() << '\n';
  }
  io::write_file_atomic(cfg.output_dir / kVerdictFile, table.str());
  return result;
}

// ---- replay ----------------------------------------------------------------------

ReplayResult replay_realization(const ExperimentConfig& cfg, const GateSet& set,
                                std::size_t realization) {
  const fs::path dir = set_directory(cfg, set);
  const ordered_json manifest = load_manifest(dir);
  const ExperimentConfig heat_cfg = heating_config_from_manifest(cfg, manifest);
  if (realization >= heat_cfg.n_realizations) {
    throw std::invalid_argument("realization " + std::to_string(realization) + " not in run of " +
                                std::to_string(heat_cfg.n_realizations));
  }

  const HeatedRealization heated = heat_realization(heat_cfg, set, realization);
  ReplayResult result;
  result.realization = realization;
  fs::create_directories(dir / "replay");
  result.circuit_file = dir / "replay" / ("r" + std::to_string(realization) + ".circuit");
  std::ostringstream circuit_text;
  write_circuit(circuit_text, heated.circuit);
  io::write_file_atomic(result.circuit_file, circuit_text.str());

  std::ostringstream mine;
  for (unsigned c : heat_cfg.stats_cuts()) {
    write_spectrum_rows(mine, realization, c,
                        entanglement_spectrum(heated.state, Bipartition(heat_cfg.n_qubits, c)));
  }

  // Rows of this realization in the dump, verbatim.
  std::istringstream dump(io::read_file(dir / kSpectraFile));
  std::string line;
  std::getline(dump, line);
  const std::string prefix = std::to_string(realization) + ",";
  std::ostringstream theirs;
  while (std::getline(dump, line)) {
    if (line.starts_with(prefix)) theirs << line << '\n';
  }
  const std::string dumped = theirs.str();
  result.matches = mine.str() == dumped;
  result.rows_compared = static_cast<std::size_t>(std::count(dumped.begin(), dumped.end(), '\n'));
  return result;
}

}  // namespace entcool::harness
