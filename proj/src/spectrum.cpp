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

#include "entcool/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "entcool/errors.hpp"
#include "entcool/io.hpp"

// OpenBLAS spawns its own pool by default. Spectra are computed inside
// ensemble workers, so BLAS must stay on the calling thread.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace entcool {

namespace {

void pin_blas_threads() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (openblas_set_num_threads != nullptr) openblas_set_num_threads(1);
  });
}

}  // namespace

Bipartition::Bipartition(unsigned n_qubits, unsigned cut) : n_qubits_(n_qubits), cut_(cut) {
  if (n_qubits < 2 || cut < 1 || cut >= n_qubits) {
    throw std::invalid_argument("Bipartition: cut " + std::to_string(cut) +
                                " not in [1, n-1] for n = " + std::to_string(n_qubits));
  }
}

Bipartition Bipartition::half(unsigned n_qubits) { return {n_qubits, n_qubits / 2}; }

void RankTolerance::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1e-6)) {
    throw std::invalid_argument("rank tolerance must lie in (0, 1e-6)");
  }
}

double EntanglementSpectrum::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::size_t EntanglementSpectrum::rank(RankTolerance tol) const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v > tol.epsilon; }));
}

EntanglementSpectrum entanglement_spectrum(const StateVector& state, const Bipartition& part) {
  if (part.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("entanglement_spectrum: bipartition built for another register");
  }
  pin_blas_threads();
  // psi[b * 2^{n_A} + a] read column-major is the 2^{n_A} x 2^{n_B} matrix
  // M^T, which has the same singular values as M.
  const lapack_int rows = lapack_int{1} << part.n_a();
  const lapack_int cols = lapack_int{1} << part.n_b();
  const lapack_int k = std::min(rows, cols);

  thread_local std::vector<Complex> work;
  const auto amps = state.amplitudes();
  work.assign(amps.begin(), amps.end());

  std::vector<double> sigma(static_cast<std::size_t>(k));
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, work.data(), rows,
                                         sigma.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw InvariantError("zgesdd failed with info = " + std::to_string(info));
  }

  EntanglementSpectrum spec;
  spec.values.resize(sigma.size());
  std::transform(sigma.begin(), sigma.end(), spec.values.begin(),
                 [](double s) { return s * s; });
  std::sort(spec.values.begin(), spec.values.end(), std::greater<>());
  return spec;
}

double renyi_entropy(const EntanglementSpectrum& spec, double q, RankTolerance tol) {
  if (!(q >= 0.0)) throw std::invalid_argument("renyi_entropy: order q must be >= 0");
  const double eps = tol.epsilon;
  if (q == 0.0) {
    const std::size_t r = spec.rank(tol);
    return r == 0 ? 0.0 : std::log2(static_cast<double>(r));
  }
  if (q == 1.0) {
    double h = 0.0;
    for (double l : spec.values) {
      if (l > eps) h -= l * std::log2(l);
    }
    return h;
  }
  if (std::isinf(q)) {
    const double top = spec.values.empty() ? 0.0 : spec.values.front();
    return top > eps ? -std::log2(top) : 0.0;
  }
  double moment = 0.0;
  for (double l : spec.values) {
    if (l > eps) moment += std::pow(l, q);
  }
  if (moment <= 0.0) return 0.0;
  return std::log2(moment) / (1.0 - q);
}

double mean_cut_entropy(const StateVector& state, double q, RankTolerance tol) {
  const unsigned n = state.n_qubits();
  if (n < 2) throw std::invalid_argument("mean_cut_entropy: needs at least two qubits");
  double sum = 0.0;
  for (unsigned c = 1; c < n; ++c) {
    sum += renyi_entropy(entanglement_spectrum(state, Bipartition(n, c)), q, tol);
  }
  return sum / static_cast<double>(n - 1);
}

CutRange cuts_crossed(const GateInstance& gate) {
  if (!gate.two_qubit()) return {};
  const unsigned lo = std::min(gate.q0, gate.q1);
  const unsigned hi = std::max(gate.q0, gate.q1);
  return {lo + 1, hi + 1};
}

CutEntropyProfile::CutEntropyProfile(const StateVector& state, double q, RankTolerance tol)
    : CutEntropyProfile(state,
                        [&] {
                          std::vector<unsigned> all;
                          for (unsigned c = 1; c < state.n_qubits(); ++c) all.push_back(c);
                          return all;
                        }(),
                        q, tol) {}

CutEntropyProfile::CutEntropyProfile(const StateVector& state, std::vector<unsigned> cuts,
                                     double q, RankTolerance tol)
    : q_(q), tol_(tol) {
  if (!(q >= 0.0)) throw std::invalid_argument("CutEntropyProfile: order q must be >= 0");
  tol_.validate();
  entries_.reserve(cuts.size());
  for (unsigned c : cuts) {
    Bipartition(state.n_qubits(), c);  // validates
    entries_.push_back({c, 0.0, 0.0, 0.0});
  }
  refresh(state);
}

void CutEntropyProfile::compute(const StateVector& state, Entry& e) const {
  const EntanglementSpectrum spec = entanglement_spectrum(state, Bipartition(state.n_qubits(), e.cut));
  e.s0 = renyi_entropy(spec, 0.0, tol_);
  e.s1 = renyi_entropy(spec, 1.0, tol_);
  e.sq = q_ == 0.0 ? e.s0 : q_ == 1.0 ? e.s1 : renyi_entropy(spec, q_, tol_);
}

void CutEntropyProfile::update(const StateVector& state, const GateInstance& applied) {
  const CutRange range = cuts_crossed(applied);
  if (range.empty()) return;
  for (Entry& e : entries_) {
    if (range.contains(e.cut)) compute(state, e);
  }
}

void CutEntropyProfile::refresh(const StateVector& state) {
  for (Entry& e : entries_) compute(state, e);
}

namespace {

template <typename F>
double mean_of(const std::vector<CutEntropyProfile::Entry>& entries, F field) {
  if (entries.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : entries) sum += field(e);
  return sum / static_cast<double>(entries.size());
}

}  // namespace

double CutEntropyProfile::mean_s0() const {
  return mean_of(entries_, [](const Entry& e) { return e.s0; });
}

double CutEntropyProfile::mean_s1() const {
  return mean_of(entries_, [](const Entry& e) { return e.s1; });
}

double CutEntropyProfile::mean_sq() const {
  return mean_of(entries_, [](const Entry& e) { return e.sq; });
}

void write_spectra_header(std::ostream& out) { out << "realization,cut,level_index,lambda\n"; }

void write_spectrum_rows(std::ostream& out, std::size_t realization, unsigned cut,
                         const EntanglementSpectrum& spec) {
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    out << realization << ',' << cut << ',' << i << ',' << io::format_double(spec.values[i]) << '\n';
  }
}

std::vector<SpectrumRecord> read_spectra_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "realization,cut,level_index,lambda") {
    throw std::invalid_argument("spectra file: expected header 'realization,cut,level_index,lambda'");
  }
  std::vector<SpectrumRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string_view rest(line);
    std::string_view fields[4];
    for (int f = 0; f < 4; ++f) {
      const auto comma = rest.find(',');
      if ((f < 3) == (comma == std::string_view::npos)) {
        throw std::invalid_argument("spectra file: line " + std::to_string(line_no) +
                                    " does not have 4 fields");
      }
      fields[f] = rest.substr(0, comma);
      rest = f < 3 ? rest.substr(comma + 1) : std::string_view{};
    }
    std::size_t realization = 0, level = 0;
    unsigned cut = 0;
    auto parse_uint = [&](std::string_view tok, auto& out) {
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("spectra file: bad integer on line " + std::to_string(line_no));
      }
    };
    parse_uint(fields[0], realization);
    parse_uint(fields[1], cut);
    parse_uint(fields[2], level);
    const double lambda = io::parse_double(fields[3]);

    if (records.empty() || records.back().realization != realization ||
        records.back().cut != cut) {
      records.push_back({realization, cut, {}});
    }
    auto& values = records.back().spectrum.values;
    if (level != values.size()) {
      throw std::invalid_argument("spectra file: level_index out of sequence on line " +
                                  std::to_string(line_no));
    }
    values.push_back(lambda);
  }
  return records;
}

}  // namespace entcool
