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

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "entcool/gates.hpp"
#include "entcool/state_vector.hpp"

namespace entcool {

/// Line cut of an n-qubit register: A holds qubits 0..cut-1 (the low bits of
/// the basis index), B holds qubits cut..n-1.
class Bipartition {
 public:
  /// Throws std::invalid_argument unless 1 <= cut <= n_qubits - 1.
  Bipartition(unsigned n_qubits, unsigned cut);
  /// cut = n/2 (rounded down).
  static Bipartition half(unsigned n_qubits);

  unsigned n_qubits() const { return n_qubits_; }
  unsigned cut() const { return cut_; }
  unsigned n_a() const { return cut_; }
  unsigned n_b() const { return n_qubits_ - cut_; }

 private:
  unsigned n_qubits_;
  unsigned cut_;
};

/// Absolute threshold on eigenvalues below which a level counts as zero.
struct RankTolerance {
  static constexpr double kDefault = 1e-12;
  double epsilon = kDefault;

  /// Throws std::invalid_argument unless 0 < epsilon < 1e-6.
  void validate() const;
};

/// Eigenvalues of a reduced density matrix, nonnegative and descending.
struct EntanglementSpectrum {
  std::vector<double> values;

  double sum() const;
  /// Number of levels above the tolerance.
  std::size_t rank(RankTolerance tol = {}) const;
};

/// Spectrum of rho_A = tr_B |psi><psi| as the squared singular values of the
/// 2^{n_B} x 2^{n_A} amplitude matrix M[b][a] = psi[b * 2^{n_A} + a]. Returns
/// min(2^{n_A}, 2^{n_B}) values.
EntanglementSpectrum entanglement_spectrum(const StateVector& state, const Bipartition& part);

/// Renyi entropy in bits. q = 0 gives log2(rank), q = 1 the von Neumann
/// entropy; levels at or below tol are skipped. Throws std::invalid_argument
/// for q < 0.
double renyi_entropy(const EntanglementSpectrum& spec, double q, RankTolerance tol = {});

/// Mean of renyi_entropy over the n-1 line cuts. Throws std::invalid_argument
/// for a single qubit.
double mean_cut_entropy(const StateVector& state, double q, RankTolerance tol = {});

/// Cuts whose entropy a gate can change: a CNOT with operands lo < hi is a
/// local unitary for every cut outside (lo, hi], and one-qubit gates are
/// local for every cut. Returns the half-open range [first, last) of cut
/// indices, empty for one-qubit gates.
struct CutRange {
  unsigned first = 0;
  unsigned last = 0;
  bool contains(unsigned cut) const { return cut >= first && cut < last; }
  bool empty() const { return first >= last; }
};
CutRange cuts_crossed(const GateInstance& gate);

/// S_0, S_1 and an extra Renyi order S_q for a fixed list of line cuts,
/// updated incrementally: after a gate only the cuts it crosses are
/// recomputed.
class CutEntropyProfile {
 public:
  struct Entry {
    unsigned cut;
    double s0;
    double s1;
    double sq;
  };

  /// Tracks every cut 1..n-1.
  CutEntropyProfile(const StateVector& state, double q, RankTolerance tol = {});
  /// Tracks the listed cuts only.
  CutEntropyProfile(const StateVector& state, std::vector<unsigned> cuts, double q,
                    RankTolerance tol = {});

  /// Refreshes the cuts crossed by `applied`, which must already have been
  /// applied to `state`.
  void update(const StateVector& state, const GateInstance& applied);
  /// Recomputes every tracked cut.
  void refresh(const StateVector& state);

  const std::vector<Entry>& entries() const { return entries_; }
  double q() const { return q_; }
  double mean_s0() const;
  double mean_s1() const;
  /// Mean of S_q over the tracked cuts.
  double mean_sq() const;

 private:
  void compute(const StateVector& state, Entry& e) const;

  std::vector<Entry> entries_;
  double q_;
  RankTolerance tol_;
};

/// One spectrum of the CSV dump.
struct SpectrumRecord {
  std::size_t realization = 0;
  unsigned cut = 0;
  EntanglementSpectrum spectrum;
};

/// Spectrum dump: header "realization,cut,level_index,lambda", one row per
/// level, lambda with 17 significant digits (exact double round trip).
void write_spectra_header(std::ostream& out);
void write_spectrum_rows(std::ostream& out, std::size_t realization, unsigned cut,
                         const EntanglementSpectrum& spec);

/// Groups consecutive rows with equal (realization, cut). Throws
/// std::invalid_argument on a bad header, malformed rows, or level indices
/// that do not run 0, 1, 2, ... within a group.
std::vector<SpectrumRecord> read_spectra_csv(std::istream& in);

}  // namespace entcool
