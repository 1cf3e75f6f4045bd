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

// Spacing-ratio statistics of entanglement spectra.
//
// For a descending spectrum with gaps e_i = l_i - l_{i+1}, the ratios
// r_i = e_{i+1} / e_i need no unfolding. Their law is compared with three
// reference densities on [0, inf):
//
//   Poisson  P(r) = 1 / (1 + r)^2
//   GOE/GUE  P(r) = (r + r^2)^b / (Z (1 + r + r^2)^(1 + 3b/2)),
//            b = 1, Z = 8/27  or  b = 2, Z = (4/81) pi / sqrt(3)
//
// All three satisfy P(1/r) / r^2 = P(r), hence CDF(r) = 1 - CDF(1/r).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "entcool/spectrum.hpp"

namespace entcool {

/// Absolute gap below which a spacing counts as an exact degeneracy.
inline constexpr double kDegenerateSpacing = 1e-14;

struct SpacingRatios {
  std::vector<double> ratios;  // r_i, all finite and > 0
  std::vector<double> folded;  // min(r_i, 1/r_i), same order
  std::size_t retained_levels = 0;
  std::size_t drop_count = 0;  // ratios discarded for a degenerate gap
};

/// Ratios of consecutive gaps among the levels above `tol`. A ratio is
/// dropped (and counted) when either of its gaps is below
/// `degenerate_spacing`. Fewer than three retained levels give no ratios.
SpacingRatios spacing_ratios(const EntanglementSpectrum& spec, RankTolerance tol = {},
                             double degenerate_spacing = kDegenerateSpacing);

/// Ratios pooled over realizations.
struct RatioEnsemble {
  static constexpr int kAllCuts = 0;

  std::vector<double> ratios;
  std::vector<std::size_t> realization;  // source realization of each ratio
  std::size_t n_realizations = 0;
  int source_cut = kAllCuts;
  std::size_t drop_count = 0;

  void add(std::size_t realization_index, const SpacingRatios& r);
  std::size_t size() const { return ratios.size(); }
};

enum class SurmiseKind { kPoisson, kGOE, kGUE };

struct SurmiseModel {
  SurmiseKind kind = SurmiseKind::kPoisson;

  static SurmiseModel poisson() { return {SurmiseKind::kPoisson}; }
  static SurmiseModel goe() { return {SurmiseKind::kGOE}; }
  static SurmiseModel gue() { return {SurmiseKind::kGUE}; }

  /// Dyson index: 0 for Poisson, 1 for GOE, 2 for GUE.
  int beta() const;
  /// Normalization constant Z of the Wigner-Dyson form (1 for Poisson).
  double z() const;
  std::string name() const;  // "Poisson", "GOE", "GUE"
};

/// Throws std::invalid_argument for r < 0.
double surmise_pdf(SurmiseModel model, double r);

/// Poisson: r / (1 + r). GOE/GUE: adaptive Gauss-Kronrod quadrature on
/// [0, min(r, 1/r)] with the r -> 1/r symmetry. Returns 0 for r <= 0.
double surmise_cdf(SurmiseModel model, double r);

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// `samples` and `model`. Empty input gives 0.
double ks_statistic(std::vector<double> samples, SurmiseModel model);

struct HistogramBin {
  double left;
  double right;
  double density;  // count / (N * width)
};

struct Histogram {
  std::vector<HistogramBin> bins;
  double overflow_fraction = 0.0;  // mass above r_max
  std::size_t n_samples = 0;
};

/// Density histogram of the raw ratios on [0, r_max]; the last bin is closed
/// and may be narrower than bin_width. Throws std::invalid_argument for
/// bin_width <= 0 or r_max <= 0. An empty ensemble gives an empty histogram.
Histogram histogram(const RatioEnsemble& ensemble, double bin_width, double r_max);

struct FitReport {
  double ks_poisson = 0.0;
  double ks_goe = 0.0;
  double ks_gue = 0.0;
  double mean_r_tilde = 0.0;
  std::size_t n_ratios = 0;
  std::size_t drop_count = 0;
  SurmiseKind best_fit = SurmiseKind::kPoisson;
  bool low_statistics = false;  // fewer than kMinRatios ratios

  static constexpr std::size_t kMinRatios = 100;
};

/// KS distance to each model, mean folded ratio, and the model with the
/// smallest distance. Throws std::invalid_argument for an empty ensemble.
FitReport classify(const RatioEnsemble& ensemble);

/// Mean of min(r, 1/r) under `model`, by quadrature.
double mean_folded_ratio(SurmiseModel model);

void write_ratios_csv(std::ostream& out, const RatioEnsemble& ensemble);
void write_histogram_csv(std::ostream& out, const Histogram& h);
/// fit.json: ks_poisson, ks_goe, ks_gue, mean_r_tilde, n_ratios, drop_count,
/// best_fit, low_statistics.
std::string fit_report_json(const FitReport& report);

}  // namespace entcool
