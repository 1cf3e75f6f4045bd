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

#include "entcool/spacings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "entcool/io.hpp"

namespace entcool {

namespace {

constexpr unsigned kQuadratureDepth = 15;
constexpr double kQuadratureTolerance = 1e-12;

template <typename F>
double integrate(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kQuadratureDepth, kQuadratureTolerance);
}

}  // namespace

SpacingRatios spacing_ratios(const EntanglementSpectrum& spec, RankTolerance tol,
                             double degenerate_spacing) {
  SpacingRatios out;
  std::vector<double> levels;
  for (double l : spec.values) {
    if (l > tol.epsilon) levels.push_back(l);
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  out.retained_levels = levels.size();
  if (levels.size() < 3) return out;

  for (std::size_t i = 0; i + 2 < levels.size(); ++i) {
    const double gap = levels[i] - levels[i + 1];
    const double next_gap = levels[i + 1] - levels[i + 2];
    if (gap < degenerate_spacing || next_gap < degenerate_spacing) {
      ++out.drop_count;
      continue;
    }
    const double r = next_gap / gap;
    out.ratios.push_back(r);
    out.folded.push_back(std::min(r, 1.0 / r));
  }
  return out;
}

void RatioEnsemble::add(std::size_t realization_index, const SpacingRatios& r) {
  ratios.insert(ratios.end(), r.ratios.begin(), r.ratios.end());
  realization.insert(realization.end(), r.ratios.size(), realization_index);
  drop_count += r.drop_count;
}

int SurmiseModel::beta() const {
  switch (kind) {
    case SurmiseKind::kPoisson: return 0;
    case SurmiseKind::kGOE: return 1;
    case SurmiseKind::kGUE: return 2;
  }
  return 0;
}

double SurmiseModel::z() const {
  switch (kind) {
    case SurmiseKind::kPoisson: return 1.0;
    case SurmiseKind::kGOE: return 8.0 / 27.0;
    case SurmiseKind::kGUE: return 4.0 / 81.0 * std::numbers::pi / std::numbers::sqrt3;
  }
  return 1.0;
}

std::string SurmiseModel::name() const {
  switch (kind) {
    case SurmiseKind::kPoisson: return "Poisson";
    case SurmiseKind::kGOE: return "GOE";
    case SurmiseKind::kGUE: return "GUE";
  }
  return "?";
}

double surmise_pdf(SurmiseModel model, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("surmise_pdf: r must be >= 0");
  if (model.kind == SurmiseKind::kPoisson) return 1.0 / ((1.0 + r) * (1.0 + r));
  if (std::isinf(r)) return 0.0;
  const double b = model.beta();
  return std::pow(r + r * r, b) / (model.z() * std::pow(1.0 + r + r * r, 1.0 + 1.5 * b));
}

double surmise_cdf(SurmiseModel model, double r) {
  if (!(r > 0.0)) return 0.0;
  if (std::isinf(r)) return 1.0;
  if (model.kind == SurmiseKind::kPoisson) return r / (1.0 + r);
  if (r > 1.0) return 1.0 - surmise_cdf(model, 1.0 / r);
  return integrate([model](double x) { return surmise_pdf(model, x); }, 0.0, r);
}

double ks_statistic(std::vector<double> samples, SurmiseModel model) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = surmise_cdf(model, samples[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, f - below, above - f});
  }
  return std::clamp(d, 0.0, 1.0);
}

Histogram histogram(const RatioEnsemble& ensemble, double bin_width, double r_max) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram: bin_width must be > 0");
  if (!(r_max > 0.0)) throw std::invalid_argument("histogram: r_max must be > 0");
  Histogram h;
  if (ensemble.ratios.empty()) return h;

  const auto n_bins = static_cast<std::size_t>(std::ceil(r_max / bin_width - 1e-12));
  std::vector<std::size_t> counts(n_bins, 0);
  std::size_t overflow = 0;
  for (double r : ensemble.ratios) {
    if (r > r_max) {
      ++overflow;
      continue;
    }
    auto bin = static_cast<std::size_t>(r / bin_width);
    counts[std::min(bin, n_bins - 1)]++;
  }

  const double n = static_cast<double>(ensemble.ratios.size());
  h.n_samples = ensemble.ratios.size();
  h.overflow_fraction = static_cast<double>(overflow) / n;
  h.bins.reserve(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double left = static_cast<double>(i) * bin_width;
    const double right = std::min(static_cast<double>(i + 1) * bin_width, r_max);
    h.bins.push_back({left, right, static_cast<double>(counts[i]) / (n * (right - left))});
  }
  return h;
}

FitReport classify(const RatioEnsemble& ensemble) {
  if (ensemble.ratios.empty()) throw std::invalid_argument("classify: empty ratio ensemble");
  FitReport rep;
  rep.n_ratios = ensemble.ratios.size();
  rep.drop_count = ensemble.drop_count;
  rep.low_statistics = rep.n_ratios < FitReport::kMinRatios;

  // Sort once; ks_statistic re-sorts already sorted input cheaply.
  std::vector<double> sorted = ensemble.ratios;
  std::sort(sorted.begin(), sorted.end());
  rep.ks_poisson = ks_statistic(sorted, SurmiseModel::poisson());
  rep.ks_goe = ks_statistic(sorted, SurmiseModel::goe());
  rep.ks_gue = ks_statistic(sorted, SurmiseModel::gue());

  double folded_sum = 0.0;
  for (double r : ensemble.ratios) folded_sum += std::min(r, 1.0 / r);
  rep.mean_r_tilde = folded_sum / static_cast<double>(rep.n_ratios);

  rep.best_fit = SurmiseKind::kPoisson;
  double best = rep.ks_poisson;
  if (rep.ks_goe < best) {
    best = rep.ks_goe;
    rep.best_fit = SurmiseKind::kGOE;
  }
  if (rep.ks_gue < best) rep.best_fit = SurmiseKind::kGUE;
  return rep;
}

double mean_folded_ratio(SurmiseModel model) {
  // <min(r, 1/r)> = 2 * int_0^1 r P(r) dr by the r -> 1/r symmetry.
  return 2.0 * integrate([model](double r) { return r * surmise_pdf(model, r); }, 0.0, 1.0);
}

void write_ratios_csv(std::ostream& out, const RatioEnsemble& ensemble) {
  out << "realization,ratio\n";
  for (std::size_t i = 0; i < ensemble.ratios.size(); ++i) {
    out << ensemble.realization[i] << ',' << io::format_double(ensemble.ratios[i]) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_left,bin_right,density\n";
  for (const HistogramBin& b : h.bins) {
    out << io::format_double(b.left) << ',' << io::format_double(b.right) << ','
        << io::format_double(b.density) << '\n';
  }
}

std::string fit_report_json(const FitReport& report) {
  nlohmann::ordered_json j;
  j["ks_poisson"] = report.ks_poisson;
  j["ks_goe"] = report.ks_goe;
  j["ks_gue"] = report.ks_gue;
  j["mean_r_tilde"] = report.mean_r_tilde;
  j["n_ratios"] = report.n_ratios;
  j["drop_count"] = report.drop_count;
  j["best_fit"] = SurmiseModel{report.best_fit}.name();
  j["low_statistics"] = report.low_statistics;
  return j.dump(2) + "\n";
}

}  // namespace entcool
