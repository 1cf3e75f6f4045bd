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

// Metropolis disentangling search. Each step proposes a random gate from the
// heating set, measures the change of the cut-averaged entropy, and keeps the
// gate with probability min(1, exp(-beta * dS)); rejected gates are undone by
// applying their inverse.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "entcool/circuit.hpp"
#include "entcool/rng.hpp"
#include "entcool/spectrum.hpp"
#include "entcool/state_vector.hpp"

namespace entcool {

struct CoolingConfig {
  double beta = 5.0;                 // 1/bits; +infinity accepts only dS <= 0
  std::size_t max_steps = 200000;    // proposals, accepted or not
  double target_entropy = 1e-8;      // bits; mean objective at or below counts as product
  double objective_q = 1.0;          // Renyi order of the objective
  RankTolerance tolerance{};

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// dS at or below this counts as "no change" and is always accepted (finite
/// beta only).
inline constexpr double kFlatMoveTolerance = 1e-12;

/// 1 for delta_s <= 0, exp(-beta * delta_s) otherwise.
double accept_probability(double delta_s, double beta);

enum class CoolingOutcome { kDisentangled, kStepBudgetExhausted };

const char* to_string(CoolingOutcome outcome);

struct CoolingStep {
  std::uint64_t step;  // 1-based proposal index
  GateInstance gate;
  double delta_s;      // change of the mean objective entropy
  bool accepted;
  double mean_s0;      // after the accept/reject decision
  double mean_s1;
};

struct CoolingTrace {
  std::vector<CoolingStep> steps;
  CoolingOutcome outcome = CoolingOutcome::kStepBudgetExhausted;
  double initial_mean_s0 = 0.0;
  double initial_mean_s1 = 0.0;
  double final_mean_s0 = 0.0;
  double final_mean_s1 = 0.0;
  double final_objective = 0.0;

  std::size_t steps_used() const { return steps.size(); }
  std::size_t accepted_count() const;
};

/// Runs the search on `state` in place. Proposals come from `set` itself.
/// Throws ConfigError from sample_gate for unusable sets.
CoolingTrace cool(StateVector& state, const GateSet& set, const CoolingConfig& cfg,
                  RngStream& rng);

/// CSV with header step,gate,qubits,delta_s,accepted,mean_s0,mean_s1. With
/// `entropy_every` = k > 1 the entropy columns are filled on every k-th row
/// and on the last row only, and left empty elsewhere.
void write_trace_csv(std::ostream& out, const CoolingTrace& trace, std::size_t entropy_every = 1);

}  // namespace entcool
