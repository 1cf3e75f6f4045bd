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

#include "entcool/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "entcool/io.hpp"

namespace entcool {

void CoolingConfig::validate() const {
  if (!(beta >= 0.0)) throw std::invalid_argument("cooling: beta must be >= 0");
  if (max_steps < 1) throw std::invalid_argument("cooling: max_steps must be >= 1");
  if (!(target_entropy >= 0.0)) throw std::invalid_argument("cooling: target_entropy must be >= 0");
  if (!(objective_q >= 0.0)) throw std::invalid_argument("cooling: objective_q must be >= 0");
  tolerance.validate();
}

double accept_probability(double delta_s, double beta) {
  if (delta_s <= 0.0 || beta == 0.0) return 1.0;
  return std::exp(-beta * delta_s);
}

const char* to_string(CoolingOutcome outcome) {
  return outcome == CoolingOutcome::kDisentangled ? "Disentangled" : "StepBudgetExhausted";
}

std::size_t CoolingTrace::accepted_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const CoolingStep& s) { return s.accepted; }));
}

CoolingTrace cool(StateVector& state, const GateSet& set, const CoolingConfig& cfg,
                  RngStream& rng) {
  cfg.validate();
  state.check_norm();
  const bool zero_temperature = std::isinf(cfg.beta);

  CutEntropyProfile profile(state, cfg.objective_q, cfg.tolerance);
  double s_old = profile.mean_sq();

  CoolingTrace trace;
  trace.initial_mean_s0 = profile.mean_s0();
  trace.initial_mean_s1 = profile.mean_s1();

  std::uint64_t step = 0;
  while (s_old > cfg.target_entropy && step < cfg.max_steps) {
    ++step;
    const GateInstance gate = sample_gate(set, state.n_qubits(), rng);
    state.apply(gate);

    // One-qubit gates and CNOTs inside a block leave every cut entropy
    // unchanged, so only crossed cuts are recomputed.
    const CutEntropyProfile before = profile;
    profile.update(state, gate);
    const double s_new = profile.mean_sq();
    const double delta = s_new - s_old;

    bool accept = delta <= 0.0;
    if (!accept) {
      if (!zero_temperature && delta <= kFlatMoveTolerance) {
        accept = true;
      } else {
        accept = rng.uniform() < accept_probability(delta, cfg.beta);
      }
    }

    if (accept) {
      s_old = s_new;
    } else {
      state.apply(inverse_gate(gate));
      profile = before;
    }
    state.check_norm();
    trace.steps.push_back({step, gate, delta, accept, profile.mean_s0(), profile.mean_s1()});
  }

  trace.outcome = s_old <= cfg.target_entropy ? CoolingOutcome::kDisentangled
                                              : CoolingOutcome::kStepBudgetExhausted;
  trace.final_mean_s0 = profile.mean_s0();
  trace.final_mean_s1 = profile.mean_s1();
  trace.final_objective = s_old;
  return trace;
}

void write_trace_csv(std::ostream& out, const CoolingTrace& trace, std::size_t entropy_every) {
  if (entropy_every == 0) entropy_every = 1;
  out << "step,gate,qubits,delta_s,accepted,mean_s0,mean_s1\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const CoolingStep& s = trace.steps[i];
    out << s.step << ',' << s.gate.type.name() << ',' << s.gate.q0;
    if (s.gate.two_qubit()) out << ' ' << s.gate.q1;
    out << ',' << io::format_double(s.delta_s) << ',' << (s.accepted ? 1 : 0) << ',';
    if (s.step % entropy_every == 0 || i + 1 == trace.steps.size()) {
      out << io::format_double(s.mean_s0) << ',' << io::format_double(s.mean_s1);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

}  // namespace entcool
