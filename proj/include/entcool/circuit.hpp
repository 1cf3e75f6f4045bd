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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "entcool/gates.hpp"
#include "entcool/rng.hpp"
#include "entcool/state_vector.hpp"

namespace entcool {

/// The pool of gate kinds a stochastic circuit draws from.
struct GateSet {
  enum class Name { kCnotHT, kCnotHS, kCnotHNot, kCustom };

  Name name = Name::kCustom;
  std::vector<GateType> members;

  static GateSet cnot_h_t();    // universal
  static GateSet cnot_h_s();    // Clifford
  static GateSet cnot_h_not();  // real Clifford subgroup
  /// Throws std::invalid_argument if `members` is empty.
  static GateSet custom(std::vector<GateType> members);

  /// Parses "cnot-h-t", "cnot-h-s" or "cnot-h-not".
  static GateSet from_label(const std::string& label);

  /// "cnot-h-t", "cnot-h-s", "cnot-h-not", or "custom".
  std::string label() const;
  bool has_two_qubit_kind() const;
};

/// All named sets in the order they appear in reports.
std::vector<GateSet> standard_gate_sets();

/// An ordered gate list on a fixed register. Each gate counts as one step of
/// circuit time regardless of its arity.
struct Circuit {
  unsigned n_qubits = 0;
  std::vector<GateInstance> gates;

  std::size_t size() const { return gates.size(); }
  /// Throws std::invalid_argument on out-of-range or coinciding operands.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Draws one gate: a uniform qubit first, then a uniform kind from `set`; for
/// a two-qubit kind the first qubit is the control and the target is uniform
/// over the other n-1 qubits. Throws ConfigError if a two-qubit kind is drawn
/// with n_qubits < 2.
GateInstance sample_gate(const GateSet& set, unsigned n_qubits, RngStream& rng);

/// Called after each heating gate with the 1-based gate count.
using HeatObserver =
    std::function<void(std::size_t gate_number, const GateInstance& gate, const StateVector& state)>;

/// Applies `n_gates` gates drawn by sample_gate to `state` and returns them.
/// The state norm is checked after every gate.
Circuit heat(StateVector& state, const GateSet& set, std::size_t n_gates, RngStream& rng,
             const HeatObserver& observer = {});

void apply_circuit(StateVector& state, const Circuit& circuit);

/// The gates of `c` reversed and individually inverted.
Circuit inverse_circuit(const Circuit& c);

/// Text format: a header line "n_qubits=<n>" followed by one gate per line
/// ("CNOT 3 7", "T 5", "P(-0.78539816339744828) 2").
void write_circuit(std::ostream& out, const Circuit& c);
/// Throws std::invalid_argument on malformed input.
Circuit read_circuit(std::istream& in);

}  // namespace entcool
