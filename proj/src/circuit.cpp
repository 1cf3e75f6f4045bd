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

#include "entcool/circuit.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "entcool/errors.hpp"

namespace entcool {

GateSet GateSet::cnot_h_t() {
  return {Name::kCnotHT, {GateType::cnot(), GateType::h(), GateType::t()}};
}

GateSet GateSet::cnot_h_s() {
  return {Name::kCnotHS, {GateType::cnot(), GateType::h(), GateType::s()}};
}

GateSet GateSet::cnot_h_not() {
  return {Name::kCnotHNot, {GateType::cnot(), GateType::h(), GateType::x()}};
}

GateSet GateSet::custom(std::vector<GateType> members) {
  if (members.empty()) throw std::invalid_argument("GateSet: empty member list");
  return {Name::kCustom, std::move(members)};
}

GateSet GateSet::from_label(const std::string& label) {
  if (label == "cnot-h-t") return cnot_h_t();
  if (label == "cnot-h-s") return cnot_h_s();
  if (label == "cnot-h-not") return cnot_h_not();
  throw std::invalid_argument("unknown gate set '" + label +
                              "' (expected cnot-h-t, cnot-h-s or cnot-h-not)");
}

std::string GateSet::label() const {
  switch (name) {
    case Name::kCnotHT: return "cnot-h-t";
    case Name::kCnotHS: return "cnot-h-s";
    case Name::kCnotHNot: return "cnot-h-not";
    case Name::kCustom: break;
  }
  return "custom";
}

bool GateSet::has_two_qubit_kind() const {
  return std::any_of(members.begin(), members.end(),
                     [](const GateType& g) { return g.arity() == 2; });
}

std::vector<GateSet> standard_gate_sets() {
  return {GateSet::cnot_h_not(), GateSet::cnot_h_s(), GateSet::cnot_h_t()};
}

void Circuit::validate() const {
  for (const GateInstance& g : gates) {
    if (g.q0 >= n_qubits || (g.two_qubit() && (g.q1 >= n_qubits || g.q1 == g.q0))) {
      throw std::invalid_argument("circuit gate '" + g.to_string() + "' invalid on " +
                                  std::to_string(n_qubits) + " qubits");
    }
  }
}

GateInstance sample_gate(const GateSet& set, unsigned n_qubits, RngStream& rng) {
  if (set.members.empty()) throw ConfigError("sample_gate: empty gate set");
  if (n_qubits < 1) throw ConfigError("sample_gate: no qubits");
  const auto first = static_cast<unsigned>(rng.below(n_qubits));
  const GateType& type = set.members[rng.below(set.members.size())];
  if (type.arity() == 1) return GateInstance::one(type, first);
  if (n_qubits < 2) {
    throw ConfigError("sample_gate: two-qubit gate drawn on a single-qubit register");
  }
  auto second = static_cast<unsigned>(rng.below(n_qubits - 1));
  if (second >= first) ++second;
  return GateInstance::cnot(first, second);
}

Circuit heat(StateVector& state, const GateSet& set, std::size_t n_gates, RngStream& rng,
             const HeatObserver& observer) {
  Circuit circuit{state.n_qubits(), {}};
  circuit.gates.reserve(n_gates);
  for (std::size_t i = 0; i < n_gates; ++i) {
    const GateInstance g = sample_gate(set, state.n_qubits(), rng);
    state.apply(g);
    state.check_norm();
    circuit.gates.push_back(g);
    if (observer) observer(i + 1, g, state);
  }
  return circuit;
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
  if (circuit.n_qubits != state.n_qubits()) {
    throw std::invalid_argument("apply_circuit: circuit and state sizes differ");
  }
  for (const GateInstance& g : circuit.gates) state.apply(g);
}

Circuit inverse_circuit(const Circuit& c) {
  Circuit out{c.n_qubits, {}};
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    out.gates.push_back(inverse_gate(*it));
  }
  return out;
}

void write_circuit(std::ostream& out, const Circuit& c) {
  out << "n_qubits=" << c.n_qubits << '\n';
  for (const GateInstance& g : c.gates) out << g.to_string() << '\n';
}

Circuit read_circuit(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("n_qubits=")) {
    throw std::invalid_argument("circuit file: missing 'n_qubits=<n>' header");
  }
  Circuit c;
  try {
    const long n = std::stol(line.substr(9));
    if (n < 1 || n > static_cast<long>(StateVector::kMaxQubits)) throw std::out_of_range("n");
    c.n_qubits = static_cast<unsigned>(n);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("circuit file: bad header '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    c.gates.push_back(parse_gate_instance(line));
  }
  c.validate();
  return c;
}

}  // namespace entcool
