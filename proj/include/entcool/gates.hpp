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

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

namespace entcool {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

enum class GateKind : std::uint8_t { H, T, S, NOT, Phase, CNOT };

/// A gate kind together with its parameter. T and S are kept as their own
/// kinds for readable circuit dumps but act exactly like Phase(pi/4) and
/// Phase(pi/2).
struct GateType {
  GateKind kind = GateKind::H;
  double delta = 0.0;  // radians; meaningful for GateKind::Phase only

  static GateType h() { return {GateKind::H, 0.0}; }
  static GateType t() { return {GateKind::T, 0.0}; }
  static GateType s() { return {GateKind::S, 0.0}; }
  static GateType x() { return {GateKind::NOT, 0.0}; }
  static GateType cnot() { return {GateKind::CNOT, 0.0}; }
  static GateType phase(double delta) { return {GateKind::Phase, delta}; }

  int arity() const { return kind == GateKind::CNOT ? 2 : 1; }

  /// Phase angle for the diagonal kinds (T, S, Phase); 0 otherwise.
  double phase_angle() const;
  bool is_diagonal() const {
    return kind == GateKind::T || kind == GateKind::S || kind == GateKind::Phase;
  }

  /// Unitary of a one-qubit kind. Throws std::invalid_argument for CNOT.
  Mat2 matrix() const;

  /// Token used in circuit files: "H", "T", "S", "NOT", "CNOT", "P(<delta>)".
  std::string name() const;

  friend bool operator==(const GateType&, const GateType&) = default;
};

/// The inverse gate kind: H, NOT and CNOT are involutions, and a phase gate
/// P(d) maps to P(-d).
GateType inverse(const GateType& type);

/// Parses the token produced by GateType::name().
GateType parse_gate_type(const std::string& token);

/// A gate bound to qubits. For one-qubit kinds `q0` is the qubit and `q1` is
/// unused; for CNOT `q0` is the control and `q1` the target.
struct GateInstance {
  GateType type;
  unsigned q0 = 0;
  unsigned q1 = 0;

  static GateInstance one(GateType type, unsigned qubit) {
    return {type, qubit, 0};
  }
  static GateInstance cnot(unsigned control, unsigned target) {
    return {GateType::cnot(), control, target};
  }

  bool two_qubit() const { return type.arity() == 2; }

  /// "KIND q0 [q1]", e.g. "CNOT 3 7" or "T 5".
  std::string to_string() const;

  friend bool operator==(const GateInstance& a, const GateInstance& b) {
    return a.type == b.type && a.q0 == b.q0 && (!a.two_qubit() || a.q1 == b.q1);
  }
};

GateInstance inverse_gate(const GateInstance& gate);

/// Parses a line produced by GateInstance::to_string().
GateInstance parse_gate_instance(const std::string& line);

}  // namespace entcool
