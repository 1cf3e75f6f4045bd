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

#include "entcool/gates.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entcool {

namespace {

std::string format_angle(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

double GateType::phase_angle() const {
  switch (kind) {
    case GateKind::T: return std::numbers::pi / 4;
    case GateKind::S: return std::numbers::pi / 2;
    case GateKind::Phase: return delta;
    default: return 0.0;
  }
}

Mat2 GateType::matrix() const {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::H: return {Complex(r), Complex(r), Complex(r), Complex(-r)};
    case GateKind::NOT: return {Complex(0), Complex(1), Complex(1), Complex(0)};
    case GateKind::T:
    case GateKind::S:
    case GateKind::Phase:
      return {Complex(1), Complex(0), Complex(0), std::polar(1.0, phase_angle())};
    case GateKind::CNOT: break;
  }
  throw std::invalid_argument("GateType::matrix: CNOT is a two-qubit gate");
}

std::string GateType::name() const {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::S: return "S";
    case GateKind::NOT: return "NOT";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Phase: return "P(" + format_angle(delta) + ")";
  }
  return "?";
}

GateType inverse(const GateType& type) {
  if (type.is_diagonal()) return GateType::phase(-type.phase_angle());
  return type;
}

GateType parse_gate_type(const std::string& token) {
  if (token == "H") return GateType::h();
  if (token == "T") return GateType::t();
  if (token == "S") return GateType::s();
  if (token == "NOT" || token == "X") return GateType::x();
  if (token == "CNOT") return GateType::cnot();
  if (token.size() > 3 && token.starts_with("P(") && token.back() == ')') {
    const char* first = token.data() + 2;
    const char* last = token.data() + token.size() - 1;
    double delta = 0;
    auto res = std::from_chars(first, last, delta);
    if (res.ec == std::errc() && res.ptr == last) return GateType::phase(delta);
  }
  throw std::invalid_argument("unknown gate kind: '" + token + "'");
}

std::string GateInstance::to_string() const {
  std::string out = type.name() + " " + std::to_string(q0);
  if (two_qubit()) out += " " + std::to_string(q1);
  return out;
}

GateInstance inverse_gate(const GateInstance& gate) {
  return {inverse(gate.type), gate.q0, gate.q1};
}

GateInstance parse_gate_instance(const std::string& line) {
  std::istringstream in(line);
  std::string token;
  if (!(in >> token)) throw std::invalid_argument("empty gate line");
  GateInstance g;
  g.type = parse_gate_type(token);
  long long a = -1, b = -1;
  if (!(in >> a) || a < 0) throw std::invalid_argument("bad qubit index in '" + line + "'");
  g.q0 = static_cast<unsigned>(a);
  if (g.two_qubit()) {
    if (!(in >> b) || b < 0) throw std::invalid_argument("CNOT needs two qubits: '" + line + "'");
    g.q1 = static_cast<unsigned>(b);
    if (g.q0 == g.q1) throw std::invalid_argument("CNOT control equals target: '" + line + "'");
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing tokens in '" + line + "'");
  return g;
}

}  // namespace entcool
