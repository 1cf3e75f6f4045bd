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

#include "entcool/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entcool/errors.hpp"
#include "entcool/kernels.hpp"

namespace entcool {

namespace {

void check_qubit(unsigned qubit, unsigned n, const char* what) {
  if (qubit >= n) {
    throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n) + " qubits");
  }
}

}  // namespace

StateVector::StateVector(unsigned n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: n_qubits must be in [1, 24], got " +
                                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex(0.0));
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size) || size > (std::size_t{1} << kMaxQubits)) {
    throw std::invalid_argument("StateVector: amplitude count must be 2^n with 1 <= n <= 24");
  }
  StateVector s;
  s.n_qubits_ = static_cast<unsigned>(std::countr_zero(size));
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return sum;
}

void StateVector::check_norm() const {
  const double dev = std::abs(norm_squared() - 1.0);
  if (!(dev <= kNormTolerance)) {
    throw InvariantError("state norm drifted by " + std::to_string(dev));
  }
}

void StateVector::apply_1q(const GateType& gate, unsigned qubit) {
  check_qubit(qubit, n_qubits_, "apply_1q");
  switch (gate.kind) {
    case GateKind::CNOT:
      throw std::invalid_argument("apply_1q: CNOT is a two-qubit gate");
    case GateKind::NOT:
      kernels::parallel::apply_not(amps_, qubit);
      return;
    case GateKind::T:
    case GateKind::S:
    case GateKind::Phase:
      kernels::parallel::apply_phase(amps_, qubit, std::polar(1.0, gate.phase_angle()));
      return;
    case GateKind::H:
      kernels::parallel::apply_matrix(amps_, qubit, gate.matrix());
      return;
  }
}

void StateVector::apply_cnot(unsigned control, unsigned target) {
  check_qubit(control, n_qubits_, "apply_cnot");
  check_qubit(target, n_qubits_, "apply_cnot");
  if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
  kernels::parallel::apply_cnot(amps_, control, target);
}

void StateVector::apply(const GateInstance& gate) {
  if (gate.two_qubit()) {
    apply_cnot(gate.q0, gate.q1);
  } else {
    apply_1q(gate.type, gate.q0);
  }
}

StateVector new_product_state(std::span<const double> thetas) {
  if (thetas.empty()) throw std::invalid_argument("new_product_state: no angles given");
  if (thetas.size() > StateVector::kMaxQubits) {
    throw std::invalid_argument("new_product_state: too many qubits");
  }
  const auto n = static_cast<unsigned>(thetas.size());
  std::vector<Complex> amps(std::size_t{1} << n);
  // Build the tensor product one qubit at a time: after qubit j the first
  // 2^{j+1} entries hold the product over qubits 0..j.
  amps[0] = 1.0;
  std::size_t filled = 1;
  for (unsigned j = 0; j < n; ++j) {
    const double c = std::cos(thetas[j]);
    const double s = std::sin(thetas[j]);
    for (std::size_t k = 0; k < filled; ++k) {
      amps[k + filled] = amps[k] * s;
      amps[k] *= c;
    }
    filled *= 2;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

double max_abs_difference(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_difference: dimension mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace entcool
