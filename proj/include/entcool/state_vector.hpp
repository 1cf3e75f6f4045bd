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
#include <span>
#include <vector>

#include "entcool/gates.hpp"

namespace entcool {

/// Dense pure state of n qubits. Amplitude k belongs to the basis state
/// |x_{n-1} ... x_0> where x_j is bit j of k.
///
/// Gates are applied in place and the norm is never rescaled; use
/// check_norm() to assert it.
class StateVector {
 public:
  static constexpr unsigned kMaxQubits = 24;
  static constexpr double kNormTolerance = 1e-10;

  /// |0...0> on n qubits.
  explicit StateVector(unsigned n_qubits);

  /// Takes ownership of raw amplitudes. Size must be a power of two in
  /// [2, 2^kMaxQubits]; normalization is not checked (see check_norm).
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t k) const { return amps_[k]; }

  double norm_squared() const;

  /// Throws InvariantError if |sum |amp|^2 - 1| exceeds kNormTolerance.
  void check_norm() const;

  /// Throws std::invalid_argument for a CNOT kind or qubit >= n.
  void apply_1q(const GateType& gate, unsigned qubit);
  /// Throws std::invalid_argument if control == target or either is >= n.
  void apply_cnot(unsigned control, unsigned target);
  void apply(const GateInstance& gate);

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector() = default;

  unsigned n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// cos(theta_j)|0> + sin(theta_j)|1> on every qubit j (thetas[j] -> qubit j).
/// Throws std::invalid_argument when thetas is empty or too long.
StateVector new_product_state(std::span<const double> thetas);

/// max_k |a_k - b_k|; the states must have equal dimension.
double max_abs_difference(const StateVector& a, const StateVector& b);

}  // namespace entcool
