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

// In-place gate kernels over a dense amplitude array.
//
// Qubit j is bit j of the basis index. A one-qubit gate on j touches the
// pairs (k, k | 2^j) with bit j of k clear; CNOT(c, t) swaps the pairs with
// bit c set. Every pair is written by exactly one loop iteration, so the
// OpenMP variants produce results bitwise identical to the serial reference.

#include <cstddef>
#include <span>

#include "entcool/gates.hpp"

namespace entcool::kernels {

namespace serial {

void apply_matrix(std::span<Complex> amps, unsigned qubit, const Mat2& m);
void apply_phase(std::span<Complex> amps, unsigned qubit, Complex phase);
void apply_not(std::span<Complex> amps, unsigned qubit);
void apply_cnot(std::span<Complex> amps, unsigned control, unsigned target);

}  // namespace serial

namespace parallel {

void apply_matrix(std::span<Complex> amps, unsigned qubit, const Mat2& m);
void apply_phase(std::span<Complex> amps, unsigned qubit, Complex phase);
void apply_not(std::span<Complex> amps, unsigned qubit);
void apply_cnot(std::span<Complex> amps, unsigned control, unsigned target);

}  // namespace parallel

/// Amplitude count from which the parallel kernels fork threads. Below it the
/// loop runs on the calling thread (ensemble workers are already parallel).
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 16;

}  // namespace entcool::kernels
