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

#include "entcool/kernels.hpp"

#include <cstdint>
#include <utility>

namespace entcool::kernels {

namespace {

using Index = std::int64_t;

// Basis index of the p-th pair with a zero inserted at bit `bit`.
inline Index insert_zero(Index p, unsigned bit) {
  const Index low = p & ((Index{1} << bit) - 1);
  return ((p >> bit) << (bit + 1)) | low;
}

inline void matrix_pair(Complex* a, Index k0, Index k1, const Mat2& m) {
  const Complex x = a[k0];
  const Complex y = a[k1];
  a[k0] = m[0] * x + m[1] * y;
  a[k1] = m[2] * x + m[3] * y;
}

}  // namespace

namespace serial {

void apply_matrix(std::span<Complex> amps, unsigned qubit, const Mat2& m) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << qubit;
  Complex* a = amps.data();
  for (Index p = 0; p < half; ++p) {
    const Index k0 = insert_zero(p, qubit);
    matrix_pair(a, k0, k0 | stride, m);
  }
}

void apply_phase(std::span<Complex> amps, unsigned qubit, Complex phase) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << qubit;
  Complex* a = amps.data();
  for (Index p = 0; p < half; ++p) a[insert_zero(p, qubit) | stride] *= phase;
}

void apply_not(std::span<Complex> amps, unsigned qubit) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << qubit;
  Complex* a = amps.data();
  for (Index p = 0; p < half; ++p) {
    const Index k0 = insert_zero(p, qubit);
    std::swap(a[k0], a[k0 | stride]);
  }
}

void apply_cnot(std::span<Complex> amps, unsigned control, unsigned target) {
  const Index quarter = static_cast<Index>(amps.size() / 4);
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const Index cbit = Index{1} << control;
  const Index tbit = Index{1} << target;
  Complex* a = amps.data();
  for (Index p = 0; p < quarter; ++p) {
    const Index k = insert_zero(insert_zero(p, lo), hi) | cbit;
    std::swap(a[k], a[k | tbit]);
  }
}

}  // namespace serial

namespace parallel {

void apply_matrix(std::span<Complex> amps, unsigned qubit, const Mat2& m) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << qubit;
  Complex* a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index p = 0; p < half; ++p) {
    const Index k0 = insert_zero(p, qubit);
    matrix_pair(a, k0, k0 | stride, m);
  }
}

void apply_phase(std::span<Complex> amps, unsigned qubit, Complex phase) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << qubit;
  Complex* a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index p = 0; p < half; ++p) a[insert_zero(p, qubit) | stride] *= phase;
}

void apply_not(std::span<Complex> amps, unsigned qubit) {
  const Index half = static_cast<Index>(amps.size() / 2);
  const Index stride = Index{1} << qubit;
  Complex* a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index p = 0; p < half; ++p) {
    const Index k0 = insert_zero(p, qubit);
    std::swap(a[k0], a[k0 | stride]);
  }
}

void apply_cnot(std::span<Complex> amps, unsigned control, unsigned target) {
  const Index quarter = static_cast<Index>(amps.size() / 4);
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const Index cbit = Index{1} << control;
  const Index tbit = Index{1} << target;
  Complex* a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index p = 0; p < quarter; ++p) {
    const Index k = insert_zero(insert_zero(p, lo), hi) | cbit;
    std::swap(a[k], a[k | tbit]);
  }
}

}  // namespace parallel

}  // namespace entcool::kernels
