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

// Serial vs OpenMP gate kernels, plus the spectrum and cooling hot paths.

#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>
#include <vector>

#include "entcool/circuit.hpp"
#include "entcool/cooling.hpp"
#include "entcool/kernels.hpp"
#include "entcool/rng.hpp"
#include "entcool/spectrum.hpp"

namespace {

using entcool::Complex;

std::vector<Complex> uniform_state(unsigned n) {
  const std::size_t dim = std::size_t{1} << n;
  return std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

template <void (*Kernel)(std::span<Complex>, unsigned, const entcool::Mat2&)>
void BM_Hadamard(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  auto amps = uniform_state(n);
  const entcool::Mat2 h = entcool::GateType::h().matrix();
  unsigned q = 0;
  for (auto _ : state) {
    Kernel(amps, q, h);
    q = (q + 1) % n;
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(amps.size() * sizeof(Complex)));
}

template <void (*Kernel)(std::span<Complex>, unsigned, unsigned)>
void BM_Cnot(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  auto amps = uniform_state(n);
  unsigned c = 0;
  for (auto _ : state) {
    Kernel(amps, c, (c + n / 2) % n);
    c = (c + 1) % n;
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(amps.size() * sizeof(Complex)));
}

template <void (*Kernel)(std::span<Complex>, unsigned, Complex)>
void BM_Phase(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  auto amps = uniform_state(n);
  const Complex t = std::polar(1.0, std::numbers::pi / 4);
  unsigned q = 0;
  for (auto _ : state) {
    Kernel(amps, q, t);
    q = (q + 1) % n;
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(amps.size() * sizeof(Complex)));
}

BENCHMARK(BM_Hadamard<entcool::kernels::serial::apply_matrix>)->Name("hadamard/serial")->DenseRange(12, 22, 2);
BENCHMARK(BM_Hadamard<entcool::kernels::parallel::apply_matrix>)->Name("hadamard/parallel")->DenseRange(12, 22, 2);
BENCHMARK(BM_Cnot<entcool::kernels::serial::apply_cnot>)->Name("cnot/serial")->DenseRange(12, 22, 2);
BENCHMARK(BM_Cnot<entcool::kernels::parallel::apply_cnot>)->Name("cnot/parallel")->DenseRange(12, 22, 2);
BENCHMARK(BM_Phase<entcool::kernels::serial::apply_phase>)->Name("phase/serial")->DenseRange(12, 22, 2);
BENCHMARK(BM_Phase<entcool::kernels::parallel::apply_phase>)->Name("phase/parallel")->DenseRange(12, 22, 2);

entcool::StateVector heated_state(unsigned n) {
  entcool::RngStream rng(1);
  std::vector<double> th(n);
  for (double& t : th) t = std::numbers::pi * rng.uniform();
  entcool::StateVector s = entcool::new_product_state(th);
  entcool::heat(s, entcool::GateSet::cnot_h_t(), 512, rng);
  return s;
}

void BM_HalfCutSpectrum(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const entcool::StateVector s = heated_state(n);
  const auto part = entcool::Bipartition::half(n);
  for (auto _ : state) benchmark::DoNotOptimize(entcool::entanglement_spectrum(s, part));
}
BENCHMARK(BM_HalfCutSpectrum)->DenseRange(8, 16, 2)->Unit(benchmark::kMicrosecond);

void BM_CoolingSteps(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const entcool::StateVector start = heated_state(n);
  entcool::CoolingConfig cfg;
  cfg.max_steps = 1000;
  for (auto _ : state) {
    entcool::StateVector s = start;
    entcool::RngStream rng(2);
    benchmark::DoNotOptimize(entcool::cool(s, entcool::GateSet::cnot_h_t(), cfg, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_CoolingSteps)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
