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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "entcool/errors.hpp"
#include "entcool/gates.hpp"
#include "entcool/kernels.hpp"
#include "entcool/state_vector.hpp"
#include "oracles.hpp"

namespace entcool {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

StateVector basis(unsigned n, std::size_t k) {
  std::vector<Complex> a(std::size_t{1} << n, 0.0);
  a[k] = 1.0;
  return StateVector::from_amplitudes(std::move(a));
}

GateInstance random_gate(unsigned n, std::mt19937_64& gen) {
  std::uniform_int_distribution<unsigned> q(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 5);
  const unsigned a = q(gen);
  switch (kind(gen)) {
    case 0: return GateInstance::one(GateType::h(), a);
    case 1: return GateInstance::one(GateType::t(), a);
    case 2: return GateInstance::one(GateType::s(), a);
    case 3: return GateInstance::one(GateType::x(), a);
    case 4: return GateInstance::one(GateType::phase(std::uniform_real_distribution<double>(-3, 3)(gen)), a);
    default: {
      unsigned b = q(gen);
      while (b == a) b = q(gen);
      return GateInstance::cnot(a, b);
    }
  }
}

TEST(ProductState, SingleQubitZeroAngle) {
  const std::vector<double> th{0.0};
  const StateVector s = new_product_state(th);
  EXPECT_EQ(s[0], Complex(1.0, 0.0));
  EXPECT_EQ(s[1], Complex(0.0, 0.0));
}

TEST(ProductState, QuarterPiGivesUniformAmplitudes) {
  const std::vector<double> th{std::numbers::pi / 4, std::numbers::pi / 4};
  const StateVector s = new_product_state(th);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(s[k] - Complex(0.5)), 0.0, 1e-15);
}

TEST(ProductState, ThirdPi) {
  const std::vector<double> th{std::numbers::pi / 3};
  const StateVector s = new_product_state(th);
  EXPECT_NEAR(s[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(s[1].real(), 0.8660254037844386, 1e-15);
}

TEST(ProductState, QubitZeroIsLowBit) {
  // qubit 0 rotated to |1>, qubit 1 left in |0>: index 1.
  const std::vector<double> th{std::numbers::pi / 2, 0.0};
  const StateVector s = new_product_state(th);
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
}

TEST(ProductState, EmptyThrows) {
  EXPECT_THROW(new_product_state(std::vector<double>{}), std::invalid_argument);
}

TEST(Gates, HadamardOnZero) {
  StateVector s(1);
  s.apply_1q(GateType::h(), 0);
  EXPECT_NEAR(s[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(s[1].real(), kInvSqrt2, 1e-15);
}

TEST(Gates, TOnOne) {
  StateVector s = basis(1, 1);
  s.apply_1q(GateType::t(), 0);
  EXPECT_NEAR(std::abs(s[1] - std::polar(1.0, std::numbers::pi / 4)), 0.0, 1e-15);
  EXPECT_EQ(s[0], Complex(0.0));
}

TEST(Gates, NotTwiceIsIdentity) {
  std::mt19937_64 gen(3);
  const auto psi = oracle::random_state(4, gen);
  StateVector s = StateVector::from_amplitudes(psi);
  const StateVector before = s;
  s.apply_1q(GateType::x(), 2);
  s.apply_1q(GateType::x(), 2);
  EXPECT_LT(max_abs_difference(s, before), 1e-12);
}

TEST(Gates, CnotTruthTable) {
  StateVector s = basis(2, 1);  // qubit 0 set
  s.apply_cnot(0, 1);
  EXPECT_EQ(s[3], Complex(1.0));

  StateVector z = basis(2, 0);
  z.apply_cnot(0, 1);
  EXPECT_EQ(z[0], Complex(1.0));

  StateVector t = basis(2, 2);  // only the target set: unchanged
  t.apply_cnot(0, 1);
  EXPECT_EQ(t[2], Complex(1.0));
}

TEST(Gates, CnotTwiceIsIdentity) {
  std::mt19937_64 gen(5);
  StateVector s = StateVector::from_amplitudes(oracle::random_state(5, gen));
  const StateVector before = s;
  s.apply_cnot(4, 1);
  s.apply_cnot(4, 1);
  EXPECT_EQ(s, before);
}

TEST(Gates, Inverses) {
  EXPECT_EQ(inverse(GateType::t()), GateType::phase(-std::numbers::pi / 4));
  EXPECT_EQ(inverse(GateType::s()), GateType::phase(-std::numbers::pi / 2));
  EXPECT_EQ(inverse(GateType::h()), GateType::h());
  EXPECT_EQ(inverse_gate(GateInstance::cnot(2, 5)), GateInstance::cnot(2, 5));
}

TEST(Gates, ErrorPaths) {
  StateVector s(3);
  EXPECT_THROW(s.apply_1q(GateType::h(), 3), std::invalid_argument);
  EXPECT_THROW(s.apply_cnot(1, 1), std::invalid_argument);
  EXPECT_THROW(s.apply_cnot(0, 7), std::invalid_argument);
  EXPECT_THROW(StateVector(0), std::invalid_argument);
}

TEST(Gates, NameRoundTrip) {
  for (const GateInstance& g : {GateInstance::one(GateType::h(), 3), GateInstance::one(GateType::t(), 0),
                                GateInstance::cnot(3, 7), GateInstance::one(GateType::phase(-0.3), 2)}) {
    EXPECT_EQ(parse_gate_instance(g.to_string()), g) << g.to_string();
  }
  EXPECT_EQ(GateInstance::cnot(3, 7).to_string(), "CNOT 3 7");
  EXPECT_THROW(parse_gate_instance("CNOT 2 2"), std::invalid_argument);
  EXPECT_THROW(parse_gate_instance("H 1 junk"), std::invalid_argument);
}

TEST(Norm, DriftIsDetected) {
  std::vector<Complex> a{1.0, 1.0};
  StateVector s = StateVector::from_amplitudes(a);
  EXPECT_THROW(s.check_norm(), InvariantError);
}

// --- properties ------------------------------------------------------------

TEST(QStateProperty, NormPreservedOverThousandGates) {
  std::mt19937_64 gen(11);
  StateVector s = StateVector::from_amplitudes(oracle::random_state(8, gen));
  for (int i = 0; i < 1000; ++i) {
    s.apply(random_gate(8, gen));
    ASSERT_LT(std::abs(s.norm_squared() - 1.0), 1e-10) << "after gate " << i;
  }
}

TEST(QStateProperty, ReversalRestoresAmplitudes) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 5; ++trial) {
    StateVector s = StateVector::from_amplitudes(oracle::random_state(9, gen));
    const StateVector start = s;
    std::vector<GateInstance> seq;
    for (int i = 0; i < 512; ++i) seq.push_back(random_gate(9, gen));
    for (const auto& g : seq) s.apply(g);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) s.apply(inverse_gate(*it));
    EXPECT_LT(max_abs_difference(s, start), 1e-8);
  }
}

TEST(QStateProperty, OneQubitGatesAreLinear) {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> g;
  const unsigned n = 5;
  auto raw = [&] {
    std::vector<Complex> v(std::size_t{1} << n);
    for (auto& x : v) x = Complex(g(gen), g(gen));
    return v;
  };
  const Complex alpha(0.3, -1.2), beta(-0.7, 0.4);
  for (GateType gt : {GateType::h(), GateType::t(), GateType::s(), GateType::x(), GateType::phase(1.1)}) {
    for (unsigned q = 0; q < n; ++q) {
      auto p1 = raw(), p2 = raw();
      std::vector<Complex> mix(p1.size());
      for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = alpha * p1[k] + beta * p2[k];
      // Unnormalized vectors go straight through the kernels.
      auto apply = [&](std::vector<Complex>& v) {
        if (gt.kind == GateKind::NOT) kernels::serial::apply_not(v, q);
        else if (gt.is_diagonal()) kernels::serial::apply_phase(v, q, std::polar(1.0, gt.phase_angle()));
        else kernels::serial::apply_matrix(v, q, gt.matrix());
      };
      apply(p1);
      apply(p2);
      apply(mix);
      for (std::size_t k = 0; k < mix.size(); ++k) {
        ASSERT_LT(std::abs(mix[k] - (alpha * p1[k] + beta * p2[k])), 1e-12);
      }
    }
  }
}

std::vector<double> marginal_one(const StateVector& s, unsigned q) {
  std::vector<double> p(2, 0.0);
  for (std::size_t k = 0; k < s.dim(); ++k) p[(k >> q) & 1] += std::norm(s[k]);
  return p;
}

TEST(QStateProperty, OneQubitGateIsLocal) {
  std::mt19937_64 gen(29);
  const unsigned n = 6;
  for (int trial = 0; trial < 20; ++trial) {
    StateVector s = StateVector::from_amplitudes(oracle::random_state(n, gen));
    const unsigned j = trial % n;
    std::vector<std::vector<double>> before;
    for (unsigned q = 0; q < n; ++q) before.push_back(marginal_one(s, q));
    s.apply_1q(trial % 2 ? GateType::h() : GateType::t(), j);
    for (unsigned q = 0; q < n; ++q) {
      if (q == j) continue;
      const auto after = marginal_one(s, q);
      EXPECT_NEAR(after[0], before[q][0], 1e-12);
      EXPECT_NEAR(after[1], before[q][1], 1e-12);
    }
  }
}

TEST(Kernels, ParallelMatchesSerialBitwise) {
  // Large enough to cross the parallel threshold.
  const unsigned n = 18;
  std::mt19937_64 gen(31);
  const auto psi = oracle::random_state(n, gen);
  std::vector<Complex> a = psi, b = psi;
  const Mat2 h = GateType::h().matrix();
  for (unsigned q : {0u, 5u, 17u}) {
    kernels::serial::apply_matrix(a, q, h);
    kernels::parallel::apply_matrix(b, q, h);
    kernels::serial::apply_phase(a, q, std::polar(1.0, 0.7));
    kernels::parallel::apply_phase(b, q, std::polar(1.0, 0.7));
    kernels::serial::apply_not(a, q);
    kernels::parallel::apply_not(b, q);
  }
  kernels::serial::apply_cnot(a, 3, 16);
  kernels::parallel::apply_cnot(b, 3, 16);
  kernels::serial::apply_cnot(a, 17, 0);
  kernels::parallel::apply_cnot(b, 17, 0);
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace entcool
