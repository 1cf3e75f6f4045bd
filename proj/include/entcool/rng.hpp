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

#include <cstdint>
#include <random>

namespace entcool {

/// Seedable random stream with a platform-independent draw sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The std:: distributions are implementation-defined, so the
/// mapping from raw 64-bit words to doubles and bounded integers is done
/// here instead:
///   uniform()  = (word >> 11) * 2^-53             in [0, 1)
///   below(n)   = Lemire multiply-shift with rejection, unbiased
class RngStream {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Independent sub-streams of one experiment.
enum class StreamPurpose : std::uint64_t {
  kHeating = 1,
  kCooling = 2,
  kSampleSelection = 3,
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `purpose` of realization `index` under `master_seed`:
///   splitmix64(master_seed ^ splitmix64(index ^ (purpose << 56)))
/// Nearby master seeds and indices map to unrelated engine states.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                          StreamPurpose purpose);

}  // namespace entcool
