// Copyright 2026 The qecho Authors
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

namespace qecho {

/// Seeded pseudo-random stream.  All sampling helpers are implemented on top
/// of raw 64-bit draws (no std::*_distribution), so a given seed produces the
/// same sequence on every platform and standard library.  Seeds are always
/// explicit; there is no entropy-based default anywhere in the project.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(seed) {}

  uint64_t u64() { return eng_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), unbiased via rejection.
  uint64_t uniform_int(uint64_t n);

  /// Standard normal deviate (Box-Muller on the portable uniforms).
  double normal();

  /// Number of successes in `n` Bernoulli(p) trials, sampled exactly.
  int64_t binomial(int64_t n, double p);

  /// Deterministically derived child stream: children for distinct ids are
  /// decorrelated from each other and from the parent, and depend only on
  /// the parent seed and the id (not on how much the parent has been used).
  Rng child(uint64_t stream_id) const;

  /// The 64-bit mixing function used for seed derivation (exposed for tests).
  static uint64_t mix(uint64_t x);

 private:
  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace qecho
