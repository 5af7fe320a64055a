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

#include "qecho/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qecho {

uint64_t Rng::mix(uint64_t x) {
  // splitmix64 finalizer; full-period bijection on 64-bit words.
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

uint64_t Rng::uniform_int(uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = u64();
  } while (v >= limit);
  return v % n;
}

double Rng::normal() {
  // Box-Muller; draw u1 away from zero so the log is finite.
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int64_t Rng::binomial(int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  int64_t successes = 0;
  for (int64_t i = 0; i < n; ++i)
    if (uniform() < p) ++successes;
  return successes;
}

Rng Rng::child(uint64_t stream_id) const {
  return Rng(mix(seed_ ^ mix(stream_id + 1)));
}

}  // namespace qecho
