// include/derev/core/rng.h

// Copyright 2026  Derev Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DEREV_CORE_RNG_H_
#define DEREV_CORE_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace derev {

// Deterministic RNG used everywhere seeds matter.  The engine (mt19937_64)
// and all value mappings below are fully specified, so a fixed seed gives the
// same stream on every standard library.  std::uniform_real_distribution and
// friends are implementation-defined and must not be used.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Integer in [0, n), n > 0.
  uint64_t Below(uint64_t n) { return engine_() % n; }

  // Standard normal via Box-Muller (cosine branch only, no cached spare).
  double Gaussian() {
    double u1 = 1.0 - Uniform();  // (0, 1]
    double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double Gaussian(double mean, double stddev) {
    return mean + stddev * Gaussian();
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a master seed with a purpose tag and an index into an independent
// stream seed.  splitmix64 finalizer over FNV-1a of the tag.
inline uint64_t DeriveSeed(uint64_t master, std::string_view tag,
                           uint64_t index = 0) {
  uint64_t h = 1469598103934665603ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  uint64_t z = master + 0x9E3779B97F4A7C15ull * (h ^ index);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace derev

#endif  // DEREV_CORE_RNG_H_
