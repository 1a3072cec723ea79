// src/reverb/rir.cc

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

#include "derev/reverb/rir.h"

#include <cmath>
#include <stdexcept>

#include "derev/core/rng.h"
#include "derev/util/errors.h"

namespace derev {

const char* RoomCategoryName(RoomCategory c) {
  switch (c) {
    case RoomCategory::kSmall: return "small";
    case RoomCategory::kMedium: return "medium";
    case RoomCategory::kLarge: return "large";
  }
  return "small";
}

RoomCategory ParseRoomCategory(const std::string& name) {
  if (name == "small") return RoomCategory::kSmall;
  if (name == "medium") return RoomCategory::kMedium;
  if (name == "large") return RoomCategory::kLarge;
  throw ConfigError("unknown room category: " + name);
}

std::pair<double, double> CategoryT60Range(RoomCategory c) {
  switch (c) {
    case RoomCategory::kSmall: return {0.2, 0.4};
    case RoomCategory::kMedium: return {0.4, 0.7};
    case RoomCategory::kLarge: return {0.7, 1.2};
  }
  return {0.2, 0.4};
}

Rir GenerateRir(double t60, int64_t length, RoomCategory category,
                uint64_t seed, int sample_rate) {
  if (t60 < 0.1 || t60 > 2.0) {
    throw std::invalid_argument("t60 out of range [0.1, 2.0]");
  }
  if (length < 1) throw std::invalid_argument("rir length must be >= 1");

  Rir rir;
  rir.t60 = t60;
  rir.category = category;
  rir.seed = seed;
  rir.samples.assign(static_cast<size_t>(length), 0.0f);
  rir.samples[0] = 1.0f;  // direct path

  // Amplitude decay so that energy drops 60 dB at t60.
  const double alpha = 3.0 * std::log(10.0) / (t60 * sample_rate);
  Rng rng(seed);

  // Sparse early reflections between 2 ms and 20 ms.
  const int64_t early_start = std::min<int64_t>(sample_rate * 2 / 1000, length);
  const int64_t early_end = std::min<int64_t>(sample_rate * 20 / 1000, length);
  const int num_early = 4 + static_cast<int>(rng.Below(4));
  for (int i = 0; i < num_early; ++i) {
    if (early_end <= early_start) break;
    const int64_t n = early_start + static_cast<int64_t>(rng.Below(
                          static_cast<uint64_t>(early_end - early_start)));
    const double sign = rng.Uniform() < 0.5 ? -1.0 : 1.0;
    const double amp = rng.Uniform(0.3, 0.8) * std::exp(-alpha * n);
    rir.samples[n] += static_cast<float>(sign * amp);
  }

  // Dense Gaussian tail from 20 ms on.
  const double tail_sigma = 0.1;
  for (int64_t n = early_end; n < length; ++n) {
    rir.samples[n] += static_cast<float>(tail_sigma * rng.Gaussian() *
                                         std::exp(-alpha * n));
  }
  return rir;
}

double MeasureT60Schroeder(const std::vector<float>& rir, int sample_rate) {
  const size_t n = rir.size();
  if (n < 2) throw std::invalid_argument("rir too short for T60 estimate");

  // Backward cumulative energy.
  std::vector<double> edc(n);
  double acc = 0.0;
  for (size_t i = n; i-- > 0;) {
    const double v = rir[i];
    acc += v * v;
    edc[i] = acc;
  }
  const double total = edc[0];
  if (total <= 0.0) throw std::invalid_argument("rir has no energy");

  // First crossings of -5 dB and -25 dB.
  ptrdiff_t n5 = -1, n25 = -1;
  for (size_t i = 0; i < n; ++i) {
    const double db = 10.0 * std::log10(edc[i] / total + 1e-300);
    if (n5 < 0 && db <= -5.0) n5 = static_cast<ptrdiff_t>(i);
    if (db <= -25.0) {
      n25 = static_cast<ptrdiff_t>(i);
      break;
    }
  }
  if (n5 < 0 || n25 < 0 || n25 <= n5) {
    throw std::invalid_argument("rir decay range too short for T60 estimate");
  }
  // -20 dB over (n25 - n5) samples, extrapolated to -60 dB.
  const double seconds = static_cast<double>(n25 - n5) / sample_rate;
  return 3.0 * seconds;
}

}  // namespace derev
