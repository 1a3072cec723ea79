// include/derev/reverb/rir.h

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

#ifndef DEREV_REVERB_RIR_H_
#define DEREV_REVERB_RIR_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "derev/dsp/frame.h"

namespace derev {

enum class RoomCategory { kSmall, kMedium, kLarge };

const char* RoomCategoryName(RoomCategory c);
RoomCategory ParseRoomCategory(const std::string& name);

// Default T60 range per room size, seconds.
std::pair<double, double> CategoryT60Range(RoomCategory c);

struct Rir {
  std::vector<float> samples;  // direct path: samples[0] == 1
  double t60 = 0.0;
  RoomCategory category = RoomCategory::kSmall;
  uint64_t seed = 0;
};

// Parametric RIR: unit direct path at lag 0, a handful of sparse early
// reflections, then Gaussian noise under the T60 exponential envelope
// exp(-3 ln10 * n / (t60 * fs)).  Deterministic per seed.
// t60 must lie in [0.1, 2.0] s.
Rir GenerateRir(double t60, int64_t length, RoomCategory category,
                uint64_t seed, int sample_rate = 16000);

// T60 estimate via Schroeder backward energy integration, fitting the decay
// between -5 dB and -25 dB.
double MeasureT60Schroeder(const std::vector<float>& rir, int sample_rate);

}  // namespace derev

#endif  // DEREV_REVERB_RIR_H_
