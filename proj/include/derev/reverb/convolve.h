// include/derev/reverb/convolve.h

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

#ifndef DEREV_REVERB_CONVOLVE_H_
#define DEREV_REVERB_CONVOLVE_H_

#include "derev/dsp/frame.h"
#include "derev/reverb/rir.h"

namespace derev {

// FFT-based linear convolution truncated to len(clean); the unit direct path
// at lag 0 keeps the output frame-aligned with the clean reference.
Waveform ConvolveRir(const Waveform& clean, const Rir& rir);

// Full linear convolution (len a + len b - 1), FFT-based, double internals.
std::vector<float> FftConvolve(const std::vector<float>& a,
                               const std::vector<float>& b);

}  // namespace derev

#endif  // DEREV_REVERB_CONVOLVE_H_
