// include/derev/dsp/wav.h

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

#ifndef DEREV_DSP_WAV_H_
#define DEREV_DSP_WAV_H_

#include <string>

#include "derev/dsp/frame.h"

namespace derev {

// Mono 16-bit PCM only.  Samples are scaled to [-1, 1] on read and quantized
// with round-to-nearest (clamped) on write.

struct WavData {
  int sample_rate = 0;
  Waveform samples;
};

WavData ReadWav(const std::string& path);
void WriteWav(const std::string& path, const Waveform& samples,
              int sample_rate);

}  // namespace derev

#endif  // DEREV_DSP_WAV_H_
