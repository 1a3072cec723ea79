// include/derev/dsp/frame.h

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

#ifndef DEREV_DSP_FRAME_H_
#define DEREV_DSP_FRAME_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace derev {

using Waveform = std::vector<float>;

// 25 ms frames, 10 ms shift, 512-point FFT at 16 kHz => 257 bins.
struct FrameConfig {
  int sample_rate = 16000;
  int frame_len = 400;
  int frame_shift = 160;
  int fft_size = 512;

  int num_bins() const { return fft_size / 2 + 1; }

  void Validate() const {
    if (frame_len > fft_size) {
      throw std::invalid_argument("frame_len must be <= fft_size");
    }
    if (frame_shift > frame_len || frame_shift <= 0) {
      throw std::invalid_argument("frame_shift must be in (0, frame_len]");
    }
    if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0) {
      throw std::invalid_argument("fft_size must be a power of two");
    }
  }

  // floor((N - frame_len) / frame_shift) + 1; requires N >= frame_len.
  int64_t NumFrames(int64_t samples) const {
    if (samples < frame_len) {
      throw std::invalid_argument("waveform shorter than one frame");
    }
    return (samples - frame_len) / frame_shift + 1;
  }
};

// Periodic Hamming window: 0.54 - 0.46 cos(2 pi n / L).
std::vector<double> HammingPeriodic(int length);

}  // namespace derev

#endif  // DEREV_DSP_FRAME_H_
