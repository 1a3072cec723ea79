// include/derev/dsp/stft.h

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

#ifndef DEREV_DSP_STFT_H_
#define DEREV_DSP_STFT_H_

#include <complex>
#include <cstdint>
#include <vector>

#include "derev/dsp/frame.h"

namespace derev {

struct ComplexSpectrogram {
  int64_t num_frames = 0;
  int64_t num_bins = 0;
  std::vector<std::complex<double>> data;  // row-major frames x bins
  FrameConfig config;

  std::complex<double>& at(int64_t frame, int64_t bin) {
    return data[frame * num_bins + bin];
  }
  const std::complex<double>& at(int64_t frame, int64_t bin) const {
    return data[frame * num_bins + bin];
  }
};

// Frame t covers samples [t*shift, t*shift + frame_len); windowed, zero
// padded to fft_size, transformed.  Errors if the wave is shorter than one
// frame.
ComplexSpectrogram Stft(const Waveform& wave, const FrameConfig& config);

}  // namespace derev

#endif  // DEREV_DSP_STFT_H_
