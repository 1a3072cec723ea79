// src/dsp/stft.cc

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

#include "derev/dsp/stft.h"

#include <cmath>

#include "derev/dsp/fft.h"

namespace derev {

std::vector<double> HammingPeriodic(int length) {
  std::vector<double> w(length);
  const double step = 2.0 * M_PI / static_cast<double>(length);
  for (int n = 0; n < length; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(step * n);
  }
  return w;
}

ComplexSpectrogram Stft(const Waveform& wave, const FrameConfig& config) {
  config.Validate();
  const int64_t num_frames = config.NumFrames(static_cast<int64_t>(wave.size()));
  const int bins = config.num_bins();

  ComplexSpectrogram spec;
  spec.num_frames = num_frames;
  spec.num_bins = bins;
  spec.config = config;
  spec.data.resize(static_cast<size_t>(num_frames) * bins);

  const std::vector<double> window = HammingPeriodic(config.frame_len);
  RealFft fft(config.fft_size);
  std::vector<double> buf(config.fft_size, 0.0);
  for (int64_t t = 0; t < num_frames; ++t) {
    const int64_t start = t * config.frame_shift;
    for (int n = 0; n < config.frame_len; ++n) {
      buf[n] = static_cast<double>(wave[start + n]) * window[n];
    }
    // Tail of buf beyond frame_len stays zero (zero padding).
    fft.Forward(buf.data(), &spec.at(t, 0));
  }
  return spec;
}

}  // namespace derev
