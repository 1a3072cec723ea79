// src/dsp/reconstruct.cc

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

#include "derev/dsp/reconstruct.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "derev/dsp/fft.h"
#include "derev/util/errors.h"

namespace derev {

Waveform Reconstruct(const FeatureMatrix& enhanced_lps,
                     const ComplexSpectrogram& reverberant_phase,
                     const FrameConfig& config) {
  config.Validate();
  if (enhanced_lps.kind != FeatureKind::kLps) {
    throw DataError("reconstruct expects LPS features");
  }
  if (enhanced_lps.normalized) {
    throw DataError("reconstruct expects de-normalized LPS features");
  }
  if (enhanced_lps.frames() != reverberant_phase.num_frames) {
    throw DataError("reconstruct: frame count mismatch between LPS and phase");
  }
  if (enhanced_lps.dim() != reverberant_phase.num_bins ||
      enhanced_lps.dim() != config.num_bins()) {
    throw DataError("reconstruct: bin count mismatch");
  }

  const int64_t frames = enhanced_lps.frames();
  const int bins = config.num_bins();
  const int len = config.frame_len;
  const int shift = config.frame_shift;
  const int64_t out_len = (frames - 1) * shift + len;

  const std::vector<double> window = HammingPeriodic(len);
  std::vector<double> numer(out_len, 0.0), denom(out_len, 0.0);
  std::vector<std::complex<double>> spec_row(bins);
  std::vector<double> frame(config.fft_size);
  RealFft fft(config.fft_size);

  for (int64_t t = 0; t < frames; ++t) {
    for (int b = 0; b < bins; ++b) {
      const double mag =
          std::exp(0.5 * static_cast<double>(enhanced_lps.mat.at(t, b)));
      const std::complex<double> ph = reverberant_phase.at(t, b);
      const double pm = std::abs(ph);
      // Zero-magnitude phase bins fall back to zero phase.
      spec_row[b] = pm > 0.0 ? ph * (mag / pm) : std::complex<double>(mag, 0.0);
    }
    fft.Inverse(spec_row.data(), frame.data());
    const int64_t start = t * shift;
    for (int n = 0; n < len; ++n) {
      numer[start + n] += window[n] * frame[n];
      denom[start + n] += window[n] * window[n];
    }
  }

  // The per-sample window-energy divisor is floored: near the edges a single
  // frame covers a sample with w^2 close to zero, and dividing there would
  // amplify the floor-level residual instead of inverting anything useful.
  // Interior coverage for the 400/160 Hamming pair stays near 1.0.
  constexpr double kDenomFloor = 0.3;
  Waveform out(static_cast<size_t>(out_len));
  for (int64_t i = 0; i < out_len; ++i) {
    out[i] = static_cast<float>(numer[i] / std::max(denom[i], kDenomFloor));
  }
  return out;
}

}  // namespace derev
