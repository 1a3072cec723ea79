// include/derev/dsp/reconstruct.h

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

#ifndef DEREV_DSP_RECONSTRUCT_H_
#define DEREV_DSP_RECONSTRUCT_H_

#include "derev/dsp/features.h"
#include "derev/dsp/stft.h"

namespace derev {

// Waveform from enhanced LPS and the phase of the reverberant spectrogram.
// Magnitude = exp(lps/2); per-frame inverse FFT; least-squares weighted
// overlap-add (synthesis window = analysis window, normalized per sample by
// the sum of squared overlapped windows).  Output length is
// (frames-1)*shift + frame_len.
Waveform Reconstruct(const FeatureMatrix& enhanced_lps,
                     const ComplexSpectrogram& reverberant_phase,
                     const FrameConfig& config);

}  // namespace derev

#endif  // DEREV_DSP_RECONSTRUCT_H_
