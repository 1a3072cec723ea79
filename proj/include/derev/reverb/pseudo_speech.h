// include/derev/reverb/pseudo_speech.h

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

#ifndef DEREV_REVERB_PSEUDO_SPEECH_H_
#define DEREV_REVERB_PSEUDO_SPEECH_H_

#include <cstdint>

#include "derev/dsp/frame.h"

namespace derev {

// Synthetic clean "speech": syllable-like bursts of a harmonic source with
// drifting pitch, per-syllable formant shaping and amplitude envelopes, plus
// low-level shaped noise.  Deterministic per seed; peak-normalized to 0.3.
Waveform SynthesizePseudoSpeech(double duration_sec, uint64_t seed,
                                int sample_rate = 16000);

}  // namespace derev

#endif  // DEREV_REVERB_PSEUDO_SPEECH_H_
