// src/reverb/pseudo_speech.cc

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

#include "derev/reverb/pseudo_speech.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "derev/core/rng.h"

namespace derev {

namespace {
constexpr double kTwoPi = 6.283185307179586;

struct Formant {
  double center_hz;
  double bandwidth_hz;
};
}  // namespace

Waveform SynthesizePseudoSpeech(double duration_sec, uint64_t seed,
                                int sample_rate) {
  if (duration_sec <= 0.0) {
    throw std::invalid_argument("duration must be positive");
  }
  const int64_t total = static_cast<int64_t>(duration_sec * sample_rate);
  std::vector<double> x(static_cast<size_t>(total), 0.0);
  Rng rng(seed);

  // Leading pause, then alternating voiced syllables and gaps.
  int64_t pos = static_cast<int64_t>(rng.Uniform(0.03, 0.08) * sample_rate);
  double phase = rng.Uniform(0.0, kTwoPi);
  while (pos < total) {
    const int64_t syl_len =
        static_cast<int64_t>(rng.Uniform(0.12, 0.28) * sample_rate);
    const int64_t end = std::min(pos + syl_len, total);

    const double f0_start = rng.Uniform(90.0, 260.0);
    const double f0_end = f0_start * rng.Uniform(0.85, 1.2);
    const double vib_hz = rng.Uniform(4.0, 7.0);
    const double vib_depth = rng.Uniform(0.01, 0.03);
    const double loudness = rng.Uniform(0.5, 1.0);

    const Formant formants[3] = {
        {rng.Uniform(300.0, 900.0), rng.Uniform(80.0, 200.0)},
        {rng.Uniform(900.0, 2400.0), rng.Uniform(120.0, 300.0)},
        {rng.Uniform(2400.0, 3600.0), rng.Uniform(200.0, 400.0)},
    };

    // Harmonic amplitudes from the syllable-mean pitch.
    const double f0_mean = 0.5 * (f0_start + f0_end);
    const int max_harmonics =
        std::max(1, static_cast<int>(7600.0 / f0_mean));
    std::vector<double> amp(max_harmonics + 1, 0.0);
    std::vector<double> psi(max_harmonics + 1, 0.0);
    for (int k = 1; k <= max_harmonics; ++k) {
      const double fk = k * f0_mean;
      double shape = 0.05;
      for (const Formant& f : formants) {
        const double d = (fk - f.center_hz) / f.bandwidth_hz;
        shape += std::exp(-0.5 * d * d);
      }
      amp[k] = shape / std::sqrt(static_cast<double>(k));
      psi[k] = rng.Uniform(0.0, kTwoPi);
    }

    const int64_t attack = sample_rate / 50;   // 20 ms
    const int64_t release = sample_rate / 33;  // 30 ms
    const int64_t n_syl = end - pos;
    for (int64_t i = 0; i < n_syl; ++i) {
      const double frac = static_cast<double>(i) / std::max<int64_t>(n_syl, 1);
      const double t = static_cast<double>(pos + i) / sample_rate;
      const double f0 =
          (f0_start + (f0_end - f0_start) * frac) *
          (1.0 + vib_depth * std::sin(kTwoPi * vib_hz * t));
      phase += kTwoPi * f0 / sample_rate;
      if (phase > kTwoPi) phase -= kTwoPi;

      double env = loudness;
      if (i < attack) env *= static_cast<double>(i) / attack;
      if (n_syl - i < release) env *= static_cast<double>(n_syl - i) / release;

      double s = 0.0;
      for (int k = 1; k <= max_harmonics; ++k) {
        s += amp[k] * std::sin(k * phase + psi[k]);
      }
      x[pos + i] += env * s;
    }

    pos = end + static_cast<int64_t>(rng.Uniform(0.04, 0.12) * sample_rate);
  }

  // Low-level shaped noise floor (one-pole lowpassed white noise).
  double lp = 0.0;
  for (int64_t i = 0; i < total; ++i) {
    lp = 0.95 * lp + 0.05 * rng.Gaussian();
    x[i] += 0.05 * lp;
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  const double gain = peak > 0.0 ? 0.3 / peak : 0.0;
  Waveform out(static_cast<size_t>(total));
  for (int64_t i = 0; i < total; ++i) {
    out[i] = static_cast<float>(x[i] * gain);
  }
  return out;
}

}  // namespace derev
