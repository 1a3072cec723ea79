// src/reverb/convolve.cc

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

#include "derev/reverb/convolve.h"

#include <complex>
#include <stdexcept>
#include <vector>

#include "derev/dsp/fft.h"

namespace derev {

std::vector<float> FftConvolve(const std::vector<float>& a,
                               const std::vector<float>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("convolution inputs must be nonempty");
  }
  const size_t out_len = a.size() + b.size() - 1;
  size_t n = 1;
  while (n < out_len) n <<= 1;

  RealFft fft(static_cast<int>(n));
  std::vector<double> buf(n, 0.0);
  std::vector<std::complex<double>> fa(n / 2 + 1), fb(n / 2 + 1);

  for (size_t i = 0; i < a.size(); ++i) buf[i] = a[i];
  fft.Forward(buf.data(), fa.data());
  std::fill(buf.begin(), buf.end(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) buf[i] = b[i];
  fft.Forward(buf.data(), fb.data());

  for (size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  fft.Inverse(fa.data(), buf.data());

  std::vector<float> out(out_len);
  for (size_t i = 0; i < out_len; ++i) out[i] = static_cast<float>(buf[i]);
  return out;
}

Waveform ConvolveRir(const Waveform& clean, const Rir& rir) {
  std::vector<float> full = FftConvolve(clean, rir.samples);
  full.resize(clean.size());
  return full;
}

}  // namespace derev
