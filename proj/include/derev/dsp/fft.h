// include/derev/dsp/fft.h

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

#ifndef DEREV_DSP_FFT_H_
#define DEREV_DSP_FFT_H_

#include <complex>
#include <vector>

namespace derev {

// Real 1-D FFT of fixed size, double precision, backed by FFTW.  Instances
// are not thread-safe (internal buffers); create one per thread.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }

  // in: n reals -> out: n/2+1 complex bins.
  void Forward(const double* in, std::complex<double>* out);

  // in: n/2+1 complex bins -> out: n reals, normalized by 1/n so that
  // Inverse(Forward(x)) == x.
  void Inverse(const std::complex<double>* in, double* out);

 private:
  struct Impl;
  Impl* impl_;
  int n_;
};

}  // namespace derev

#endif  // DEREV_DSP_FFT_H_
