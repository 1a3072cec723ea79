// src/dsp/fft.cc

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

#include "derev/dsp/fft.h"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace derev {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;
};

RealFft::RealFft(int n) : impl_(new Impl), n_(n) {
  if (n <= 0) throw std::invalid_argument("fft size must be positive");
  impl_->real_buf = fftw_alloc_real(static_cast<size_t>(n));
  impl_->cplx_buf = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
  std::lock_guard<std::mutex> lock(PlannerMutex());
  impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->real_buf, impl_->cplx_buf,
                                    FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(n, impl_->cplx_buf, impl_->real_buf,
                                    FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->inv) throw std::runtime_error("fftw plan failed");
}

RealFft::~RealFft() {
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->inv) fftw_destroy_plan(impl_->inv);
  }
  fftw_free(impl_->real_buf);
  fftw_free(impl_->cplx_buf);
  delete impl_;
}

void RealFft::Forward(const double* in, std::complex<double>* out) {
  std::memcpy(impl_->real_buf, in, sizeof(double) * static_cast<size_t>(n_));
  fftw_execute(impl_->fwd);
  std::memcpy(out, impl_->cplx_buf,
              sizeof(fftw_complex) * static_cast<size_t>(n_ / 2 + 1));
}

void RealFft::Inverse(const std::complex<double>* in, double* out) {
  std::memcpy(impl_->cplx_buf, in,
              sizeof(fftw_complex) * static_cast<size_t>(n_ / 2 + 1));
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(n_);
  for (int i = 0; i < n_; ++i) out[i] = impl_->real_buf[i] * scale;
}

}  // namespace derev
