// include/derev/core/init.h

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

#ifndef DEREV_CORE_INIT_H_
#define DEREV_CORE_INIT_H_

#include <cmath>
#include <stdexcept>

#include "derev/core/rng.h"
#include "derev/core/tensor.h"

namespace derev {

// fan_in/fan_out for Xavier scaling.  Matrices (out, in) use the last two
// dims; convolution kernels (out_ch, in_ch, k...) count the receptive field
// into both fans.
inline void XavierFans(const Shape& shape, int64_t* fan_in, int64_t* fan_out) {
  if (shape.empty()) throw std::invalid_argument("xavier: rank-0 shape");
  for (int64_t d : shape) {
    if (d <= 0) throw std::invalid_argument("xavier: zero-sized dimension");
  }
  if (shape.size() == 1) {
    *fan_in = *fan_out = shape[0];
    return;
  }
  int64_t receptive = 1;
  for (size_t i = 2; i < shape.size(); ++i) receptive *= shape[i];
  *fan_out = shape[0] * receptive;
  *fan_in = shape[1] * receptive;
}

// Uniform(-a, a) with a = sqrt(6 / (fan_in + fan_out)).  Deterministic for a
// fixed seed.
template <typename T>
Tensor<T> XavierInit(const Shape& shape, uint64_t seed) {
  int64_t fan_in = 0, fan_out = 0;
  XavierFans(shape, &fan_in, &fan_out);
  double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Tensor<T> t(shape);
  Rng rng(seed);
  for (int64_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<T>(rng.Uniform(-bound, bound));
  }
  return t;
}

}  // namespace derev

#endif  // DEREV_CORE_INIT_H_
