// include/derev/nn/splice.h

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

#ifndef DEREV_NN_SPLICE_H_
#define DEREV_NN_SPLICE_H_

#include <algorithm>
#include <cstring>

#include "derev/core/tensor.h"

namespace derev {

// Context splicing: frame t becomes the concatenation of frames
// t-half .. t+half with edge replication.  {F, D} -> {F, (2*half+1)*D}.
template <typename T>
Tensor<T> SpliceContext(const Tensor<T>& feats, int half_window = 5) {
  const int64_t frames = feats.dim(0), dim = feats.dim(1);
  const int64_t window = 2 * half_window + 1;
  Tensor<T> out({frames, window * dim});
  for (int64_t t = 0; t < frames; ++t) {
    T* row = out.data() + t * window * dim;
    for (int64_t k = 0; k < window; ++k) {
      const int64_t src =
          std::clamp<int64_t>(t + k - half_window, 0, frames - 1);
      std::memcpy(row + k * dim, feats.data() + src * dim,
                  sizeof(T) * static_cast<size_t>(dim));
    }
  }
  return out;
}

// Adjoint of SpliceContext: scatter-adds spliced-row gradients back onto the
// original frames (edge replication folds onto the clamped frames).
template <typename T>
Tensor<T> SpliceBackward(const Tensor<T>& dspliced, int64_t frames,
                         int64_t dim, int half_window = 5) {
  const int64_t window = 2 * half_window + 1;
  Tensor<T> dx({frames, dim});
  for (int64_t t = 0; t < frames; ++t) {
    const T* row = dspliced.data() + t * window * dim;
    for (int64_t k = 0; k < window; ++k) {
      const int64_t src =
          std::clamp<int64_t>(t + k - half_window, 0, frames - 1);
      T* dst = dx.data() + src * dim;
      const T* part = row + k * dim;
      for (int64_t d = 0; d < dim; ++d) dst[d] += part[d];
    }
  }
  return dx;
}

}  // namespace derev

#endif  // DEREV_NN_SPLICE_H_
