// include/derev/train/loss.h

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

#ifndef DEREV_TRAIN_LOSS_H_
#define DEREV_TRAIN_LOSS_H_

#include <cstdint>

#include "derev/core/tensor.h"
#include "derev/util/errors.h"

namespace derev {

// Mean squared error over valid elements.  pred/target are {S, B, D} with an
// optional {S, B} mask (1 = valid frame), or any matching shapes with
// mask == nullptr (all elements valid).
template <typename T>
double MaskedMse(const Tensor<T>& pred, const Tensor<T>& target,
                 const Tensor<T>* mask) {
  CheckSameShape(pred, target, "mse");
  if (mask == nullptr) {
    double acc = 0.0;
    for (int64_t i = 0; i < pred.size(); ++i) {
      const double d = static_cast<double>(pred[i]) - target[i];
      acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
  }
  const int64_t steps = pred.dim(0), batch = pred.dim(1), dim = pred.dim(2);
  double acc = 0.0;
  int64_t valid = 0;
  for (int64_t t = 0; t < steps; ++t) {
    for (int64_t b = 0; b < batch; ++b) {
      if (mask->at(t, b) == T(0)) continue;
      const T* p = pred.row_ptr(t, b);
      const T* q = target.row_ptr(t, b);
      for (int64_t d = 0; d < dim; ++d) {
        const double diff = static_cast<double>(p[d]) - q[d];
        acc += diff * diff;
      }
      ++valid;
    }
  }
  if (valid == 0) throw DataError("mse: mask covers no frames");
  return acc / static_cast<double>(valid * dim);
}

// Adds scale * d(mse)/d(pred) = scale * 2 (pred - target) / N_valid into
// *grad (zero on masked frames).
template <typename T>
void AddMseGrad(const Tensor<T>& pred, const Tensor<T>& target,
                const Tensor<T>* mask, double scale, Tensor<T>* grad) {
  CheckSameShape(pred, target, "mse grad");
  CheckSameShape(pred, *grad, "mse grad");
  if (mask == nullptr) {
    const double k = 2.0 * scale / static_cast<double>(pred.size());
    for (int64_t i = 0; i < pred.size(); ++i) {
      (*grad)[i] += static_cast<T>(k * (static_cast<double>(pred[i]) - target[i]));
    }
    return;
  }
  const int64_t steps = pred.dim(0), batch = pred.dim(1), dim = pred.dim(2);
  int64_t valid = 0;
  for (int64_t t = 0; t < steps; ++t) {
    for (int64_t b = 0; b < batch; ++b) {
      if (mask->at(t, b) != T(0)) ++valid;
    }
  }
  if (valid == 0) throw DataError("mse grad: mask covers no frames");
  const double k = 2.0 * scale / static_cast<double>(valid * dim);
  for (int64_t t = 0; t < steps; ++t) {
    for (int64_t b = 0; b < batch; ++b) {
      if (mask->at(t, b) == T(0)) continue;
      const T* p = pred.row_ptr(t, b);
      const T* q = target.row_ptr(t, b);
      T* g = grad->row_ptr(t, b);
      for (int64_t d = 0; d < dim; ++d) {
        g[d] += static_cast<T>(k * (static_cast<double>(p[d]) - q[d]));
      }
    }
  }
}

// Least-squares discriminator objective on batch-mean scores:
// 1/2 (d_real - 1)^2 + 1/2 d_fake^2.
inline double DLoss(double d_real, double d_fake) {
  return 0.5 * (d_real - 1.0) * (d_real - 1.0) + 0.5 * d_fake * d_fake;
}

// Pure adversarial generator objective: 1/2 (d_fake - 1)^2.
inline double GLossAdv(double d_fake) {
  return 0.5 * (d_fake - 1.0) * (d_fake - 1.0);
}

// Mixed generator objective: 1/2 (d_fake - 1)^2 + 1/2 lambda mse.
inline double GLoss(double d_fake, double mse, double lambda) {
  return GLossAdv(d_fake) + 0.5 * lambda * mse;
}

}  // namespace derev

#endif  // DEREV_TRAIN_LOSS_H_
