// include/derev/core/kernels.h

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

#ifndef DEREV_CORE_KERNELS_H_
#define DEREV_CORE_KERNELS_H_

#include <Eigen/Core>
#include <cstdint>

namespace derev {

// Dense matrix kernels on raw row-major buffers.  Eigen supplies the GEMM;
// everything above this file (layers, backprop, optimizers) is hand-written.
// Eigen runs single-threaded here, so results are bit-stable run to run.

template <typename T>
using EigenRowMat =
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatMap = Eigen::Map<EigenRowMat<T>>;
template <typename T>
using ConstMatMap = Eigen::Map<const EigenRowMat<T>>;

// C = A[m,k] * B[k,n]         (accumulate: C += ...)
template <typename T>
void GemmNN(const T* a, int64_t m, int64_t k, const T* b, int64_t n, T* c,
            bool accumulate = false) {
  ConstMatMap<T> ma(a, m, k), mb(b, k, n);
  MatMap<T> mc(c, m, n);
  if (accumulate) {
    mc.noalias() += ma * mb;
  } else {
    mc.noalias() = ma * mb;
  }
}

// C = A[m,k] * B[n,k]^T
template <typename T>
void GemmNT(const T* a, int64_t m, int64_t k, const T* b, int64_t n, T* c,
            bool accumulate = false) {
  ConstMatMap<T> ma(a, m, k), mb(b, n, k);
  MatMap<T> mc(c, m, n);
  if (accumulate) {
    mc.noalias() += ma * mb.transpose();
  } else {
    mc.noalias() = ma * mb.transpose();
  }
}

// C = A[k,m]^T * B[k,n]
template <typename T>
void GemmTN(const T* a, int64_t k, int64_t m, const T* b, int64_t n, T* c,
            bool accumulate = false) {
  ConstMatMap<T> ma(a, k, m), mb(b, k, n);
  MatMap<T> mc(c, m, n);
  if (accumulate) {
    mc.noalias() += ma.transpose() * mb;
  } else {
    mc.noalias() = ma.transpose() * mb;
  }
}

template <typename T>
void Axpy(int64_t n, T alpha, const T* x, T* y) {
  for (int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace derev

#endif  // DEREV_CORE_KERNELS_H_
