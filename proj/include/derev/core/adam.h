// include/derev/core/adam.h

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

#ifndef DEREV_CORE_ADAM_H_
#define DEREV_CORE_ADAM_H_

#include <cmath>
#include <stdexcept>
#include <vector>

#include "derev/core/param.h"
#include "derev/core/tensor.h"

namespace derev {

template <typename T>
struct AdamState {
  AdamState() = default;
  explicit AdamState(const Shape& shape, double beta1_in = 0.9,
                     double beta2_in = 0.999, double epsilon_in = 1e-8)
      : m(shape), v(shape), beta1(beta1_in), beta2(beta2_in),
        epsilon(epsilon_in) {}

  Tensor<T> m;
  Tensor<T> v;
  int64_t t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update, in place.  t increments by exactly one.
template <typename T>
void AdamStep(Parameter<T>& param, AdamState<T>& state, double lr) {
  if (!param.grad.SameShape(param.value) || !state.m.SameShape(param.value)) {
    throw std::invalid_argument("adam: shape mismatch for " + param.name);
  }
  if (!param.grad.AllFinite()) {
    throw std::runtime_error("adam: non-finite gradient for " + param.name);
  }
  state.t += 1;
  const double b1 = state.beta1, b2 = state.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
  T* w = param.value.data();
  const T* g = param.grad.data();
  T* m = state.m.data();
  T* v = state.v.data();
  const int64_t n = param.value.size();
  for (int64_t i = 0; i < n; ++i) {
    const double gi = static_cast<double>(g[i]);
    const double mi = b1 * static_cast<double>(m[i]) + (1.0 - b1) * gi;
    const double vi = b2 * static_cast<double>(v[i]) + (1.0 - b2) * gi * gi;
    m[i] = static_cast<T>(mi);
    v[i] = static_cast<T>(vi);
    const double mhat = mi / bc1;
    const double vhat = vi / bc2;
    w[i] = static_cast<T>(static_cast<double>(w[i]) -
                          lr * mhat / (std::sqrt(vhat) + state.epsilon));
  }
}

// Per-parameter Adam over a whole model.
template <typename T>
class AdamOptimizer {
 public:
  explicit AdamOptimizer(const std::vector<Parameter<T>*>& params,
                         double beta1 = 0.9, double beta2 = 0.999,
                         double epsilon = 1e-8)
      : params_(params) {
    states_.reserve(params.size());
    for (auto* p : params) {
      states_.emplace_back(p->value.shape(), beta1, beta2, epsilon);
    }
  }

  void Step(double lr) {
    for (size_t i = 0; i < params_.size(); ++i) {
      AdamStep(*params_[i], states_[i], lr);
    }
  }

  // All states share the same step counter by construction.
  int64_t step_count() const { return states_.empty() ? 0 : states_[0].t; }

 private:
  std::vector<Parameter<T>*> params_;
  std::vector<AdamState<T>> states_;
};

// Scales gradients so their global L2 norm is at most max_norm.
// Returns the pre-clip norm.
template <typename T>
double ClipGlobalNorm(const std::vector<Parameter<T>*>& params,
                      double max_norm) {
  double sq = 0.0;
  for (auto* p : params) {
    for (int64_t i = 0; i < p->grad.size(); ++i) {
      const double g = static_cast<double>(p->grad[i]);
      sq += g * g;
    }
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const T scale = static_cast<T>(max_norm / norm);
    for (auto* p : params) {
      for (int64_t i = 0; i < p->grad.size(); ++i) p->grad[i] *= scale;
    }
  }
  return norm;
}

}  // namespace derev

#endif  // DEREV_CORE_ADAM_H_
