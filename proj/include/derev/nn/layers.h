// include/derev/nn/layers.h

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

// Hand-written layers: forward caches what backward needs into a caller-owned
// Cache object, so frozen models stay const and thread-safe for inference.
// Backward accumulates parameter gradients (callers zero them per step).

#ifndef DEREV_NN_LAYERS_H_
#define DEREV_NN_LAYERS_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "derev/core/init.h"
#include "derev/core/kernels.h"
#include "derev/core/param.h"
#include "derev/core/rng.h"
#include "derev/core/tensor.h"
#include "derev/nn/config.h"
#include "derev/util/errors.h"

namespace derev {

// y = x W^T + b over rows; x {N, in}, W {out, in}.  Layers feeding a batch
// renormalization drop the bias (the normalization cancels it).
template <typename T>
class Affine {
 public:
  Affine(const std::string& name, int64_t in, int64_t out, uint64_t seed,
         bool has_bias = true)
      : w(name + ".w", XavierInit<T>({out, in}, DeriveSeed(seed, name + ".w"))),
        b(name + ".b", Tensor<T>({out})), has_bias_(has_bias) {}

  struct Cache {
    Tensor<T> x;
  };

  int64_t in_dim() const { return w.value.dim(1); }
  int64_t out_dim() const { return w.value.dim(0); }

  Tensor<T> Forward(const Tensor<T>& x, Cache* cache) const {
    if (x.dim(1) != in_dim()) {
      throw ConfigError("affine " + w.name + ": input width " +
                        std::to_string(x.dim(1)) + " != " +
                        std::to_string(in_dim()));
    }
    const int64_t n = x.dim(0);
    Tensor<T> y({n, out_dim()});
    GemmNT(x.data(), n, in_dim(), w.value.data(), out_dim(), y.data());
    if (has_bias_) {
      for (int64_t i = 0; i < n; ++i) {
        T* row = y.data() + i * out_dim();
        for (int64_t j = 0; j < out_dim(); ++j) row[j] += b.value[j];
      }
    }
    if (cache) cache->x = x;
    return y;
  }

  Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    const int64_t n = dy.dim(0);
    GemmTN(dy.data(), n, out_dim(), cache.x.data(), in_dim(), w.grad.data(),
           /*accumulate=*/true);
    if (has_bias_) {
      for (int64_t i = 0; i < n; ++i) {
        const T* row = dy.data() + i * out_dim();
        for (int64_t j = 0; j < out_dim(); ++j) b.grad[j] += row[j];
      }
    }
    Tensor<T> dx({n, in_dim()});
    GemmNN(dy.data(), n, out_dim(), w.value.data(), in_dim(), dx.data());
    return dx;
  }

  std::vector<Parameter<T>*> Params() {
    if (has_bias_) return {&w, &b};
    return {&w};
  }

  Parameter<T> w;
  Parameter<T> b;

 private:
  bool has_bias_ = true;
};

template <typename T>
struct Relu {
  struct Cache {
    Tensor<T> x;
  };
  static Tensor<T> Forward(const Tensor<T>& x, Cache* cache) {
    Tensor<T> y = x;
    for (int64_t i = 0; i < y.size(); ++i) y[i] = std::max<T>(y[i], T(0));
    if (cache) cache->x = x;
    return y;
  }
  static Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    Tensor<T> dx = dy;
    for (int64_t i = 0; i < dx.size(); ++i) {
      if (cache.x[i] <= T(0)) dx[i] = T(0);
    }
    return dx;
  }
};

template <typename T>
struct Sigmoid {
  struct Cache {
    Tensor<T> y;
  };
  static Tensor<T> Forward(const Tensor<T>& x, Cache* cache) {
    Tensor<T> y = x;
    for (int64_t i = 0; i < y.size(); ++i) {
      y[i] = T(1) / (T(1) + std::exp(-y[i]));
    }
    if (cache) cache->y = y;
    return y;
  }
  static Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    Tensor<T> dx = dy;
    for (int64_t i = 0; i < dx.size(); ++i) {
      dx[i] *= cache.y[i] * (T(1) - cache.y[i]);
    }
    return dx;
  }
};

template <typename T>
struct TanhAct {
  struct Cache {
    Tensor<T> y;
  };
  static Tensor<T> Forward(const Tensor<T>& x, Cache* cache) {
    Tensor<T> y = x;
    for (int64_t i = 0; i < y.size(); ++i) y[i] = std::tanh(y[i]);
    if (cache) cache->y = y;
    return y;
  }
  static Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    Tensor<T> dx = dy;
    for (int64_t i = 0; i < dx.size(); ++i) {
      dx[i] *= T(1) - cache.y[i] * cache.y[i];
    }
    return dx;
  }
};

// Batch renormalization (r_max=3, d_max=5, momentum 0.99).  Works on {N, D}
// (per-feature stats over N) or {N, C, W} (per-channel stats over N*W).
// The correction factors r and d are constants in backward.  Running stats
// move only via CommitUpdate, so repeated forwards are deterministic.
template <typename T>
class BatchRenorm {
 public:
  BatchRenorm(const std::string& name, int64_t dim)
      : gamma(name + ".gamma", Tensor<T>::Full({dim}, T(1))),
        beta(name + ".beta", Tensor<T>({dim})),
        running_mean({dim}), running_var(Tensor<T>::Full({dim}, T(1))) {}

  struct Cache {
    Tensor<T> u;                     // (x - mu_b) / sigma_b, input shape
    std::vector<double> inv_sigma;   // 1/sigma used per dim
    std::vector<double> r;           // renorm factor per dim (1.0 in infer)
    std::vector<double> dshift;      // renorm shift per dim (0.0 in infer)
    std::vector<double> batch_mean, batch_var;
    int64_t reduce_count = 0;
    Mode mode = Mode::kInfer;
  };

  int64_t dim() const { return gamma.value.dim(0); }

  Tensor<T> Forward(const Tensor<T>& x, Mode mode, Cache* cache) const {
    const auto [outer, inner] = Layout(x);
    std::vector<double> mean(dim()), var(dim());
    if (mode == Mode::kTrain) {
      BatchStats(x, outer, inner, &mean, &var);
    } else {
      for (int64_t d = 0; d < dim(); ++d) {
        mean[d] = running_mean[d];
        var[d] = running_var[d];
      }
    }
    std::vector<double> inv_sigma(dim()), r(dim()), dshift(dim());
    for (int64_t d = 0; d < dim(); ++d) {
      inv_sigma[d] = 1.0 / std::sqrt(var[d] + kEps);
      if (mode == Mode::kTrain) {
        const double sigma_b = std::sqrt(var[d] + kEps);
        const double sigma_r = std::sqrt(static_cast<double>(running_var[d]) + kEps);
        r[d] = std::clamp(sigma_b / sigma_r, 1.0 / kRMax, kRMax);
        dshift[d] = std::clamp(
            (mean[d] - static_cast<double>(running_mean[d])) / sigma_r, -kDMax,
            kDMax);
      } else {
        r[d] = 1.0;
        dshift[d] = 0.0;
      }
    }

    Tensor<T> y(x.shape());
    Tensor<T> u(x.shape());
    ForEach(x, outer, inner, [&](int64_t idx, int64_t d) {
      const double uv = (static_cast<double>(x[idx]) - mean[d]) * inv_sigma[d];
      const double xhat = uv * r[d] + dshift[d];
      u[idx] = static_cast<T>(uv);
      y[idx] = static_cast<T>(static_cast<double>(gamma.value[d]) * xhat +
                              static_cast<double>(beta.value[d]));
    });
    if (cache) {
      cache->u = std::move(u);
      cache->inv_sigma = std::move(inv_sigma);
      cache->r = std::move(r);
      cache->dshift = std::move(dshift);
      cache->batch_mean = std::move(mean);
      cache->batch_var = std::move(var);
      cache->reduce_count = outer * inner;
      cache->mode = mode;
    }
    return y;
  }

  Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    const auto [outer, inner] = Layout(dy);
    const int64_t n = cache.reduce_count;
    // dgamma, dbeta and the two per-dim reductions of the batch-norm chain.
    std::vector<double> sum_du(dim(), 0.0), sum_du_u(dim(), 0.0);
    ForEach(dy, outer, inner, [&](int64_t idx, int64_t d) {
      // y = gamma * (r*u + dshift) + beta
      const double xhat =
          static_cast<double>(cache.u[idx]) * cache.r[d] + cache.dshift[d];
      gamma.grad[d] += static_cast<T>(dy[idx] * xhat);
      beta.grad[d] += dy[idx];
      const double du = static_cast<double>(dy[idx]) *
                        static_cast<double>(gamma.value[d]) * cache.r[d];
      sum_du[d] += du;
      sum_du_u[d] += du * static_cast<double>(cache.u[idx]);
    });
    Tensor<T> dx(dy.shape());
    if (cache.mode == Mode::kTrain) {
      ForEach(dy, outer, inner, [&](int64_t idx, int64_t d) {
        const double du = static_cast<double>(dy[idx]) *
                          static_cast<double>(gamma.value[d]) * cache.r[d];
        const double val =
            cache.inv_sigma[d] *
            (du - sum_du[d] / n -
             static_cast<double>(cache.u[idx]) * sum_du_u[d] / n);
        dx[idx] = static_cast<T>(val);
      });
    } else {
      ForEach(dy, outer, inner, [&](int64_t idx, int64_t d) {
        dx[idx] = static_cast<T>(static_cast<double>(dy[idx]) *
                                 static_cast<double>(gamma.value[d]) *
                                 cache.inv_sigma[d]);
      });
    }
    return dx;
  }

  // Folds the cached batch statistics into the running estimates.
  void CommitUpdate(const Cache& cache) {
    if (cache.mode != Mode::kTrain) return;
    for (int64_t d = 0; d < dim(); ++d) {
      running_mean[d] = static_cast<T>(kMomentum * running_mean[d] +
                                       (1.0 - kMomentum) * cache.batch_mean[d]);
      running_var[d] = static_cast<T>(kMomentum * running_var[d] +
                                      (1.0 - kMomentum) * cache.batch_var[d]);
    }
  }

  std::vector<Parameter<T>*> Params() { return {&gamma, &beta}; }

  Parameter<T> gamma;
  Parameter<T> beta;
  Tensor<T> running_mean;
  Tensor<T> running_var;

  static constexpr double kRMax = 3.0;
  static constexpr double kDMax = 5.0;
  static constexpr double kMomentum = 0.99;
  static constexpr double kEps = 1e-5;

 private:
  // {N, D}: inner=1; {N, C, W}: inner=W. Feature dim is always dim 1.
  std::pair<int64_t, int64_t> Layout(const Tensor<T>& x) const {
    if (x.rank() == 2 && x.dim(1) == dim()) return {x.dim(0), 1};
    if (x.rank() == 3 && x.dim(1) == dim()) return {x.dim(0), x.dim(2)};
    throw ConfigError("batch renorm " + gamma.name + ": bad input shape " +
                      ShapeToString(x.shape()));
  }

  template <typename F>
  void ForEach(const Tensor<T>& x, int64_t outer, int64_t inner, F&& f) const {
    for (int64_t o = 0; o < outer; ++o) {
      for (int64_t d = 0; d < dim(); ++d) {
        const int64_t base = (o * dim() + d) * inner;
        for (int64_t i = 0; i < inner; ++i) f(base + i, d);
      }
    }
  }

  void BatchStats(const Tensor<T>& x, int64_t outer, int64_t inner,
                  std::vector<double>* mean, std::vector<double>* var) const {
    const double n = static_cast<double>(outer * inner);
    std::vector<double> sum(dim(), 0.0), sumsq(dim(), 0.0);
    ForEach(x, outer, inner, [&](int64_t idx, int64_t d) {
      const double v = x[idx];
      sum[d] += v;
      sumsq[d] += v * v;
    });
    for (int64_t d = 0; d < dim(); ++d) {
      (*mean)[d] = sum[d] / n;
      (*var)[d] = std::max(sumsq[d] / n - (*mean)[d] * (*mean)[d], 0.0);
    }
  }
};

// 1-D convolution along the last axis, stride 1, zero "same" padding.
// x {N, Cin, W} -> y {N, Cout, W}; kernel {Cout, Cin, K}, K odd.
template <typename T>
class Conv1d {
 public:
  Conv1d(const std::string& name, int64_t in_ch, int64_t out_ch,
         int64_t kernel, uint64_t seed, bool has_bias = true)
      : w(name + ".w",
          XavierInit<T>({out_ch, in_ch, kernel}, DeriveSeed(seed, name + ".w"))),
        b(name + ".b", Tensor<T>({out_ch})), has_bias_(has_bias) {
    if (kernel % 2 == 0) {
      throw ConfigError("conv1d " + name + ": kernel width must be odd");
    }
  }

  struct Cache {
    Tensor<T> x;
  };

  int64_t in_channels() const { return w.value.dim(1); }
  int64_t out_channels() const { return w.value.dim(0); }
  int64_t kernel() const { return w.value.dim(2); }

  Tensor<T> Forward(const Tensor<T>& x, Cache* cache) const {
    CheckInput(x);
    const int64_t n = x.dim(0), width = x.dim(2);
    const int64_t half = kernel() / 2;
    Tensor<T> y({n, out_channels(), width});
    // im2col per sample: col {Cin*K, W}, y_i = Wmat col + b.
    Tensor<T> col({in_channels() * kernel(), width});
    for (int64_t i = 0; i < n; ++i) {
      BuildColumns(x, i, half, &col);
      GemmNN(w.value.data(), out_channels(), in_channels() * kernel(),
             col.data(), width, y.data() + i * out_channels() * width);
      if (has_bias_) {
        for (int64_t co = 0; co < out_channels(); ++co) {
          T* row = y.data() + (i * out_channels() + co) * width;
          for (int64_t t = 0; t < width; ++t) row[t] += b.value[co];
        }
      }
    }
    if (cache) cache->x = x;
    return y;
  }

  Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    const Tensor<T>& x = cache.x;
    const int64_t n = x.dim(0), width = x.dim(2);
    const int64_t half = kernel() / 2;
    Tensor<T> dx(x.shape());
    Tensor<T> col({in_channels() * kernel(), width});
    Tensor<T> dcol({in_channels() * kernel(), width});
    for (int64_t i = 0; i < n; ++i) {
      const T* dyi = dy.data() + i * out_channels() * width;
      BuildColumns(x, i, half, &col);
      // dW += dy_i col^T ; db += row sums ; dcol = W^T dy_i.
      GemmNT(dyi, out_channels(), width, col.data(),
             in_channels() * kernel(), w.grad.data(), /*accumulate=*/true);
      if (has_bias_) {
        for (int64_t co = 0; co < out_channels(); ++co) {
          const T* row = dyi + co * width;
          for (int64_t t = 0; t < width; ++t) b.grad[co] += row[t];
        }
      }
      GemmTN(w.value.data(), out_channels(), in_channels() * kernel(), dyi,
             width, dcol.data());
      // Scatter columns back into dx with the same padding clamp.
      for (int64_t ci = 0; ci < in_channels(); ++ci) {
        for (int64_t k = 0; k < kernel(); ++k) {
          const T* src = dcol.data() + (ci * kernel() + k) * width;
          T* dst = dx.data() + (i * in_channels() + ci) * width;
          for (int64_t t = 0; t < width; ++t) {
            const int64_t pos = t + k - half;
            if (pos >= 0 && pos < width) dst[pos] += src[t];
          }
        }
      }
    }
    return dx;
  }

  std::vector<Parameter<T>*> Params() {
    if (has_bias_) return {&w, &b};
    return {&w};
  }

  Parameter<T> w;
  Parameter<T> b;

 private:
  bool has_bias_ = true;

  void CheckInput(const Tensor<T>& x) const {
    if (x.rank() != 3 || x.dim(1) != in_channels()) {
      throw ConfigError("conv1d " + w.name + ": bad input shape " +
                        ShapeToString(x.shape()));
    }
  }

  void BuildColumns(const Tensor<T>& x, int64_t sample, int64_t half,
                    Tensor<T>* col) const {
    const int64_t width = x.dim(2);
    for (int64_t ci = 0; ci < in_channels(); ++ci) {
      const T* src = x.data() + (sample * in_channels() + ci) * width;
      for (int64_t k = 0; k < kernel(); ++k) {
        T* dst = col->data() + (ci * kernel() + k) * width;
        for (int64_t t = 0; t < width; ++t) {
          const int64_t pos = t + k - half;
          dst[t] = (pos >= 0 && pos < width) ? src[pos] : T(0);
        }
      }
    }
  }
};

}  // namespace derev

#endif  // DEREV_NN_LAYERS_H_
