// include/derev/nn/lstmp.h

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

#ifndef DEREV_NN_LSTMP_H_
#define DEREV_NN_LSTMP_H_

#include <cmath>
#include <string>
#include <vector>

#include "derev/core/init.h"
#include "derev/core/kernels.h"
#include "derev/core/param.h"
#include "derev/core/rng.h"
#include "derev/core/tensor.h"
#include "derev/util/errors.h"

namespace derev {

// LSTM with a linear recurrent projection, no peepholes.  Gate order in the
// stacked 4C dimension: input, forget, cell candidate, output.
//
//   z_t = x_t Wx^T + r_{t-1} Wr^T + b
//   i = sig(z_i), f = sig(z_f), g = tanh(z_g), o = sig(z_o)
//   c_t = f.c_{t-1} + i.g
//   m_t = o.tanh(c_t)
//   r_t = m_t Wp^T            (layer output, dim proj)
//
// Sequences are {S, B, D}.  State starts at zero per utterance; batches of
// padded utterances rely on the loss masking padded frames, which leaves all
// padded-region gradients exactly zero (the recurrence is causal).
template <typename T>
class Lstmp {
 public:
  Lstmp(const std::string& name, int64_t in, int64_t cells, int64_t proj,
        uint64_t seed)
      : wx(name + ".wx",
           XavierInit<T>({4 * cells, in}, DeriveSeed(seed, name + ".wx"))),
        wr(name + ".wr",
           XavierInit<T>({4 * cells, proj}, DeriveSeed(seed, name + ".wr"))),
        b(name + ".b", Tensor<T>({4 * cells})),
        wp(name + ".wp",
           XavierInit<T>({proj, cells}, DeriveSeed(seed, name + ".wp"))) {
    // Forget gate bias starts at 1 so early training does not flush state.
    for (int64_t i = cells; i < 2 * cells; ++i) b.value[i] = T(1);
  }

  int64_t in_dim() const { return wx.value.dim(1); }
  int64_t cells() const { return wp.value.dim(1); }
  int64_t proj() const { return wp.value.dim(0); }

  struct Cache {
    Tensor<T> x;       // {S, B, in}
    Tensor<T> gates;   // {S, B, 4C} post-activation (i, f, g, o)
    Tensor<T> c;       // {S, B, C}
    Tensor<T> tanh_c;  // {S, B, C}
    Tensor<T> r;       // {S, B, P}
  };

  Tensor<T> Forward(const Tensor<T>& x, Cache* cache) const {
    if (x.rank() != 3 || x.dim(2) != in_dim()) {
      throw ConfigError("lstmp " + wx.name + ": bad input shape " +
                        ShapeToString(x.shape()));
    }
    const int64_t steps = x.dim(0), batch = x.dim(1);
    const int64_t C = cells(), P = proj(), G = 4 * C;

    Tensor<T> gates({steps, batch, G});
    Tensor<T> c({steps, batch, C});
    Tensor<T> tanh_c({steps, batch, C});
    Tensor<T> r({steps, batch, P});
    Tensor<T> m({batch, C});

    for (int64_t t = 0; t < steps; ++t) {
      T* z = gates.data() + t * batch * G;
      GemmNT(x.data() + t * batch * in_dim(), batch, in_dim(), wx.value.data(),
             G, z);
      if (t > 0) {
        GemmNT(r.data() + (t - 1) * batch * P, batch, P, wr.value.data(), G, z,
               /*accumulate=*/true);
      }
      for (int64_t bi = 0; bi < batch; ++bi) {
        T* zb = z + bi * G;
        const T* c_prev = t > 0 ? c.row_ptr(t - 1, bi) : nullptr;
        T* ct = c.row_ptr(t, bi);
        T* tct = tanh_c.row_ptr(t, bi);
        T* mt = m.data() + bi * C;
        for (int64_t j = 0; j < C; ++j) {
          const T zi = zb[j] + b.value[j];
          const T zf = zb[C + j] + b.value[C + j];
          const T zg = zb[2 * C + j] + b.value[2 * C + j];
          const T zo = zb[3 * C + j] + b.value[3 * C + j];
          const T ig = T(1) / (T(1) + std::exp(-zi));
          const T fg = T(1) / (T(1) + std::exp(-zf));
          const T gg = std::tanh(zg);
          const T og = T(1) / (T(1) + std::exp(-zo));
          zb[j] = ig;
          zb[C + j] = fg;
          zb[2 * C + j] = gg;
          zb[3 * C + j] = og;
          const T prev = c_prev ? c_prev[j] : T(0);
          ct[j] = fg * prev + ig * gg;
          tct[j] = std::tanh(ct[j]);
          mt[j] = og * tct[j];
        }
      }
      GemmNT(m.data(), batch, C, wp.value.data(), P,
             r.data() + t * batch * P);
    }
    if (cache) {
      cache->x = x;
      cache->gates = std::move(gates);
      cache->c = std::move(c);
      cache->tanh_c = std::move(tanh_c);
      cache->r = r;
    }
    return r;
  }

  // dy {S, B, P} -> dx {S, B, in}; accumulates parameter grads.
  Tensor<T> Backward(const Tensor<T>& dy, const Cache& cache) {
    const int64_t steps = cache.x.dim(0), batch = cache.x.dim(1);
    const int64_t C = cells(), P = proj(), G = 4 * C;

    Tensor<T> dx(cache.x.shape());
    Tensor<T> dz({batch, G});         // gate pre-activation grads at step t
    Tensor<T> dz_next({batch, G});    // from step t+1
    Tensor<T> dc_carry({batch, C});
    Tensor<T> dr({batch, P});
    Tensor<T> dm({batch, C});
    Tensor<T> m({batch, C});
    bool have_next = false;

    for (int64_t t = steps - 1; t >= 0; --t) {
      // dr_t = dy_t + dz_{t+1} Wr
      for (int64_t i = 0; i < batch * P; ++i) {
        dr[i] = dy[t * batch * P + i];
      }
      if (have_next) {
        GemmNN(dz_next.data(), batch, G, wr.value.data(), P, dr.data(),
               /*accumulate=*/true);
      }

      // m_t = o.tanh_c ; dWp += dr^T m ; dm = dr Wp
      for (int64_t bi = 0; bi < batch; ++bi) {
        const T* gt = cache.gates.row_ptr(t, bi);
        const T* tct = cache.tanh_c.row_ptr(t, bi);
        T* mt = m.data() + bi * C;
        for (int64_t j = 0; j < C; ++j) mt[j] = gt[3 * C + j] * tct[j];
      }
      GemmTN(dr.data(), batch, P, m.data(), C, wp.grad.data(),
             /*accumulate=*/true);
      GemmNN(dr.data(), batch, P, wp.value.data(), C, dm.data());

      for (int64_t bi = 0; bi < batch; ++bi) {
        const T* gt = cache.gates.row_ptr(t, bi);
        const T* tct = cache.tanh_c.row_ptr(t, bi);
        const T* c_prev = t > 0 ? cache.c.row_ptr(t - 1, bi) : nullptr;
        T* dzb = dz.data() + bi * G;
        T* dcc = dc_carry.data() + bi * C;
        const T* dmb = dm.data() + bi * C;
        for (int64_t j = 0; j < C; ++j) {
          const T ig = gt[j], fg = gt[C + j], gg = gt[2 * C + j],
                  og = gt[3 * C + j];
          const T d_o = dmb[j] * tct[j];
          // dc gets the tanh branch plus the carry from step t+1.
          const T dc = dmb[j] * og * (T(1) - tct[j] * tct[j]) + dcc[j];
          const T d_i = dc * gg;
          const T d_g = dc * ig;
          const T prev = c_prev ? c_prev[j] : T(0);
          const T d_f = dc * prev;
          dcc[j] = dc * fg;  // carry to step t-1
          dzb[j] = d_i * ig * (T(1) - ig);
          dzb[C + j] = d_f * fg * (T(1) - fg);
          dzb[2 * C + j] = d_g * (T(1) - gg * gg);
          dzb[3 * C + j] = d_o * og * (T(1) - og);
        }
      }

      // Parameter grads and input grad for step t.
      GemmTN(dz.data(), batch, G, cache.x.data() + t * batch * in_dim(),
             in_dim(), wx.grad.data(), /*accumulate=*/true);
      if (t > 0) {
        GemmTN(dz.data(), batch, G, cache.r.data() + (t - 1) * batch * P, P,
               wr.grad.data(), /*accumulate=*/true);
      }
      for (int64_t bi = 0; bi < batch; ++bi) {
        const T* dzb = dz.data() + bi * G;
        for (int64_t j = 0; j < G; ++j) b.grad[j] += dzb[j];
      }
      GemmNN(dz.data(), batch, G, wx.value.data(), in_dim(),
             dx.data() + t * batch * in_dim());

      std::swap(dz, dz_next);
      have_next = true;
    }
    return dx;
  }

  std::vector<Parameter<T>*> Params() { return {&wx, &wr, &b, &wp}; }

  Parameter<T> wx;  // {4C, in}
  Parameter<T> wr;  // {4C, P}
  Parameter<T> b;   // {4C}
  Parameter<T> wp;  // {P, C}
};

}  // namespace derev

#endif  // DEREV_NN_LSTMP_H_
