// include/derev/nn/discriminator.h

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

#ifndef DEREV_NN_DISCRIMINATOR_H_
#define DEREV_NN_DISCRIMINATOR_H_

#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "derev/core/rng.h"
#include "derev/nn/config.h"
#include "derev/nn/layers.h"
#include "derev/nn/lstmp.h"

namespace derev {

// 2-layer LSTMP scorer.  Per-frame linear score; utterance score is the mean
// over valid frames; the returned value is the batch mean, so the score is
// length-invariant and unbounded (least-squares targets, no sigmoid).
// Instance Gaussian noise is added to the feature input only, never to the
// condition.
template <typename T>
class Discriminator {
 public:
  Discriminator(const DiscriminatorConfig& config, uint64_t seed)
      : config_(config) {
    int64_t in = config.input_dim();
    for (int64_t l = 0; l < config.layers; ++l) {
      layers_.emplace_back("disc.l" + std::to_string(l), in, config.cells,
                           config.proj, seed);
      in = config.proj;
    }
    score_ = std::make_unique<Affine<T>>("disc.out", config.proj, 1, seed);
  }

  const DiscriminatorConfig& config() const { return config_; }

  struct Cache {
    std::vector<typename Lstmp<T>::Cache> layers;
    typename Affine<T>::Cache score;
    std::vector<int64_t> lens;
    int64_t steps = 0, batch = 0;
    bool conditional = false;
  };

  std::unique_ptr<Cache> MakeCache() const {
    auto c = std::make_unique<Cache>();
    c->layers.resize(layers_.size());
    return c;
  }

  // feats {S, B, F}; cond {S, B, C} or nullptr (required iff conditional).
  // noise_sigma > 0 draws fresh N(0, sigma^2) per call from rng.
  double Forward(const Tensor<T>& feats, const Tensor<T>* cond,
                 const std::vector<int64_t>& lens, double noise_sigma,
                 Rng* rng, Cache* cache) const {
    if (config_.conditional && cond == nullptr) {
      throw ConfigError("conditional discriminator needs a condition input");
    }
    if (feats.dim(2) != config_.feature_dim) {
      throw ConfigError("discriminator: feature width mismatch");
    }
    if (cond != nullptr && config_.conditional &&
        cond->dim(0) != feats.dim(0)) {
      throw ConfigError("discriminator: condition frame count mismatch");
    }
    const int64_t steps = feats.dim(0), batch = feats.dim(1);

    Tensor<T> x = AssembleInput(feats, cond, noise_sigma, rng);
    Tensor<T> h = std::move(x);
    for (size_t l = 0; l < layers_.size(); ++l) {
      h = layers_[l].Forward(h, cache ? &cache->layers[l] : nullptr);
    }
    Tensor<T> flat = std::move(h).Reshaped({steps * batch, config_.proj});
    const Tensor<T> scores =
        score_->Forward(flat, cache ? &cache->score : nullptr);

    double total = 0.0;
    for (int64_t b = 0; b < batch; ++b) {
      double acc = 0.0;
      for (int64_t t = 0; t < lens[b]; ++t) {
        acc += static_cast<double>(scores[(t * batch + b)]);
      }
      total += acc / static_cast<double>(lens[b]);
    }
    if (cache) {
      cache->lens = lens;
      cache->steps = steps;
      cache->batch = batch;
      cache->conditional = config_.conditional;
    }
    return total / static_cast<double>(batch);
  }

  // dscore = dLoss/d(batch-mean score).  Returns dLoss/dfeats {S, B, F}
  // (additive noise passes gradients through); parameter grads accumulate.
  Tensor<T> Backward(double dscore, Cache* cache) {
    const int64_t steps = cache->steps, batch = cache->batch;
    Tensor<T> dscores({steps * batch, 1});
    for (int64_t b = 0; b < batch; ++b) {
      const T g = static_cast<T>(dscore / (static_cast<double>(batch) *
                                           static_cast<double>(cache->lens[b])));
      for (int64_t t = 0; t < cache->lens[b]; ++t) {
        dscores[t * batch + b] = g;
      }
    }
    Tensor<T> d = score_->Backward(dscores, cache->score)
                      .Reshaped({steps, batch, config_.proj});
    for (size_t l = layers_.size(); l-- > 0;) {
      d = layers_[l].Backward(d, cache->layers[l]);
    }
    if (!cache->conditional) return d;
    // Slice off the condition part: gradients flow only to the features.
    Tensor<T> dfeat({steps, batch, config_.feature_dim});
    for (int64_t t = 0; t < steps; ++t) {
      for (int64_t b = 0; b < batch; ++b) {
        std::memcpy(dfeat.row_ptr(t, b), d.row_ptr(t, b),
                    sizeof(T) * static_cast<size_t>(config_.feature_dim));
      }
    }
    return dfeat;
  }

  std::vector<Parameter<T>*> Params() {
    std::vector<Parameter<T>*> out;
    for (auto& l : layers_) {
      for (auto* p : l.Params()) out.push_back(p);
    }
    for (auto* p : score_->Params()) out.push_back(p);
    return out;
  }

  nlohmann::json Descriptor() const {
    return {{"arch", "discriminator"},
            {"layers", config_.layers},
            {"cells", config_.cells},
            {"proj", config_.proj},
            {"conditional", config_.conditional},
            {"feature_dim", config_.feature_dim},
            {"condition_dim", config_.condition_dim}};
  }

 private:
  Tensor<T> AssembleInput(const Tensor<T>& feats, const Tensor<T>* cond,
                          double noise_sigma, Rng* rng) const {
    const int64_t steps = feats.dim(0), batch = feats.dim(1);
    const int64_t fdim = config_.feature_dim;
    const bool use_cond = config_.conditional;
    const int64_t in = config_.input_dim();
    Tensor<T> x({steps, batch, in});
    for (int64_t t = 0; t < steps; ++t) {
      for (int64_t b = 0; b < batch; ++b) {
        T* dst = x.row_ptr(t, b);
        const T* src = feats.row_ptr(t, b);
        if (noise_sigma > 0.0 && rng != nullptr) {
          for (int64_t d = 0; d < fdim; ++d) {
            dst[d] = src[d] + static_cast<T>(rng->Gaussian(0.0, noise_sigma));
          }
        } else {
          std::memcpy(dst, src, sizeof(T) * static_cast<size_t>(fdim));
        }
        if (use_cond) {
          std::memcpy(dst + fdim, cond->row_ptr(t, b),
                      sizeof(T) * static_cast<size_t>(config_.condition_dim));
        }
      }
    }
    return x;
  }

  DiscriminatorConfig config_;
  std::vector<Lstmp<T>> layers_;
  std::unique_ptr<Affine<T>> score_;
};

}  // namespace derev

#endif  // DEREV_NN_DISCRIMINATOR_H_
