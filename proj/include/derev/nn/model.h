// include/derev/nn/model.h

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

// Enhancer architectures.  Every model exposes a padded-utterance-batch
// interface {S, B, Din} -> {S, B, Dout}; frame models (DNN, RCED) additionally
// expose their native spliced-row interface for frame-batched training.

#ifndef DEREV_NN_MODEL_H_
#define DEREV_NN_MODEL_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "derev/nn/config.h"
#include "derev/nn/layers.h"
#include "derev/nn/lstmp.h"
#include "derev/nn/splice.h"

namespace derev {

template <typename T>
struct SeqCacheBase {
  virtual ~SeqCacheBase() = default;
};

template <typename T>
class Enhancer {
 public:
  virtual ~Enhancer() = default;

  virtual ArchKind arch() const = 0;
  virtual FeatureKind input_kind() const = 0;
  virtual FeatureKind target_kind() const = 0;
  virtual int64_t output_dim() const = 0;
  virtual bool HasRecurrence() const = 0;

  virtual std::vector<Parameter<T>*> Params() = 0;
  // Non-trainable tensors that belong in checkpoints (BRN running stats).
  virtual std::vector<std::pair<std::string, Tensor<T>*>> StateTensors() {
    return {};
  }
  virtual nlohmann::json Descriptor() const = 0;

  virtual std::unique_ptr<SeqCacheBase<T>> MakeCache() const = 0;
  // x {S, B, Din}; lens[b] = valid frames of utterance b (rest is padding).
  virtual Tensor<T> ForwardSeq(const Tensor<T>& x,
                               const std::vector<int64_t>& lens, Mode mode,
                               SeqCacheBase<T>* cache) const = 0;
  virtual Tensor<T> BackwardSeq(const Tensor<T>& dout,
                                SeqCacheBase<T>* cache) = 0;
  virtual void CommitBatchStats(SeqCacheBase<T>* /*cache*/) {}
};

// ---------------------------------------------------------------------------
// Frame models: spliced-row core plus a seq adapter that splices per
// utterance (edge replication happens inside each utterance's valid range).

template <typename T>
class FrameEnhancer : public Enhancer<T> {
 public:
  struct RowCacheBase {
    virtual ~RowCacheBase() = default;
  };

  virtual int context() const = 0;
  virtual int64_t feature_dim() const = 0;  // un-spliced input width

  virtual std::unique_ptr<RowCacheBase> MakeRowCache() const = 0;
  virtual Tensor<T> ForwardRows(const Tensor<T>& rows, Mode mode,
                                RowCacheBase* cache) const = 0;
  virtual Tensor<T> BackwardRows(const Tensor<T>& drows,
                                 RowCacheBase* cache) = 0;
  virtual void CommitRowStats(RowCacheBase* /*cache*/) {}

  bool HasRecurrence() const override { return false; }

  struct SeqCache : SeqCacheBase<T> {
    std::unique_ptr<RowCacheBase> rows;
    std::vector<int64_t> lens;
    std::vector<int64_t> offsets;  // row offset per batch item
    int64_t steps = 0;
  };

  std::unique_ptr<SeqCacheBase<T>> MakeCache() const override {
    return std::make_unique<SeqCache>();
  }

  Tensor<T> ForwardSeq(const Tensor<T>& x, const std::vector<int64_t>& lens,
                       Mode mode, SeqCacheBase<T>* cache) const override {
    const int64_t steps = x.dim(0), batch = x.dim(1), dim = x.dim(2);
    const int64_t window = 2 * context() + 1;
    int64_t total = 0;
    std::vector<int64_t> offsets(batch);
    for (int64_t b = 0; b < batch; ++b) {
      offsets[b] = total;
      total += lens[b];
    }
    Tensor<T> rows({total, window * dim});
    Tensor<T> utt;
    for (int64_t b = 0; b < batch; ++b) {
      utt = Tensor<T>({lens[b], dim});
      for (int64_t t = 0; t < lens[b]; ++t) {
        std::memcpy(utt.data() + t * dim, x.row_ptr(t, b),
                    sizeof(T) * static_cast<size_t>(dim));
      }
      const Tensor<T> spliced = SpliceContext(utt, context());
      std::memcpy(rows.data() + offsets[b] * window * dim, spliced.data(),
                  sizeof(T) * static_cast<size_t>(spliced.size()));
    }

    auto* sc = static_cast<SeqCache*>(cache);
    std::unique_ptr<RowCacheBase> row_cache;
    if (cache) row_cache = MakeRowCache();
    const Tensor<T> out_rows = ForwardRows(rows, mode, row_cache.get());

    Tensor<T> y({steps, batch, output_dim_impl()});
    for (int64_t b = 0; b < batch; ++b) {
      for (int64_t t = 0; t < lens[b]; ++t) {
        std::memcpy(y.row_ptr(t, b),
                    out_rows.data() + (offsets[b] + t) * output_dim_impl(),
                    sizeof(T) * static_cast<size_t>(output_dim_impl()));
      }
    }
    if (sc) {
      sc->rows = std::move(row_cache);
      sc->lens = lens;
      sc->offsets = std::move(offsets);
      sc->steps = steps;
    }
    return y;
  }

  Tensor<T> BackwardSeq(const Tensor<T>& dout,
                        SeqCacheBase<T>* cache) override {
    auto* sc = static_cast<SeqCache*>(cache);
    const int64_t batch = static_cast<int64_t>(sc->lens.size());
    const int64_t dim = feature_dim();
    const int64_t window = 2 * context() + 1;
    int64_t total = 0;
    for (int64_t l : sc->lens) total += l;

    Tensor<T> drows({total, output_dim_impl()});
    for (int64_t b = 0; b < batch; ++b) {
      for (int64_t t = 0; t < sc->lens[b]; ++t) {
        std::memcpy(drows.data() + (sc->offsets[b] + t) * output_dim_impl(),
                    dout.row_ptr(t, b),
                    sizeof(T) * static_cast<size_t>(output_dim_impl()));
      }
    }
    const Tensor<T> dspliced = BackwardRows(drows, sc->rows.get());

    Tensor<T> dx({sc->steps, batch, dim});
    for (int64_t b = 0; b < batch; ++b) {
      Tensor<T> block({sc->lens[b], window * dim});
      std::memcpy(block.data(),
                  dspliced.data() + sc->offsets[b] * window * dim,
                  sizeof(T) * static_cast<size_t>(block.size()));
      const Tensor<T> dutt =
          SpliceBackward(block, sc->lens[b], dim, context());
      for (int64_t t = 0; t < sc->lens[b]; ++t) {
        std::memcpy(dx.row_ptr(t, b), dutt.data() + t * dim,
                    sizeof(T) * static_cast<size_t>(dim));
      }
    }
    return dx;
  }

  void CommitBatchStats(SeqCacheBase<T>* cache) override {
    auto* sc = static_cast<SeqCache*>(cache);
    if (sc && sc->rows) CommitRowStats(sc->rows.get());
  }

 protected:
  virtual int64_t output_dim_impl() const = 0;
};

// ---------------------------------------------------------------------------

template <typename T>
class DnnModel : public FrameEnhancer<T> {
 public:
  using RowCacheBase = typename FrameEnhancer<T>::RowCacheBase;

  DnnModel(const DnnConfig& config, uint64_t seed) : config_(config) {
    int64_t in = config.input_dim();
    for (int64_t l = 0; l < config.hidden_layers; ++l) {
      const std::string name = "dnn.h" + std::to_string(l);
      hidden_.emplace_back(name, in, config.hidden_units, seed,
                           /*has_bias=*/!config.batch_renorm);
      if (config.batch_renorm) {
        brn_.emplace_back(name + ".brn", config.hidden_units);
      }
      in = config.hidden_units;
    }
    out_ = std::make_unique<Affine<T>>("dnn.out", in, config.output_dim(), seed);
  }

  ArchKind arch() const override { return ArchKind::kDnn; }
  FeatureKind input_kind() const override { return config_.input_kind; }
  FeatureKind target_kind() const override { return config_.target_kind; }
  int64_t output_dim() const override { return config_.output_dim(); }
  int context() const override { return config_.context; }
  int64_t feature_dim() const override { return config_.feature_dim(); }
  const DnnConfig& config() const { return config_; }

  struct RowCache : RowCacheBase {
    std::vector<typename Affine<T>::Cache> affine;
    std::vector<typename BatchRenorm<T>::Cache> brn;
    std::vector<typename Relu<T>::Cache> relu;
    typename Affine<T>::Cache out;
  };

  std::unique_ptr<RowCacheBase> MakeRowCache() const override {
    auto c = std::make_unique<RowCache>();
    c->affine.resize(hidden_.size());
    c->brn.resize(brn_.size());
    c->relu.resize(hidden_.size());
    return c;
  }

  Tensor<T> ForwardRows(const Tensor<T>& rows, Mode mode,
                        RowCacheBase* cache) const override {
    auto* rc = static_cast<RowCache*>(cache);
    Tensor<T> h = rows;
    for (size_t l = 0; l < hidden_.size(); ++l) {
      h = hidden_[l].Forward(h, rc ? &rc->affine[l] : nullptr);
      if (!brn_.empty()) {
        h = brn_[l].Forward(h, mode, rc ? &rc->brn[l] : nullptr);
      }
      h = Relu<T>::Forward(h, rc ? &rc->relu[l] : nullptr);
    }
    return out_->Forward(h, rc ? &rc->out : nullptr);
  }

  Tensor<T> BackwardRows(const Tensor<T>& drows,
                         RowCacheBase* cache) override {
    auto* rc = static_cast<RowCache*>(cache);
    Tensor<T> d = out_->Backward(drows, rc->out);
    for (size_t l = hidden_.size(); l-- > 0;) {
      d = Relu<T>::Backward(d, rc->relu[l]);
      if (!brn_.empty()) d = brn_[l].Backward(d, rc->brn[l]);
      d = hidden_[l].Backward(d, rc->affine[l]);
    }
    return d;
  }

  void CommitRowStats(RowCacheBase* cache) override {
    auto* rc = static_cast<RowCache*>(cache);
    for (size_t l = 0; l < brn_.size(); ++l) brn_[l].CommitUpdate(rc->brn[l]);
  }

  std::vector<Parameter<T>*> Params() override {
    std::vector<Parameter<T>*> out;
    for (auto& a : hidden_) {
      for (auto* p : a.Params()) out.push_back(p);
    }
    for (auto& bn : brn_) {
      for (auto* p : bn.Params()) out.push_back(p);
    }
    for (auto* p : out_->Params()) out.push_back(p);
    return out;
  }

  std::vector<std::pair<std::string, Tensor<T>*>> StateTensors() override {
    std::vector<std::pair<std::string, Tensor<T>*>> out;
    for (size_t l = 0; l < brn_.size(); ++l) {
      out.emplace_back(brn_[l].gamma.name + ".running_mean",
                       &brn_[l].running_mean);
      out.emplace_back(brn_[l].gamma.name + ".running_var",
                       &brn_[l].running_var);
    }
    return out;
  }

  nlohmann::json Descriptor() const override {
    return {{"arch", "dnn"},
            {"hidden_layers", config_.hidden_layers},
            {"hidden_units", config_.hidden_units},
            {"context", config_.context},
            {"input_kind", FeatureKindName(config_.input_kind)},
            {"target_kind", FeatureKindName(config_.target_kind)},
            {"batch_renorm", config_.batch_renorm},
            {"feature_dim_override", config_.feature_dim_override},
            {"output_dim_override", config_.output_dim_override}};
  }

 protected:
  int64_t output_dim_impl() const override { return config_.output_dim(); }

 private:
  DnnConfig config_;
  std::vector<Affine<T>> hidden_;
  std::vector<BatchRenorm<T>> brn_;
  std::unique_ptr<Affine<T>> out_;
};

// ---------------------------------------------------------------------------

template <typename T>
class RcedModel : public FrameEnhancer<T> {
 public:
  using RowCacheBase = typename FrameEnhancer<T>::RowCacheBase;

  RcedModel(const RcedConfig& config, uint64_t seed) : config_(config) {
    if (config.channels.size() != config.widths.size() ||
        config.channels.empty()) {
      throw ConfigError("rced: channels and widths must match and be nonempty");
    }
    int64_t in_ch = 2 * config.context + 1;
    for (size_t l = 0; l < config.channels.size(); ++l) {
      const std::string name = "rced.c" + std::to_string(l);
      conv_.emplace_back(name, in_ch, config.channels[l], config.widths[l],
                         seed, /*has_bias=*/!config.batch_renorm);
      if (config.batch_renorm) {
        brn_.emplace_back(name + ".brn", config.channels[l]);
      }
      in_ch = config.channels[l];
    }
    out_ = std::make_unique<Affine<T>>(
        "rced.out", in_ch * config.freq_bins(), config.output_dim(), seed);
  }

  ArchKind arch() const override { return ArchKind::kRced; }
  FeatureKind input_kind() const override { return config_.input_kind; }
  FeatureKind target_kind() const override { return config_.target_kind; }
  int64_t output_dim() const override { return config_.output_dim(); }
  int context() const override { return config_.context; }
  int64_t feature_dim() const override { return config_.freq_bins(); }
  const RcedConfig& config() const { return config_; }

  struct RowCache : RowCacheBase {
    std::vector<typename Conv1d<T>::Cache> conv;
    std::vector<typename BatchRenorm<T>::Cache> brn;
    std::vector<typename Relu<T>::Cache> relu;
    typename Affine<T>::Cache out;
    int64_t rows = 0;
  };

  std::unique_ptr<RowCacheBase> MakeRowCache() const override {
    auto c = std::make_unique<RowCache>();
    c->conv.resize(conv_.size());
    c->brn.resize(brn_.size());
    c->relu.resize(conv_.size());
    return c;
  }

  Tensor<T> ForwardRows(const Tensor<T>& rows, Mode mode,
                        RowCacheBase* cache) const override {
    auto* rc = static_cast<RowCache*>(cache);
    const int64_t n = rows.dim(0);
    const int64_t window = 2 * config_.context + 1;
    const int64_t bins = config_.freq_bins();
    // Spliced rows are already [context frame][bin] contiguous.
    Tensor<T> h = rows.Reshaped({n, window, bins});
    for (size_t l = 0; l < conv_.size(); ++l) {
      h = conv_[l].Forward(h, rc ? &rc->conv[l] : nullptr);
      if (!brn_.empty()) {
        h = brn_[l].Forward(h, mode, rc ? &rc->brn[l] : nullptr);
      }
      h = Relu<T>::Forward(h, rc ? &rc->relu[l] : nullptr);
    }
    if (rc) rc->rows = n;
    return out_->Forward(
        std::move(h).Reshaped({n, config_.channels.back() * bins}),
        rc ? &rc->out : nullptr);
  }

  Tensor<T> BackwardRows(const Tensor<T>& drows,
                         RowCacheBase* cache) override {
    auto* rc = static_cast<RowCache*>(cache);
    const int64_t n = rc->rows;
    const int64_t window = 2 * config_.context + 1;
    const int64_t bins = config_.freq_bins();
    Tensor<T> d = out_->Backward(drows, rc->out)
                      .Reshaped({n, config_.channels.back(), bins});
    for (size_t l = conv_.size(); l-- > 0;) {
      d = Relu<T>::Backward(d, rc->relu[l]);
      if (!brn_.empty()) d = brn_[l].Backward(d, rc->brn[l]);
      d = conv_[l].Backward(d, rc->conv[l]);
    }
    return std::move(d).Reshaped({n, window * bins});
  }

  void CommitRowStats(RowCacheBase* cache) override {
    auto* rc = static_cast<RowCache*>(cache);
    for (size_t l = 0; l < brn_.size(); ++l) brn_[l].CommitUpdate(rc->brn[l]);
  }

  std::vector<Parameter<T>*> Params() override {
    std::vector<Parameter<T>*> out;
    for (auto& c : conv_) {
      for (auto* p : c.Params()) out.push_back(p);
    }
    for (auto& bn : brn_) {
      for (auto* p : bn.Params()) out.push_back(p);
    }
    for (auto* p : out_->Params()) out.push_back(p);
    return out;
  }

  std::vector<std::pair<std::string, Tensor<T>*>> StateTensors() override {
    std::vector<std::pair<std::string, Tensor<T>*>> out;
    for (size_t l = 0; l < brn_.size(); ++l) {
      out.emplace_back(brn_[l].gamma.name + ".running_mean",
                       &brn_[l].running_mean);
      out.emplace_back(brn_[l].gamma.name + ".running_var",
                       &brn_[l].running_var);
    }
    return out;
  }

  nlohmann::json Descriptor() const override {
    return {{"arch", "rced"},
            {"channels", config_.channels},
            {"widths", config_.widths},
            {"context", config_.context},
            {"input_kind", FeatureKindName(config_.input_kind)},
            {"target_kind", FeatureKindName(config_.target_kind)},
            {"batch_renorm", config_.batch_renorm},
            {"feature_dim_override", config_.feature_dim_override},
            {"output_dim_override", config_.output_dim_override}};
  }

 protected:
  int64_t output_dim_impl() const override { return config_.output_dim(); }

 private:
  RcedConfig config_;
  std::vector<Conv1d<T>> conv_;
  std::vector<BatchRenorm<T>> brn_;
  std::unique_ptr<Affine<T>> out_;
};

// ---------------------------------------------------------------------------

template <typename T>
class LstmpModel : public Enhancer<T> {
 public:
  LstmpModel(const LstmpConfig& config, uint64_t seed) : config_(config) {
    if (config.residual != Residual::kNone &&
        config.proj != config.input_dim()) {
      throw ConfigError(
          "residual LSTMP needs proj == input width (got proj=" +
          std::to_string(config.proj) + ", input=" +
          std::to_string(config.input_dim()) + ")");
    }
    int64_t in = config.input_dim();
    for (int64_t l = 0; l < config.layers; ++l) {
      layers_.emplace_back("lstmp.l" + std::to_string(l), in, config.cells,
                           config.proj, seed);
      in = config.proj;
    }
    out_ = std::make_unique<Affine<T>>("lstmp.out", config.proj,
                                       config.output_dim(), seed);
  }

  ArchKind arch() const override { return ArchKind::kLstmp; }
  FeatureKind input_kind() const override { return config_.input_kind; }
  FeatureKind target_kind() const override { return config_.target_kind; }
  int64_t output_dim() const override { return config_.output_dim(); }
  bool HasRecurrence() const override { return true; }
  const LstmpConfig& config() const { return config_; }

  struct SeqCache : SeqCacheBase<T> {
    std::vector<typename Lstmp<T>::Cache> layers;
    typename Affine<T>::Cache out;
    Shape in_shape;
  };

  std::unique_ptr<SeqCacheBase<T>> MakeCache() const override {
    auto c = std::make_unique<SeqCache>();
    c->layers.resize(layers_.size());
    return c;
  }

  Tensor<T> ForwardSeq(const Tensor<T>& x, const std::vector<int64_t>&,
                       Mode, SeqCacheBase<T>* cache) const override {
    auto* sc = static_cast<SeqCache*>(cache);
    const int64_t steps = x.dim(0), batch = x.dim(1);
    Tensor<T> h = x;
    for (size_t l = 0; l < layers_.size(); ++l) {
      Tensor<T> y = layers_[l].Forward(h, sc ? &sc->layers[l] : nullptr);
      switch (config_.residual) {
        case Residual::kNone:
          h = std::move(y);
          break;
        case Residual::kResLayer:
          for (int64_t i = 0; i < y.size(); ++i) y[i] += h[i];
          h = std::move(y);
          break;
        case Residual::kResInput:
          for (int64_t i = 0; i < y.size(); ++i) y[i] += x[i];
          h = std::move(y);
          break;
      }
    }
    if (sc) sc->in_shape = x.shape();
    Tensor<T> flat = std::move(h).Reshaped({steps * batch, config_.proj});
    Tensor<T> out = out_->Forward(flat, sc ? &sc->out : nullptr);
    return std::move(out).Reshaped({steps, batch, config_.output_dim()});
  }

  Tensor<T> BackwardSeq(const Tensor<T>& dout,
                        SeqCacheBase<T>* cache) override {
    auto* sc = static_cast<SeqCache*>(cache);
    const int64_t steps = dout.dim(0), batch = dout.dim(1);
    Tensor<T> dflat = out_->Backward(
        Tensor<T>(dout).Reshaped({steps * batch, config_.output_dim()}),
        sc->out);
    Tensor<T> d = std::move(dflat).Reshaped({steps, batch, config_.proj});

    Tensor<T> dinput_extra;  // accumulated Res-I contributions
    if (config_.residual == Residual::kResInput) {
      dinput_extra = Tensor<T>(sc->in_shape);
    }
    for (size_t l = layers_.size(); l-- > 0;) {
      if (config_.residual == Residual::kResInput) {
        for (int64_t i = 0; i < d.size(); ++i) dinput_extra[i] += d[i];
      }
      Tensor<T> dprev = layers_[l].Backward(d, sc->layers[l]);
      if (config_.residual == Residual::kResLayer) {
        for (int64_t i = 0; i < d.size(); ++i) dprev[i] += d[i];
      }
      d = std::move(dprev);
    }
    if (config_.residual == Residual::kResInput) {
      for (int64_t i = 0; i < d.size(); ++i) d[i] += dinput_extra[i];
    }
    return d;
  }

  std::vector<Parameter<T>*> Params() override {
    std::vector<Parameter<T>*> out;
    for (auto& l : layers_) {
      for (auto* p : l.Params()) out.push_back(p);
    }
    for (auto* p : out_->Params()) out.push_back(p);
    return out;
  }

  nlohmann::json Descriptor() const override {
    return {{"arch", "lstmp"},
            {"layers", config_.layers},
            {"cells", config_.cells},
            {"proj", config_.proj},
            {"residual", ResidualName(config_.residual)},
            {"input_kind", FeatureKindName(config_.input_kind)},
            {"target_kind", FeatureKindName(config_.target_kind)},
            {"feature_dim_override", config_.feature_dim_override},
            {"output_dim_override", config_.output_dim_override}};
  }

  const std::vector<Lstmp<T>>& layers() const { return layers_; }

 private:
  LstmpConfig config_;
  std::vector<Lstmp<T>> layers_;
  std::unique_ptr<Affine<T>> out_;
};

}  // namespace derev

#endif  // DEREV_NN_MODEL_H_
