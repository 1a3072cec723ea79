// src/train/data.cc

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

#include "derev/train/data.h"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <thread>

#include "derev/core/rng.h"
#include "derev/dsp/features.h"
#include "derev/dsp/stft.h"
#include "derev/dsp/wav.h"
#include "derev/nn/splice.h"
#include "derev/util/errors.h"

namespace derev {

namespace {

FeatureMatrix ExtractFeatures(const std::string& wav_path, FeatureKind kind,
                              const FrameConfig& cfg) {
  const WavData wav = ReadWav(wav_path);
  if (wav.sample_rate != cfg.sample_rate) {
    throw DataError("sample rate mismatch in " + wav_path);
  }
  const ComplexSpectrogram spec = Stft(wav.samples, cfg);
  return kind == FeatureKind::kLps ? Lps(spec) : Mfcc(spec);
}

struct RawUtt {
  std::string id, rir_id;
  FeatureMatrix input, target;
  Split split = Split::kTrain;
};

}  // namespace

TrainingData PrepareTrainingData(const DatasetManifest& manifest,
                                 FeatureKind input_kind,
                                 FeatureKind target_kind,
                                 const FrameConfig& frame_config,
                                 bool normalize_input, int jobs) {
  const auto& utts = manifest.utterances;
  std::vector<RawUtt> raw(utts.size());

  auto extract_one = [&](size_t i) {
    raw[i].id = utts[i].id;
    raw[i].rir_id = utts[i].rir_id;
    raw[i].split = utts[i].split;
    raw[i].input = ExtractFeatures(utts[i].reverb_path, input_kind, frame_config);
    raw[i].target = ExtractFeatures(utts[i].clean_path, target_kind, frame_config);
  };
  if (jobs <= 1) {
    for (size_t i = 0; i < utts.size(); ++i) extract_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < utts.size();
             i = next.fetch_add(1)) {
          extract_one(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  // CMVN fit on the train split only.
  std::vector<const FeatureMatrix*> train_inputs, train_targets;
  for (const auto& u : raw) {
    if (u.split == Split::kTrain) {
      train_inputs.push_back(&u.input);
      train_targets.push_back(&u.target);
    }
  }
  if (train_inputs.empty()) throw DataError("manifest has no train utterances");

  TrainingData data;
  data.input_kind = input_kind;
  data.target_kind = target_kind;
  data.normalize_input = normalize_input;
  data.input_stats = CmvnFit(train_inputs);
  data.target_stats = CmvnFit(train_targets);

  for (auto& u : raw) {
    UttData d;
    d.id = u.id;
    d.rir_id = u.rir_id;
    const FeatureMatrix in = normalize_input
                                 ? CmvnApply(u.input, data.input_stats)
                                 : u.input;
    const FeatureMatrix tgt = CmvnApply(u.target, data.target_stats);
    d.input = in.mat;
    d.target = tgt.mat;
    switch (u.split) {
      case Split::kTrain: data.train.push_back(std::move(d)); break;
      case Split::kDev: data.dev.push_back(std::move(d)); break;
      case Split::kTest: data.test.push_back(std::move(d)); break;
    }
  }
  return data;
}

SeqBatch MakeSeqBatch(const std::vector<UttData>& corpus,
                      const std::vector<int>& indices) {
  if (indices.empty()) throw DataError("empty batch request");
  int64_t max_len = 0;
  for (int i : indices) {
    max_len = std::max(max_len, corpus[i].input.dim(0));
  }
  const int64_t batch = static_cast<int64_t>(indices.size());
  const int64_t din = corpus[indices[0]].input.dim(1);
  const int64_t dtgt = corpus[indices[0]].target.dim(1);

  SeqBatch out;
  out.input = Tensor<float>({max_len, batch, din});
  out.target = Tensor<float>({max_len, batch, dtgt});
  out.mask = Tensor<float>({max_len, batch});
  for (int64_t b = 0; b < batch; ++b) {
    const UttData& u = corpus[indices[b]];
    const int64_t len = u.input.dim(0);
    out.lens.push_back(len);
    out.id += (b ? "," : "") + u.id;
    for (int64_t t = 0; t < len; ++t) {
      std::memcpy(out.input.row_ptr(t, b), u.input.data() + t * din,
                  sizeof(float) * static_cast<size_t>(din));
      std::memcpy(out.target.row_ptr(t, b), u.target.data() + t * dtgt,
                  sizeof(float) * static_cast<size_t>(dtgt));
      out.mask.at(t, b) = 1.0f;
    }
  }
  return out;
}

std::vector<std::vector<int>> ShuffledBatches(int corpus_size, int batch_size,
                                              uint64_t seed) {
  std::vector<int> order(corpus_size);
  for (int i = 0; i < corpus_size; ++i) order[i] = i;
  Rng rng(seed);
  for (int i = corpus_size - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.Below(static_cast<uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  std::vector<std::vector<int>> batches;
  for (int start = 0; start < corpus_size; start += batch_size) {
    const int end = std::min(start + batch_size, corpus_size);
    batches.emplace_back(order.begin() + start, order.begin() + end);
  }
  return batches;
}

FramePool BuildFramePool(const std::vector<UttData>& corpus, int context) {
  if (corpus.empty()) throw DataError("frame pool: empty corpus");
  int64_t total = 0;
  for (const auto& u : corpus) total += u.input.dim(0);
  const int64_t din = corpus[0].input.dim(1);
  const int64_t dtgt = corpus[0].target.dim(1);
  const int64_t window = 2 * context + 1;

  FramePool pool;
  pool.inputs = Tensor<float>({total, window * din});
  pool.targets = Tensor<float>({total, dtgt});
  int64_t row = 0;
  for (const auto& u : corpus) {
    const Tensor<float> spliced = SpliceContext(u.input, context);
    std::memcpy(pool.inputs.data() + row * window * din, spliced.data(),
                sizeof(float) * static_cast<size_t>(spliced.size()));
    std::memcpy(pool.targets.data() + row * dtgt, u.target.data(),
                sizeof(float) * static_cast<size_t>(u.target.size()));
    row += u.input.dim(0);
  }
  return pool;
}

}  // namespace derev
