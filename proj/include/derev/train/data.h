// include/derev/train/data.h

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

#ifndef DEREV_TRAIN_DATA_H_
#define DEREV_TRAIN_DATA_H_

#include <string>
#include <vector>

#include "derev/dsp/cmvn.h"
#include "derev/dsp/frame.h"
#include "derev/reverb/dataset.h"

namespace derev {

// One utterance, featurized and normalized for training.  In the
// conditional-D ablation the reverberant LPS condition is the input itself
// (the trainer requires LPS input for that mode).
struct UttData {
  std::string id;
  std::string rir_id;
  Tensor<float> input;   // {F, Din} reverberant features (normalized if configured)
  Tensor<float> target;  // {F, Dtgt} clean features (always normalized)
};

struct TrainingData {
  std::vector<UttData> train, dev, test;
  CmvnStats input_stats;   // fit on the train split's reverberant features
  CmvnStats target_stats;  // fit on the train split's clean features
  FeatureKind input_kind = FeatureKind::kLps;
  FeatureKind target_kind = FeatureKind::kMfcc;
  bool normalize_input = true;
};

// Extracts features for every utterance in the manifest and fits CMVN on the
// train split only.  Deterministic; parallelizes over utterances when
// jobs > 1 (results independent of job count).
TrainingData PrepareTrainingData(const DatasetManifest& manifest,
                                 FeatureKind input_kind,
                                 FeatureKind target_kind,
                                 const FrameConfig& frame_config,
                                 bool normalize_input, int jobs = 1);

// Padded utterance batch for sequence training.
struct SeqBatch {
  Tensor<float> input;   // {S, B, Din}
  Tensor<float> target;  // {S, B, Dtgt}
  Tensor<float> mask;    // {S, B}
  std::vector<int64_t> lens;
  std::string id;  // joined utterance ids, for diagnostics
};

SeqBatch MakeSeqBatch(const std::vector<UttData>& corpus,
                      const std::vector<int>& indices);

// Deterministically shuffled index groups of at most batch_size.
std::vector<std::vector<int>> ShuffledBatches(int corpus_size, int batch_size,
                                              uint64_t seed);

// Pre-spliced frame pool for frame-batched training of DNN/RCED.
struct FramePool {
  Tensor<float> inputs;   // {N, window*Din}
  Tensor<float> targets;  // {N, Dtgt}
};

FramePool BuildFramePool(const std::vector<UttData>& corpus, int context);

}  // namespace derev

#endif  // DEREV_TRAIN_DATA_H_
