// include/derev/nn/checkpoint.h

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

#ifndef DEREV_NN_CHECKPOINT_H_
#define DEREV_NN_CHECKPOINT_H_

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "derev/dsp/cmvn.h"
#include "derev/nn/discriminator.h"
#include "derev/nn/model.h"

namespace derev {

// Checkpoint container "DRVB": magic, u32 version, length-prefixed UTF-8 JSON
// architecture descriptor, u32 tensor count, then per tensor: name
// (length-prefixed), u32 rank, u32 dims[], little-endian f32 data.
// Model parameters, BRN running stats and both CMVN stat sets are stored as
// named tensors.

struct EnhancerBundle {
  std::unique_ptr<Enhancer<float>> model;
  CmvnStats input_stats;
  CmvnStats target_stats;
  bool normalize_input = true;
};

// Constructs a fresh (seed-initialized) model from a descriptor produced by
// Enhancer::Descriptor().
std::unique_ptr<Enhancer<float>> BuildEnhancer(const nlohmann::json& descriptor,
                                               uint64_t seed);

void SaveCheckpoint(const std::string& path, EnhancerBundle& bundle);
EnhancerBundle LoadCheckpoint(const std::string& path);

// GAN runs also persist the final discriminator.
void SaveDiscriminator(const std::string& path, Discriminator<float>& d);
Discriminator<float> LoadDiscriminator(const std::string& path);

}  // namespace derev

#endif  // DEREV_NN_CHECKPOINT_H_
