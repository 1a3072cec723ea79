// include/derev/nn/config.h

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

#ifndef DEREV_NN_CONFIG_H_
#define DEREV_NN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "derev/dsp/features.h"

namespace derev {

enum class ArchKind { kDnn, kRced, kLstmp };
enum class Residual { kNone, kResInput, kResLayer };
enum class Mode { kInfer, kTrain };

const char* ArchKindName(ArchKind a);
ArchKind ParseArchKind(const std::string& name);
const char* ResidualName(Residual r);
Residual ParseResidual(const std::string& name);

// Feed-forward regressor: spliced input, ReLU hidden stack, linear output.
struct DnnConfig {
  int64_t hidden_layers = 4;
  int64_t hidden_units = 1024;
  int context = 5;  // +-5 frames, 11 total
  FeatureKind input_kind = FeatureKind::kLps;
  FeatureKind target_kind = FeatureKind::kMfcc;
  bool batch_renorm = true;
  // Nonzero overrides shrink feature widths for tiny verification models.
  int64_t feature_dim_override = 0;
  int64_t output_dim_override = 0;

  int64_t feature_dim() const {
    return feature_dim_override > 0 ? feature_dim_override
                                    : FeatureDim(input_kind);
  }
  int64_t input_dim() const { return feature_dim() * (2 * context + 1); }
  int64_t output_dim() const {
    return output_dim_override > 0 ? output_dim_override
                                   : FeatureDim(target_kind);
  }
};

// Redundant convolutional encoder-decoder: symmetric 1-D convolutions along
// frequency (context frames enter as input channels), no pooling, fully
// connected linear output.
struct RcedConfig {
  std::vector<int64_t> channels = {12, 16, 20, 24, 32, 24, 20, 16, 12};
  std::vector<int64_t> widths = {13, 11, 9, 7, 7, 7, 9, 11, 13};
  int context = 5;
  FeatureKind input_kind = FeatureKind::kLps;
  FeatureKind target_kind = FeatureKind::kMfcc;
  bool batch_renorm = true;
  int64_t feature_dim_override = 0;
  int64_t output_dim_override = 0;

  int64_t freq_bins() const {
    return feature_dim_override > 0 ? feature_dim_override
                                    : FeatureDim(input_kind);
  }
  int64_t output_dim() const {
    return output_dim_override > 0 ? output_dim_override
                                   : FeatureDim(target_kind);
  }
};

// Deep LSTM with recurrent projection; optional residual connections.
struct LstmpConfig {
  int64_t layers = 4;
  int64_t cells = 760;
  int64_t proj = 257;
  Residual residual = Residual::kNone;
  FeatureKind input_kind = FeatureKind::kLps;
  FeatureKind target_kind = FeatureKind::kMfcc;
  int64_t feature_dim_override = 0;
  int64_t output_dim_override = 0;

  int64_t input_dim() const {
    return feature_dim_override > 0 ? feature_dim_override
                                    : FeatureDim(input_kind);
  }
  int64_t output_dim() const {
    return output_dim_override > 0 ? output_dim_override
                                   : FeatureDim(target_kind);
  }
};

// 2-layer LSTMP scorer without residuals; per-frame linear score, mean over
// frames.  Optionally conditioned on the reverberant LPS (concatenated per
// frame).
struct DiscriminatorConfig {
  int64_t layers = 2;
  int64_t cells = 256;
  int64_t proj = 40;
  bool conditional = false;
  int64_t feature_dim = 40;    // MFCC input
  int64_t condition_dim = 257; // reverberant LPS in CD mode

  int64_t input_dim() const {
    return conditional ? feature_dim + condition_dim : feature_dim;
  }
};

}  // namespace derev

#endif  // DEREV_NN_CONFIG_H_
