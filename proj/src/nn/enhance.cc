// src/nn/enhance.cc

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

#include "derev/nn/enhance.h"

#include <cstring>

#include "derev/util/errors.h"

namespace derev {

FeatureMatrix EnhanceFeatures(const EnhancerBundle& bundle,
                              const FeatureMatrix& input) {
  if (input.kind != bundle.model->input_kind()) {
    throw DataError("enhance: input feature kind does not match the model");
  }
  if (input.normalized) {
    throw DataError("enhance: expected de-normalized input features");
  }
  const FeatureMatrix prepared =
      bundle.normalize_input ? CmvnApply(input, bundle.input_stats) : input;

  const int64_t frames = prepared.frames(), dim = prepared.dim();
  Tensor<float> x({frames, 1, dim});
  std::memcpy(x.data(), prepared.mat.data(),
              sizeof(float) * static_cast<size_t>(prepared.mat.size()));
  const Tensor<float> y = bundle.model->ForwardSeq(
      x, {frames}, Mode::kInfer, nullptr);

  FeatureMatrix out;
  out.kind = bundle.model->target_kind();
  out.normalized = true;
  out.mat = Tensor<float>({frames, bundle.model->output_dim()});
  std::memcpy(out.mat.data(), y.data(),
              sizeof(float) * static_cast<size_t>(y.size()));
  return CmvnInvert(out, bundle.target_stats);
}

}  // namespace derev
