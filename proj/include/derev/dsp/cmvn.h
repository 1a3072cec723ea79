// include/derev/dsp/cmvn.h

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

#ifndef DEREV_DSP_CMVN_H_
#define DEREV_DSP_CMVN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "derev/dsp/features.h"

namespace derev {

// Global per-dimension mean/variance pooled over all training frames.
struct CmvnStats {
  std::vector<double> mean;
  std::vector<double> var;  // floored at kCmvnVarFloor
  int64_t frame_count = 0;
  FeatureKind kind = FeatureKind::kLps;

  int64_t dim() const { return static_cast<int64_t>(mean.size()); }
};

constexpr double kCmvnVarFloor = 1e-8;

CmvnStats CmvnFit(const std::vector<const FeatureMatrix*>& corpus);

// (x - mean) / sqrt(var); sets normalized=true.
FeatureMatrix CmvnApply(const FeatureMatrix& features, const CmvnStats& stats);

// Exact inverse of CmvnApply; sets normalized=false.
FeatureMatrix CmvnInvert(const FeatureMatrix& features, const CmvnStats& stats);

// Persisted as an FTRM matrix (rows: mean, var) plus a JSON sidecar carrying
// the feature kind and pooled frame count.
void SaveCmvn(const std::string& path, const CmvnStats& stats);
CmvnStats LoadCmvn(const std::string& path);

}  // namespace derev

#endif  // DEREV_DSP_CMVN_H_
