// include/derev/nn/enhance.h

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

#ifndef DEREV_NN_ENHANCE_H_
#define DEREV_NN_ENHANCE_H_

#include "derev/dsp/features.h"
#include "derev/nn/checkpoint.h"

namespace derev {

// Runs one raw (de-normalized) utterance through the enhancer: normalize the
// input per the bundle's stats (when configured), forward in inference mode,
// de-normalize the prediction back to the target feature domain.
FeatureMatrix EnhanceFeatures(const EnhancerBundle& bundle,
                              const FeatureMatrix& input);

}  // namespace derev

#endif  // DEREV_NN_ENHANCE_H_
