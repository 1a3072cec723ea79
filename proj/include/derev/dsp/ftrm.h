// include/derev/dsp/ftrm.h

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

#ifndef DEREV_DSP_FTRM_H_
#define DEREV_DSP_FTRM_H_

#include <string>

#include "derev/dsp/features.h"

namespace derev {

// Feature file layout: magic "FTRM", u32 version=1, u32 rows, u32 cols,
// u8 kind (0=LPS, 1=MFCC), u8 normalized, then rows*cols little-endian f32,
// row-major.

void WriteFtrm(const std::string& path, const FeatureMatrix& features);
FeatureMatrix ReadFtrm(const std::string& path);

}  // namespace derev

#endif  // DEREV_DSP_FTRM_H_
