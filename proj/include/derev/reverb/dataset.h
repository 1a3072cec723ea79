// include/derev/reverb/dataset.h

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

#ifndef DEREV_REVERB_DATASET_H_
#define DEREV_REVERB_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "derev/reverb/rir.h"

namespace derev {

enum class Split { kTrain, kDev, kTest };
const char* SplitName(Split s);
Split ParseSplit(const std::string& name);

struct UtterancePair {
  std::string id;
  std::string clean_path;
  std::string reverb_path;
  std::string rir_id;
  Split split = Split::kTrain;
  double duration_sec = 0.0;
};

struct DatasetManifest {
  std::vector<UtterancePair> utterances;
  // Corpus-level metadata (kept in a sidecar; the JSONL holds one
  // UtterancePair per line).
  int sample_rate = 16000;
  uint64_t master_seed = 0;

  std::vector<const UtterancePair*> ForSplit(Split s) const;
};

struct DatasetConfig {
  int num_train = 60;
  int num_dev = 10;
  int num_test = 10;
  double duration_sec = 2.0;
  double t60_min = 0.3;
  double t60_max = 0.8;
  // RIRs per split pool; pools are disjoint across train/dev/test.
  int rirs_train = 12;
  int rirs_dev = 4;
  int rirs_test = 4;
  uint64_t master_seed = 1;
  int sample_rate = 16000;
  int jobs = 1;
};

// Synthesizes clean pseudo-speech, convolves with per-split RIR pools, writes
// WAV pairs under out_dir and the manifest as JSON-lines.  Deterministic per
// master seed, independent of job count.
DatasetManifest BuildDataset(const DatasetConfig& config,
                             const std::string& out_dir);

void WriteManifest(const DatasetManifest& manifest, const std::string& path);
DatasetManifest ReadManifest(const std::string& path);

}  // namespace derev

#endif  // DEREV_REVERB_DATASET_H_
