// src/dsp/cmvn.cc

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

#include "derev/dsp/cmvn.h"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "derev/dsp/ftrm.h"
#include "derev/util/errors.h"
#include "derev/util/io.h"

namespace derev {

CmvnStats CmvnFit(const std::vector<const FeatureMatrix*>& corpus) {
  if (corpus.empty()) throw DataError("cmvn fit: empty corpus");
  const int64_t dim = corpus.front()->dim();
  const FeatureKind kind = corpus.front()->kind;

  CmvnStats stats;
  stats.kind = kind;
  stats.mean.assign(dim, 0.0);
  stats.var.assign(dim, 0.0);
  std::vector<double> sum(dim, 0.0), sumsq(dim, 0.0);
  int64_t frames = 0;
  for (const FeatureMatrix* f : corpus) {
    if (f->dim() != dim || f->kind != kind) {
      throw DataError("cmvn fit: mismatched feature dimensions");
    }
    for (int64_t t = 0; t < f->frames(); ++t) {
      for (int64_t d = 0; d < dim; ++d) {
        const double x = f->mat.at(t, d);
        sum[d] += x;
        sumsq[d] += x * x;
      }
    }
    frames += f->frames();
  }
  if (frames == 0) throw DataError("cmvn fit: no frames");
  stats.frame_count = frames;
  for (int64_t d = 0; d < dim; ++d) {
    const double mean = sum[d] / frames;
    const double var = std::max(sumsq[d] / frames - mean * mean, kCmvnVarFloor);
    // Stats are persisted as f32 (FTRM, checkpoints); rounding once here
    // makes every later save/load round trip bit-exact.
    stats.mean[d] = static_cast<float>(mean);
    stats.var[d] = static_cast<float>(var);
  }
  return stats;
}

namespace {
void CheckDims(const FeatureMatrix& f, const CmvnStats& stats,
               const char* op) {
  if (f.dim() != stats.dim() || f.kind != stats.kind) {
    throw DataError(std::string(op) + ": feature/stats dimension mismatch");
  }
}
}  // namespace

FeatureMatrix CmvnApply(const FeatureMatrix& features, const CmvnStats& stats) {
  CheckDims(features, stats, "cmvn apply");
  FeatureMatrix out = features;
  for (int64_t d = 0; d < stats.dim(); ++d) {
    const double inv_std = 1.0 / std::sqrt(stats.var[d]);
    const double mean = stats.mean[d];
    for (int64_t t = 0; t < out.frames(); ++t) {
      out.mat.at(t, d) = static_cast<float>(
          (static_cast<double>(features.mat.at(t, d)) - mean) * inv_std);
    }
  }
  out.normalized = true;
  return out;
}

FeatureMatrix CmvnInvert(const FeatureMatrix& features, const CmvnStats& stats) {
  CheckDims(features, stats, "cmvn invert");
  FeatureMatrix out = features;
  for (int64_t d = 0; d < stats.dim(); ++d) {
    const double std_dev = std::sqrt(stats.var[d]);
    const double mean = stats.mean[d];
    for (int64_t t = 0; t < out.frames(); ++t) {
      out.mat.at(t, d) = static_cast<float>(
          static_cast<double>(features.mat.at(t, d)) * std_dev + mean);
    }
  }
  out.normalized = false;
  return out;
}

void SaveCmvn(const std::string& path, const CmvnStats& stats) {
  FeatureMatrix m;
  m.kind = stats.kind;
  m.normalized = false;
  m.mat = Tensor<float>({2, stats.dim()});
  for (int64_t d = 0; d < stats.dim(); ++d) {
    m.mat.at(0, d) = static_cast<float>(stats.mean[d]);
    m.mat.at(1, d) = static_cast<float>(stats.var[d]);
  }
  WriteFtrm(path, m);
  nlohmann::json meta;
  meta["kind"] = FeatureKindName(stats.kind);
  meta["frame_count"] = stats.frame_count;
  WriteTextFile(path + ".json", meta.dump(2) + "\n");
}

CmvnStats LoadCmvn(const std::string& path) {
  const FeatureMatrix m = ReadFtrm(path);
  if (m.frames() != 2) throw DataError("cmvn file must have 2 rows: " + path);
  CmvnStats stats;
  stats.kind = m.kind;
  stats.mean.resize(m.dim());
  stats.var.resize(m.dim());
  for (int64_t d = 0; d < m.dim(); ++d) {
    stats.mean[d] = m.mat.at(0, d);
    stats.var[d] = std::max<double>(m.mat.at(1, d), kCmvnVarFloor);
  }
  const std::string meta_path = path + ".json";
  std::ifstream is(meta_path);
  if (is) {
    nlohmann::json meta = nlohmann::json::parse(is, nullptr, false);
    if (!meta.is_discarded() && meta.contains("frame_count")) {
      stats.frame_count = meta["frame_count"].get<int64_t>();
    }
  }
  return stats;
}

}  // namespace derev
