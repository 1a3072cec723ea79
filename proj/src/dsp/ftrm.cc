// src/dsp/ftrm.cc

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

#include "derev/dsp/ftrm.h"

#include <cstdint>

#include "derev/util/io.h"

namespace derev {

namespace {
constexpr char kMagic[4] = {'F', 'T', 'R', 'M'};
constexpr uint32_t kVersion = 1;
}  // namespace

void WriteFtrm(const std::string& path, const FeatureMatrix& features) {
  std::ofstream os = OpenOut(path);
  os.write(kMagic, 4);
  WriteRaw<uint32_t>(os, kVersion);
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(features.frames()));
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(features.dim()));
  WriteRaw<uint8_t>(os, static_cast<uint8_t>(features.kind));
  WriteRaw<uint8_t>(os, features.normalized ? 1 : 0);
  WriteRawArray(os, features.mat.data(),
                static_cast<size_t>(features.mat.size()));
  if (!os) throw DataError("failed writing feature file: " + path);
}

FeatureMatrix ReadFtrm(const std::string& path) {
  std::ifstream is = OpenIn(path);
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw DataError("bad FTRM magic in " + path);
  }
  const uint32_t version = ReadRaw<uint32_t>(is, "FTRM version");
  if (version != kVersion) {
    throw DataError("unsupported FTRM version in " + path);
  }
  const uint32_t rows = ReadRaw<uint32_t>(is, "FTRM rows");
  const uint32_t cols = ReadRaw<uint32_t>(is, "FTRM cols");
  const uint8_t kind = ReadRaw<uint8_t>(is, "FTRM kind");
  const uint8_t normalized = ReadRaw<uint8_t>(is, "FTRM normalized");
  if (kind > 1) throw DataError("bad FTRM kind in " + path);
  if (rows == 0 || cols == 0) throw DataError("empty FTRM in " + path);

  FeatureMatrix out;
  out.kind = static_cast<FeatureKind>(kind);
  out.normalized = normalized != 0;
  out.mat = Tensor<float>({static_cast<int64_t>(rows), static_cast<int64_t>(cols)});
  ReadRawArray(is, out.mat.data(), static_cast<size_t>(out.mat.size()),
               "FTRM data");
  return out;
}

}  // namespace derev
