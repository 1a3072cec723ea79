// src/dsp/wav.cc

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

#include "derev/dsp/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "derev/util/io.h"

namespace derev {

namespace {
constexpr uint16_t kPcmFormat = 1;

uint32_t FourCC(const char* s) {
  return static_cast<uint32_t>(static_cast<unsigned char>(s[0])) |
         static_cast<uint32_t>(static_cast<unsigned char>(s[1])) << 8 |
         static_cast<uint32_t>(static_cast<unsigned char>(s[2])) << 16 |
         static_cast<uint32_t>(static_cast<unsigned char>(s[3])) << 24;
}
}  // namespace

WavData ReadWav(const std::string& path) {
  std::ifstream is = OpenIn(path);
  if (ReadRaw<uint32_t>(is, "RIFF tag") != FourCC("RIFF")) {
    throw DataError("not a RIFF file: " + path);
  }
  ReadRaw<uint32_t>(is, "RIFF size");
  if (ReadRaw<uint32_t>(is, "WAVE tag") != FourCC("WAVE")) {
    throw DataError("not a WAVE file: " + path);
  }

  WavData wav;
  uint16_t channels = 0, bits = 0;
  bool have_fmt = false;
  while (true) {
    uint32_t chunk_id;
    {
      char buf[4];
      if (!is.read(buf, 4)) break;  // EOF after last chunk
      chunk_id = FourCC(buf);
    }
    const uint32_t chunk_size = ReadRaw<uint32_t>(is, "chunk size");
    if (chunk_id == FourCC("fmt ")) {
      const uint16_t format = ReadRaw<uint16_t>(is, "fmt.format");
      channels = ReadRaw<uint16_t>(is, "fmt.channels");
      wav.sample_rate = static_cast<int>(ReadRaw<uint32_t>(is, "fmt.rate"));
      ReadRaw<uint32_t>(is, "fmt.byte_rate");
      ReadRaw<uint16_t>(is, "fmt.block_align");
      bits = ReadRaw<uint16_t>(is, "fmt.bits");
      if (chunk_size > 16) is.seekg(chunk_size - 16, std::ios::cur);
      if (format != kPcmFormat) throw DataError("WAV is not PCM: " + path);
      have_fmt = true;
    } else if (chunk_id == FourCC("data")) {
      if (!have_fmt) throw DataError("WAV data before fmt chunk: " + path);
      if (channels != 1) throw DataError("WAV is not mono: " + path);
      if (bits != 16) throw DataError("WAV is not 16-bit: " + path);
      const size_t count = chunk_size / 2;
      std::vector<int16_t> pcm(count);
      ReadRawArray(is, pcm.data(), count, "wav samples");
      wav.samples.resize(count);
      for (size_t i = 0; i < count; ++i) {
        wav.samples[i] = static_cast<float>(pcm[i]) / 32768.0f;
      }
      return wav;
    } else {
      // Skip unknown chunk (word-aligned).
      is.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
      if (!is) throw DataError("truncated WAV chunk in " + path);
    }
  }
  throw DataError("WAV has no data chunk: " + path);
}

void WriteWav(const std::string& path, const Waveform& samples,
              int sample_rate) {
  std::ofstream os = OpenOut(path);
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  WriteRaw<uint32_t>(os, FourCC("RIFF"));
  WriteRaw<uint32_t>(os, 36 + data_bytes);
  WriteRaw<uint32_t>(os, FourCC("WAVE"));
  WriteRaw<uint32_t>(os, FourCC("fmt "));
  WriteRaw<uint32_t>(os, 16);
  WriteRaw<uint16_t>(os, kPcmFormat);
  WriteRaw<uint16_t>(os, 1);  // mono
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(sample_rate));
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(sample_rate * 2));
  WriteRaw<uint16_t>(os, 2);   // block align
  WriteRaw<uint16_t>(os, 16);  // bits
  WriteRaw<uint32_t>(os, FourCC("data"));
  WriteRaw<uint32_t>(os, data_bytes);
  for (float s : samples) {
    const double scaled = std::lround(static_cast<double>(s) * 32767.0);
    const int16_t q = static_cast<int16_t>(
        std::clamp<double>(scaled, -32768.0, 32767.0));
    WriteRaw<int16_t>(os, q);
  }
  if (!os) throw DataError("failed writing WAV: " + path);
}

}  // namespace derev
