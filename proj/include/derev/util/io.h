// include/derev/util/io.h

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

#ifndef DEREV_UTIL_IO_H_
#define DEREV_UTIL_IO_H_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "derev/util/errors.h"

namespace derev {

// Little-endian binary primitives for the FTRM / DRVB / WAV formats.
// The in-memory representation on every supported target is already
// little-endian; reads still go through memcpy for alignment safety.

template <typename T>
void WriteRaw(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void WriteRawArray(std::ostream& os, const T* data, size_t count) {
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
T ReadRaw(std::istream& is, const std::string& what) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) {
    throw DataError("truncated file while reading " + what);
  }
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

template <typename T>
void ReadRawArray(std::istream& is, T* data, size_t count,
                  const std::string& what) {
  if (!is.read(reinterpret_cast<char*>(data),
               static_cast<std::streamsize>(count * sizeof(T)))) {
    throw DataError("truncated file while reading " + what);
  }
}

inline void WriteString(std::ostream& os, const std::string& s) {
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string ReadString(std::istream& is, const std::string& what) {
  const uint32_t len = ReadRaw<uint32_t>(is, what + " length");
  std::string s(len, '\0');
  if (len > 0 && !is.read(s.data(), len)) {
    throw DataError("truncated file while reading " + what);
  }
  return s;
}

inline std::ofstream OpenOut(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  return os;
}

inline std::ifstream OpenIn(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open for reading: " + path);
  return is;
}

inline std::vector<char> ReadAllBytes(const std::string& path) {
  std::ifstream is = OpenIn(path);
  is.seekg(0, std::ios::end);
  std::vector<char> bytes(static_cast<size_t>(is.tellg()));
  is.seekg(0);
  if (!bytes.empty()) is.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return bytes;
}

inline void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os << text;
}

}  // namespace derev

#endif  // DEREV_UTIL_IO_H_
