// src/nn/config.cc

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

#include "derev/nn/config.h"

#include "derev/util/errors.h"

namespace derev {

const char* ArchKindName(ArchKind a) {
  switch (a) {
    case ArchKind::kDnn: return "dnn";
    case ArchKind::kRced: return "rced";
    case ArchKind::kLstmp: return "lstmp";
  }
  return "dnn";
}

ArchKind ParseArchKind(const std::string& name) {
  if (name == "dnn") return ArchKind::kDnn;
  if (name == "rced") return ArchKind::kRced;
  if (name == "lstmp" || name == "lstm") return ArchKind::kLstmp;
  throw ConfigError("unknown architecture: " + name);
}

const char* ResidualName(Residual r) {
  switch (r) {
    case Residual::kNone: return "none";
    case Residual::kResInput: return "res-i";
    case Residual::kResLayer: return "res-l";
  }
  return "none";
}

Residual ParseResidual(const std::string& name) {
  if (name == "none") return Residual::kNone;
  if (name == "res-i" || name == "resi") return Residual::kResInput;
  if (name == "res-l" || name == "resl") return Residual::kResLayer;
  throw ConfigError("unknown residual mode: " + name);
}

}  // namespace derev
