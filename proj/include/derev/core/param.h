// include/derev/core/param.h

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

#ifndef DEREV_CORE_PARAM_H_
#define DEREV_CORE_PARAM_H_

#include <string>
#include <utility>
#include <vector>

#include "derev/core/tensor.h"

namespace derev {

// A trainable tensor with its gradient accumulator.  Names are unique within
// a model and double as checkpoint keys.
template <typename T>
struct Parameter {
  Parameter() = default;
  Parameter(std::string name_in, Tensor<T> value_in)
      : name(std::move(name_in)),
        value(std::move(value_in)),
        grad(value.shape()) {}

  void ZeroGrad() { grad.SetZero(); }

  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
};

template <typename T>
void ZeroGrads(const std::vector<Parameter<T>*>& params) {
  for (auto* p : params) p->ZeroGrad();
}

template <typename T>
int64_t TotalParamCount(const std::vector<Parameter<T>*>& params) {
  int64_t n = 0;
  for (auto* p : params) n += p->value.size();
  return n;
}

}  // namespace derev

#endif  // DEREV_CORE_PARAM_H_
