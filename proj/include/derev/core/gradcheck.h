// include/derev/core/gradcheck.h

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

#ifndef DEREV_CORE_GRADCHECK_H_
#define DEREV_CORE_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "derev/core/param.h"
#include "derev/core/rng.h"
#include "derev/core/tensor.h"

namespace derev {

// Scalar loss over a parameter set.  with_grads=true must zero and then fill
// every parameter's grad; with_grads=false only needs the value.
using LossFn = std::function<double(bool with_grads)>;

// Compares analytic gradients against central differences at probe_count
// randomly chosen weight coordinates.  Returns the max relative error
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-8).  Meant to run on
// double-instantiated models; float roundoff drowns the comparison.
inline double GradientCheck(const LossFn& loss,
                            const std::vector<Parameter<double>*>& params,
                            int probe_count, double fd_epsilon,
                            uint64_t seed = 12345) {
  if (params.empty()) throw std::invalid_argument("gradcheck: no parameters");

  const double l0 = loss(true);
  const double l1 = loss(false);
  if (l0 != l1) {
    throw std::runtime_error("gradcheck: loss is not deterministic");
  }

  // Snapshot analytic grads before probing starts mutating weights.
  std::vector<Tensor<double>> analytic;
  analytic.reserve(params.size());
  int64_t total = 0;
  for (auto* p : params) {
    analytic.push_back(p->grad);
    total += p->value.size();
  }
  if (total == 0) throw std::invalid_argument("gradcheck: empty parameters");

  Rng rng(seed);
  double max_rel = 0.0;
  for (int probe = 0; probe < probe_count; ++probe) {
    int64_t flat = static_cast<int64_t>(rng.Below(static_cast<uint64_t>(total)));
    size_t pi = 0;
    while (flat >= params[pi]->value.size()) {
      flat -= params[pi]->value.size();
      ++pi;
    }
    double& w = params[pi]->value[flat];
    const double saved = w;
    w = saved + fd_epsilon;
    const double lp = loss(false);
    w = saved - fd_epsilon;
    const double lm = loss(false);
    w = saved;

    const double numeric = (lp - lm) / (2.0 * fd_epsilon);
    const double a = analytic[pi][flat];
    const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
    max_rel = std::max(max_rel, std::abs(a - numeric) / denom);
  }

  // Restore analytic grads so callers can keep using them.
  for (size_t i = 0; i < params.size(); ++i) params[i]->grad = analytic[i];
  return max_rel;
}

}  // namespace derev

#endif  // DEREV_CORE_GRADCHECK_H_
