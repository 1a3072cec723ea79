// include/derev/train/schedule.h

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

#ifndef DEREV_TRAIN_SCHEDULE_H_
#define DEREV_TRAIN_SCHEDULE_H_

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace derev {

// Geometric decay reaching lr_init * 1e-5 at total_steps (the terminal rate
// is five orders of magnitude below the initial one).
struct LrSchedule {
  double lr_init = 1e-3;
  int64_t total_steps = 1;
};

inline double LrAt(const LrSchedule& schedule, int64_t step) {
  if (step < 0) throw std::invalid_argument("lr schedule: negative step");
  if (schedule.total_steps < 1) {
    throw std::invalid_argument("lr schedule: total_steps must be >= 1");
  }
  const double frac =
      static_cast<double>(std::min(step, schedule.total_steps)) /
      static_cast<double>(schedule.total_steps);
  return schedule.lr_init * std::pow(1e-5, frac);
}

}  // namespace derev

#endif  // DEREV_TRAIN_SCHEDULE_H_
