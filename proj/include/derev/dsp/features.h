// include/derev/dsp/features.h

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

#ifndef DEREV_DSP_FEATURES_H_
#define DEREV_DSP_FEATURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "derev/core/tensor.h"
#include "derev/dsp/stft.h"

namespace derev {

// Floor applied to power values before any log.
constexpr double kPowerFloor = 1e-10;

enum class FeatureKind : uint8_t { kLps = 0, kMfcc = 1 };

inline int FeatureDim(FeatureKind kind) {
  return kind == FeatureKind::kLps ? 257 : 40;
}
inline const char* FeatureKindName(FeatureKind kind) {
  return kind == FeatureKind::kLps ? "lps" : "mfcc";
}
FeatureKind ParseFeatureKind(const std::string& name);

struct FeatureMatrix {
  Tensor<float> mat;  // {frames, dim}
  FeatureKind kind = FeatureKind::kLps;
  bool normalized = false;

  int64_t frames() const { return mat.empty() ? 0 : mat.dim(0); }
  int64_t dim() const { return mat.empty() ? 0 : mat.dim(1); }
};

// Elementwise log(max(|X|^2, 1e-10)), 257 bins.
FeatureMatrix Lps(const ComplexSpectrogram& spec);

struct MelConfig {
  int num_filters = 40;
  double fmin_hz = 20.0;
  double fmax_hz = 7600.0;
};

// Triangular mel filters over FFT bin centers, each normalized to unit
// discrete sum, so a flat power spectrum maps to a constant log-mel vector.
class MelFilterbank {
 public:
  MelFilterbank(int fft_size, int sample_rate, const MelConfig& config = {});

  int num_filters() const { return static_cast<int>(filters_.size()); }

  // power: fft_size/2+1 bins -> out: num_filters energies.
  void Apply(const double* power, double* out) const;

  // Nonzero bin range and weights of one filter (for inspection/tests).
  struct Filter {
    int first_bin = 0;
    std::vector<double> weights;
  };
  const Filter& filter(int i) const { return filters_[i]; }

 private:
  std::vector<Filter> filters_;
};

// Power spectrum -> 40 mel energies -> log (floored) -> orthonormal DCT-II.
// All 40 coefficients kept, C0 included, no liftering.
FeatureMatrix Mfcc(const ComplexSpectrogram& spec, const MelConfig& config = {});

// Orthonormal DCT-II matrix, shape {num_coeffs, num_inputs}.
std::vector<double> DctIIOrthonormal(int num_coeffs, int num_inputs);

// MFCC recomputed from (de-normalized) LPS features: exp(lps) is the power
// spectrum the mel pipeline consumes.  Used to score LPS-target models in the
// MFCC domain without a waveform round trip.
FeatureMatrix MfccFromLps(const FeatureMatrix& lps, int fft_size,
                          int sample_rate, const MelConfig& config = {});

}  // namespace derev

#endif  // DEREV_DSP_FEATURES_H_
