// src/dsp/features.cc

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

#include "derev/dsp/features.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "derev/util/errors.h"

namespace derev {

namespace {
double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}
}  // namespace

FeatureKind ParseFeatureKind(const std::string& name) {
  if (name == "lps") return FeatureKind::kLps;
  if (name == "mfcc") return FeatureKind::kMfcc;
  throw ConfigError("unknown feature kind: " + name);
}

FeatureMatrix Lps(const ComplexSpectrogram& spec) {
  if (spec.num_frames == 0) throw DataError("lps: empty spectrogram");
  FeatureMatrix out;
  out.kind = FeatureKind::kLps;
  out.normalized = false;
  out.mat = Tensor<float>({spec.num_frames, spec.num_bins});
  for (int64_t t = 0; t < spec.num_frames; ++t) {
    for (int64_t b = 0; b < spec.num_bins; ++b) {
      const double p = std::norm(spec.at(t, b));
      out.mat.at(t, b) = static_cast<float>(std::log(std::max(p, kPowerFloor)));
    }
  }
  return out;
}

MelFilterbank::MelFilterbank(int fft_size, int sample_rate,
                             const MelConfig& config) {
  const int bins = fft_size / 2 + 1;
  const double mel_lo = HzToMel(config.fmin_hz);
  const double mel_hi = HzToMel(config.fmax_hz);
  const int m = config.num_filters;
  // m+2 edge points, equally spaced on the mel scale.
  std::vector<double> edges_hz(m + 2);
  for (int i = 0; i < m + 2; ++i) {
    edges_hz[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (m + 1));
  }
  const double bin_hz = static_cast<double>(sample_rate) / fft_size;
  filters_.resize(m);
  for (int k = 0; k < m; ++k) {
    const double lo = edges_hz[k], center = edges_hz[k + 1], hi = edges_hz[k + 2];
    int first = -1;
    std::vector<double> w;
    for (int b = 0; b < bins; ++b) {
      const double f = b * bin_hz;
      double v = 0.0;
      if (f > lo && f < center) {
        v = (f - lo) / (center - lo);
      } else if (f >= center && f < hi) {
        v = (hi - f) / (hi - center);
      }
      if (v > 0.0) {
        if (first < 0) first = b;
        w.push_back(v);
      } else if (first >= 0) {
        break;
      }
    }
    if (first < 0 || w.empty()) {
      throw ConfigError("mel filter " + std::to_string(k) +
                        " covers no FFT bin; reduce num_filters");
    }
    double sum = 0.0;
    for (double v : w) sum += v;
    for (double& v : w) v /= sum;
    filters_[k].first_bin = first;
    filters_[k].weights = std::move(w);
  }
}

void MelFilterbank::Apply(const double* power, double* out) const {
  for (size_t k = 0; k < filters_.size(); ++k) {
    const Filter& f = filters_[k];
    double acc = 0.0;
    for (size_t i = 0; i < f.weights.size(); ++i) {
      acc += f.weights[i] * power[f.first_bin + static_cast<int>(i)];
    }
    out[k] = acc;
  }
}

std::vector<double> DctIIOrthonormal(int num_coeffs, int num_inputs) {
  std::vector<double> dct(static_cast<size_t>(num_coeffs) * num_inputs);
  const double norm0 = std::sqrt(1.0 / num_inputs);
  const double norm = std::sqrt(2.0 / num_inputs);
  for (int k = 0; k < num_coeffs; ++k) {
    for (int n = 0; n < num_inputs; ++n) {
      dct[static_cast<size_t>(k) * num_inputs + n] =
          (k == 0 ? norm0 : norm) *
          std::cos(M_PI * k * (2.0 * n + 1.0) / (2.0 * num_inputs));
    }
  }
  return dct;
}

namespace {
FeatureMatrix MfccFromPowerRows(
    const std::function<void(int64_t, double*)>& fill_power_row,
    int64_t num_frames, int bins, const MelFilterbank& bank) {
  const int m = bank.num_filters();
  const std::vector<double> dct = DctIIOrthonormal(m, m);
  FeatureMatrix out;
  out.kind = FeatureKind::kMfcc;
  out.normalized = false;
  out.mat = Tensor<float>({num_frames, m});
  std::vector<double> power(bins), mel(m), logmel(m);
  for (int64_t t = 0; t < num_frames; ++t) {
    fill_power_row(t, power.data());
    bank.Apply(power.data(), mel.data());
    for (int k = 0; k < m; ++k) {
      logmel[k] = std::log(std::max(mel[k], kPowerFloor));
    }
    for (int k = 0; k < m; ++k) {
      double acc = 0.0;
      const double* row = dct.data() + static_cast<size_t>(k) * m;
      for (int n = 0; n < m; ++n) acc += row[n] * logmel[n];
      out.mat.at(t, k) = static_cast<float>(acc);
    }
  }
  return out;
}
}  // namespace

FeatureMatrix Mfcc(const ComplexSpectrogram& spec, const MelConfig& config) {
  if (spec.num_frames == 0) throw DataError("mfcc: empty spectrogram");
  MelFilterbank bank(spec.config.fft_size, spec.config.sample_rate, config);
  return MfccFromPowerRows(
      [&spec](int64_t t, double* power) {
        for (int64_t b = 0; b < spec.num_bins; ++b) {
          power[b] = std::norm(spec.at(t, b));
        }
      },
      spec.num_frames, static_cast<int>(spec.num_bins), bank);
}

FeatureMatrix MfccFromLps(const FeatureMatrix& lps, int fft_size,
                          int sample_rate, const MelConfig& config) {
  if (lps.kind != FeatureKind::kLps || lps.normalized) {
    throw DataError("mfcc-from-lps expects de-normalized LPS features");
  }
  const int bins = fft_size / 2 + 1;
  if (lps.dim() != bins) throw DataError("mfcc-from-lps: wrong LPS width");
  MelFilterbank bank(fft_size, sample_rate, config);
  return MfccFromPowerRows(
      [&lps](int64_t t, double* power) {
        for (int64_t b = 0; b < lps.dim(); ++b) {
          power[b] = std::exp(static_cast<double>(lps.mat.at(t, b)));
        }
      },
      lps.frames(), bins, bank);
}

}  // namespace derev
