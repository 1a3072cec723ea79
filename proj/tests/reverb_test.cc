// tests/reverb_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "derev/core/rng.h"
#include "derev/dsp/wav.h"
#include "derev/reverb/convolve.h"
#include "derev/reverb/dataset.h"
#include "derev/reverb/pseudo_speech.h"
#include "derev/reverb/rir.h"
#include "derev/util/io.h"

using namespace derev;

namespace {

// Quadratic-time convolution oracle, double accumulation.
std::vector<double> DirectConvolve(const std::vector<float>& a,
                                   const std::vector<float>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] += static_cast<double>(a[i]) * b[j];
    }
  }
  return out;
}

double Energy(const Waveform& w) {
  double e = 0.0;
  for (float v : w) e += static_cast<double>(v) * v;
  return e;
}

}  // namespace

TEST_CASE("unit impulse rir is the identity") {
  Rir delta;
  delta.samples = {1.0f};
  delta.t60 = 0.1;
  const Waveform x = SynthesizePseudoSpeech(0.25, 4);
  const Waveform y = ConvolveRir(x, delta);
  REQUIRE(y.size() == x.size());
  CHECK(y == x);  // bit-exact: double-precision FFT error is below float ulp
}

TEST_CASE("delayed impulse rir shifts the input") {
  Rir shift;
  shift.samples.assign(11, 0.0f);
  shift.samples[10] = 1.0f;
  const Waveform x = SynthesizePseudoSpeech(0.25, 5);
  const Waveform y = ConvolveRir(x, shift);
  REQUIRE(y.size() == x.size());
  for (size_t i = 0; i < 10; ++i) CHECK(std::abs(y[i]) < 1e-7);
  for (size_t i = 10; i < y.size(); ++i) {
    CHECK(y[i] == doctest::Approx(x[i - 10]).epsilon(1e-6));
  }
}

TEST_CASE("fft convolution matches the quadratic oracle") {
  Rng rng(11);
  std::vector<float> sig(200), ker(50);
  for (auto& v : sig) v = static_cast<float>(rng.Gaussian());
  for (auto& v : ker) v = static_cast<float>(0.3 * rng.Gaussian());
  const auto fast = FftConvolve(sig, ker);
  const auto slow = DirectConvolve(sig, ker);
  REQUIRE(fast.size() == slow.size());
  for (size_t i = 0; i < fast.size(); ++i) {
    CHECK(std::abs(fast[i] - slow[i]) < 1e-6);
  }
}

TEST_CASE("convolution is linear") {
  Rng rng(12);
  Waveform x(400), y(400);
  for (auto& v : x) v = static_cast<float>(rng.Gaussian());
  for (auto& v : y) v = static_cast<float>(rng.Gaussian());
  const Rir rir = GenerateRir(0.3, 1600, RoomCategory::kSmall, 77);
  const float a = 0.7f, b = -1.3f;
  Waveform mix(400);
  for (size_t i = 0; i < 400; ++i) mix[i] = a * x[i] + b * y[i];
  const Waveform cm = ConvolveRir(mix, rir);
  const Waveform cx = ConvolveRir(x, rir);
  const Waveform cy = ConvolveRir(y, rir);
  for (size_t i = 0; i < 400; ++i) {
    CHECK(std::abs(cm[i] - (a * cx[i] + b * cy[i])) < 1e-5);
  }
}

TEST_CASE("generated rirs have a unit direct path and are deterministic") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    const Rir r = GenerateRir(0.5, 8000, RoomCategory::kMedium, seed);
    CHECK(r.samples[0] == 1.0f);
    const Rir again = GenerateRir(0.5, 8000, RoomCategory::kMedium, seed);
    CHECK(r.samples == again.samples);
  }
  CHECK_THROWS(GenerateRir(0.05, 800, RoomCategory::kSmall, 1));
  CHECK_THROWS(GenerateRir(2.5, 800, RoomCategory::kSmall, 1));
}

TEST_CASE("schroeder-measured T60 tracks the requested T60") {
  // 20 seeded RIRs across the supported range, +-20%.
  for (int i = 0; i < 20; ++i) {
    const double t60 = 0.2 + 0.08 * i;  // 0.2 .. 1.72
    const int64_t len = static_cast<int64_t>(t60 * 16000 * 1.2);
    const Rir r = GenerateRir(t60, len, RoomCategory::kMedium, 1000 + i);
    const double measured = MeasureT60Schroeder(r.samples, 16000);
    CHECK(measured == doctest::Approx(t60).epsilon(0.20));
  }
}

TEST_CASE("category ranges") {
  CHECK(CategoryT60Range(RoomCategory::kSmall).first == doctest::Approx(0.2));
  CHECK(CategoryT60Range(RoomCategory::kLarge).second == doctest::Approx(1.2));
}

TEST_CASE("dataset build: splits, disjoint rirs, determinism, energy") {
  namespace fs = std::filesystem;
  const std::string dir =
      (fs::temp_directory_path() / "derev_dataset_test").string();
  fs::remove_all(dir);

  DatasetConfig cfg;
  cfg.num_train = 20;
  cfg.num_dev = 5;
  cfg.num_test = 5;
  cfg.duration_sec = 0.5;
  cfg.rirs_train = 6;
  cfg.rirs_dev = 2;
  cfg.rirs_test = 2;
  cfg.master_seed = 99;

  const DatasetManifest manifest = BuildDataset(cfg, dir);
  CHECK(manifest.utterances.size() == 30);
  CHECK(manifest.ForSplit(Split::kTrain).size() == 20);
  CHECK(manifest.ForSplit(Split::kDev).size() == 5);
  CHECK(manifest.ForSplit(Split::kTest).size() == 5);

  // RIR pools are disjoint across splits.
  std::set<std::string> train_rirs, dev_rirs, test_rirs;
  for (const auto& u : manifest.utterances) {
    if (u.split == Split::kTrain) train_rirs.insert(u.rir_id);
    if (u.split == Split::kDev) dev_rirs.insert(u.rir_id);
    if (u.split == Split::kTest) test_rirs.insert(u.rir_id);
  }
  for (const auto& id : test_rirs) {
    CHECK(train_rirs.count(id) == 0);
    CHECK(dev_rirs.count(id) == 0);
  }
  for (const auto& id : dev_rirs) CHECK(train_rirs.count(id) == 0);

  // Clean/reverb pairs align and reverb keeps at least clean energy - 1%.
  const DatasetManifest loaded =
      ReadManifest((fs::path(dir) / "manifest.jsonl").string());
  for (const auto& u : loaded.utterances) {
    const WavData clean = ReadWav(u.clean_path);
    const WavData reverb = ReadWav(u.reverb_path);
    REQUIRE(clean.samples.size() == reverb.samples.size());
    CHECK(Energy(reverb.samples) >= 0.99 * Energy(clean.samples));
  }

  // Same master seed -> byte-identical manifest; different seed -> different.
  const auto manifest_bytes =
      ReadAllBytes((fs::path(dir) / "manifest.jsonl").string());
  const std::string dir2 =
      (fs::temp_directory_path() / "derev_dataset_test2").string();
  fs::remove_all(dir2);
  BuildDataset(cfg, dir2);
  const auto manifest_bytes2 =
      ReadAllBytes((fs::path(dir2) / "manifest.jsonl").string());
  CHECK(manifest_bytes == manifest_bytes2);

  // WAV payloads are byte-identical across rebuilds too.
  const auto wav1 = ReadAllBytes((fs::path(dir) / "wav/train_0000.reverb.wav").string());
  const auto wav2 = ReadAllBytes((fs::path(dir2) / "wav/train_0000.reverb.wav").string());
  CHECK(wav1 == wav2);

  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("pseudo speech is deterministic and bounded") {
  const Waveform a = SynthesizePseudoSpeech(0.5, 42);
  const Waveform b = SynthesizePseudoSpeech(0.5, 42);
  CHECK(a == b);
  float peak = 0.0f;
  for (float v : a) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.3f).epsilon(1e-3));
}
