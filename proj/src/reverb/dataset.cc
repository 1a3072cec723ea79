// src/reverb/dataset.cc

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

#include "derev/reverb/dataset.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "derev/core/rng.h"
#include "derev/dsp/wav.h"
#include "derev/reverb/convolve.h"
#include "derev/reverb/pseudo_speech.h"
#include "derev/util/errors.h"
#include "derev/util/io.h"

namespace derev {

namespace fs = std::filesystem;
using nlohmann::json;

const char* SplitName(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

Split ParseSplit(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw DataError("unknown split: " + name);
}

std::vector<const UtterancePair*> DatasetManifest::ForSplit(Split s) const {
  std::vector<const UtterancePair*> out;
  for (const auto& u : utterances) {
    if (u.split == s) out.push_back(&u);
  }
  return out;
}

namespace {

RoomCategory CategoryForT60(double t60) {
  if (t60 < 0.4) return RoomCategory::kSmall;
  if (t60 < 0.7) return RoomCategory::kMedium;
  return RoomCategory::kLarge;
}

struct RirEntry {
  std::string id;
  Rir rir;
};

std::vector<RirEntry> MakeRirPool(const DatasetConfig& cfg, Split split,
                                  int count) {
  std::vector<RirEntry> pool;
  pool.reserve(count);
  for (int i = 0; i < count; ++i) {
    const uint64_t seed = DeriveSeed(
        cfg.master_seed, std::string("rir/") + SplitName(split), i);
    Rng rng(seed);
    const double t60 = rng.Uniform(cfg.t60_min, cfg.t60_max);
    const RoomCategory cat = CategoryForT60(t60);
    const int64_t length =
        std::max<int64_t>(static_cast<int64_t>(t60 * cfg.sample_rate),
                          cfg.sample_rate / 20);
    RirEntry entry;
    entry.id = std::string("rir_") + SplitName(split) + "_" +
               RoomCategoryName(cat) + "_" + std::to_string(i);
    entry.rir = GenerateRir(t60, length, cat, seed + 1, cfg.sample_rate);
    pool.push_back(std::move(entry));
  }
  return pool;
}

struct UttJob {
  Split split;
  int index;
  const RirEntry* rir;
  std::string id;
  std::string clean_rel, reverb_rel;
};

}  // namespace

DatasetManifest BuildDataset(const DatasetConfig& config,
                             const std::string& out_dir) {
  if (config.num_train <= 0 || config.num_dev <= 0 || config.num_test <= 0) {
    throw DataError("dataset: every split must request >= 1 utterance");
  }
  fs::create_directories(fs::path(out_dir) / "wav");

  const std::vector<std::pair<Split, int>> split_sizes = {
      {Split::kTrain, config.num_train},
      {Split::kDev, config.num_dev},
      {Split::kTest, config.num_test}};
  const std::vector<std::pair<Split, int>> pool_sizes = {
      {Split::kTrain, config.rirs_train},
      {Split::kDev, config.rirs_dev},
      {Split::kTest, config.rirs_test}};

  std::vector<std::vector<RirEntry>> pools;
  for (const auto& [split, n] : pool_sizes) {
    pools.push_back(MakeRirPool(config, split, std::max(n, 1)));
  }

  // Plan all utterances first so that workers never touch shared state.
  std::vector<UttJob> jobs;
  for (size_t si = 0; si < split_sizes.size(); ++si) {
    const auto [split, count] = split_sizes[si];
    for (int i = 0; i < count; ++i) {
      UttJob job;
      job.split = split;
      job.index = i;
      Rng pick(DeriveSeed(config.master_seed,
                          std::string("pick/") + SplitName(split), i));
      job.rir = &pools[si][pick.Below(pools[si].size())];
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s_%04d", SplitName(split), i);
      job.id = buf;
      job.clean_rel = "wav/" + job.id + ".clean.wav";
      job.reverb_rel = "wav/" + job.id + ".reverb.wav";
      jobs.push_back(std::move(job));
    }
  }

  auto run_job = [&](const UttJob& job) {
    const uint64_t seed = DeriveSeed(
        config.master_seed, std::string("utt/") + SplitName(job.split),
        job.index);
    Waveform clean =
        SynthesizePseudoSpeech(config.duration_sec, seed, config.sample_rate);
    Waveform reverb = ConvolveRir(clean, job.rir->rir);
    // Common rescale keeps the pair aligned and inside PCM16 range.
    float peak = 0.0f;
    for (float v : clean) peak = std::max(peak, std::abs(v));
    for (float v : reverb) peak = std::max(peak, std::abs(v));
    if (peak > 0.99f) {
      const float scale = 0.99f / peak;
      for (float& v : clean) v *= scale;
      for (float& v : reverb) v *= scale;
    }
    WriteWav((fs::path(out_dir) / job.clean_rel).string(), clean,
             config.sample_rate);
    WriteWav((fs::path(out_dir) / job.reverb_rel).string(), reverb,
             config.sample_rate);
  };

  const int jobs_n = std::max(config.jobs, 1);
  if (jobs_n == 1) {
    for (const auto& job : jobs) run_job(job);
  } else {
    std::vector<std::thread> workers;
    std::atomic<size_t> next{0};
    for (int w = 0; w < jobs_n; ++w) {
      workers.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < jobs.size();
             i = next.fetch_add(1)) {
          run_job(jobs[i]);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  DatasetManifest manifest;
  manifest.sample_rate = config.sample_rate;
  manifest.master_seed = config.master_seed;
  for (const auto& job : jobs) {
    UtterancePair u;
    u.id = job.id;
    u.clean_path = job.clean_rel;
    u.reverb_path = job.reverb_rel;
    u.rir_id = job.rir->id;
    u.split = job.split;
    u.duration_sec = config.duration_sec;
    manifest.utterances.push_back(std::move(u));
  }

  WriteManifest(manifest, (fs::path(out_dir) / "manifest.jsonl").string());

  json meta;
  meta["sample_rate"] = config.sample_rate;
  meta["master_seed"] = config.master_seed;
  meta["duration_sec"] = config.duration_sec;
  meta["t60_min"] = config.t60_min;
  meta["t60_max"] = config.t60_max;
  json rir_table = json::array();
  for (const auto& pool : pools) {
    for (const auto& e : pool) {
      rir_table.push_back({{"id", e.id},
                           {"t60", e.rir.t60},
                           {"category", RoomCategoryName(e.rir.category)},
                           {"length", e.rir.samples.size()}});
    }
  }
  meta["rirs"] = rir_table;
  WriteTextFile((fs::path(out_dir) / "manifest.meta.json").string(),
                meta.dump(2) + "\n");
  return manifest;
}

void WriteManifest(const DatasetManifest& manifest, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write manifest: " + path);
  for (const auto& u : manifest.utterances) {
    json rec;
    rec["id"] = u.id;
    rec["clean_path"] = u.clean_path;
    rec["reverb_path"] = u.reverb_path;
    rec["rir_id"] = u.rir_id;
    rec["split"] = SplitName(u.split);
    rec["duration_sec"] = u.duration_sec;
    os << rec.dump() << "\n";
  }
}

DatasetManifest ReadManifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot read manifest: " + path);
  const fs::path base = fs::path(path).parent_path();

  DatasetManifest manifest;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) throw DataError("bad manifest line: " + line);
    UtterancePair u;
    u.id = rec.value("id", "");
    u.clean_path = (base / rec.at("clean_path").get<std::string>()).string();
    u.reverb_path = (base / rec.at("reverb_path").get<std::string>()).string();
    u.rir_id = rec.at("rir_id").get<std::string>();
    u.split = ParseSplit(rec.at("split").get<std::string>());
    u.duration_sec = rec.value("duration_sec", 0.0);
    manifest.utterances.push_back(std::move(u));
  }
  if (manifest.utterances.empty()) {
    throw DataError("manifest has no utterances: " + path);
  }
  return manifest;
}

}  // namespace derev
