// src/nn/checkpoint.cc

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

#include "derev/nn/checkpoint.h"

#include <cstdint>
#include <map>

#include "derev/util/io.h"

namespace derev {

namespace {

constexpr char kMagic[4] = {'D', 'R', 'V', 'B'};
constexpr uint32_t kVersion = 1;

void WriteTensorRecord(std::ostream& os, const std::string& name,
                       const Tensor<float>& t) {
  WriteString(os, name);
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(t.rank()));
  for (size_t i = 0; i < t.rank(); ++i) {
    WriteRaw<uint32_t>(os, static_cast<uint32_t>(t.dim(i)));
  }
  WriteRawArray(os, t.data(), static_cast<size_t>(t.size()));
}

Tensor<float> ReadTensorRecord(std::istream& is, std::string* name) {
  *name = ReadString(is, "tensor name");
  const uint32_t rank = ReadRaw<uint32_t>(is, "tensor rank");
  if (rank == 0 || rank > 8) throw DataError("bad tensor rank");
  Shape shape(rank);
  for (uint32_t i = 0; i < rank; ++i) {
    shape[i] = ReadRaw<uint32_t>(is, "tensor dim");
  }
  Tensor<float> t(shape);
  ReadRawArray(is, t.data(), static_cast<size_t>(t.size()), "tensor data");
  return t;
}

Tensor<float> StatsToTensor(const std::vector<double>& v) {
  Tensor<float> t({static_cast<int64_t>(v.size())});
  for (size_t i = 0; i < v.size(); ++i) t[i] = static_cast<float>(v[i]);
  return t;
}

std::vector<double> TensorToStats(const Tensor<float>& t) {
  std::vector<double> v(static_cast<size_t>(t.size()));
  for (int64_t i = 0; i < t.size(); ++i) v[i] = t[i];
  return v;
}

using TensorMap = std::map<std::string, Tensor<float>>;

TensorMap ReadContainer(const std::string& path, nlohmann::json* descriptor) {
  std::ifstream is = OpenIn(path);
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw DataError("bad checkpoint magic in " + path);
  }
  if (ReadRaw<uint32_t>(is, "checkpoint version") != kVersion) {
    throw DataError("unsupported checkpoint version in " + path);
  }
  const std::string desc_str = ReadString(is, "descriptor");
  *descriptor = nlohmann::json::parse(desc_str, nullptr, false);
  if (descriptor->is_discarded()) {
    throw DataError("bad checkpoint descriptor in " + path);
  }
  const uint32_t count = ReadRaw<uint32_t>(is, "tensor count");
  TensorMap tensors;
  for (uint32_t i = 0; i < count; ++i) {
    std::string name;
    Tensor<float> t = ReadTensorRecord(is, &name);
    if (!tensors.emplace(name, std::move(t)).second) {
      throw DataError("duplicate tensor '" + name + "' in " + path);
    }
  }
  if (is.peek() != EOF) throw DataError("trailing bytes in " + path);
  return tensors;
}

void WriteContainer(const std::string& path, const nlohmann::json& descriptor,
                    const std::vector<std::pair<std::string, const Tensor<float>*>>& tensors) {
  std::ofstream os = OpenOut(path);
  os.write(kMagic, 4);
  WriteRaw<uint32_t>(os, kVersion);
  WriteString(os, descriptor.dump());
  WriteRaw<uint32_t>(os, static_cast<uint32_t>(tensors.size()));
  for (const auto& [name, t] : tensors) WriteTensorRecord(os, name, *t);
  if (!os) throw DataError("failed writing checkpoint: " + path);
}

void FillFromMap(const TensorMap& tensors, const std::string& name,
                 Tensor<float>* dst, const std::string& path) {
  auto it = tensors.find(name);
  if (it == tensors.end()) {
    throw DataError("checkpoint missing tensor '" + name + "' in " + path);
  }
  if (it->second.shape() != dst->shape()) {
    throw DataError("checkpoint tensor '" + name + "' has shape " +
                    ShapeToString(it->second.shape()) + ", expected " +
                    ShapeToString(dst->shape()));
  }
  *dst = it->second;
}

CmvnStats StatsFromMap(const TensorMap& tensors, const std::string& prefix,
                       FeatureKind kind, int64_t frame_count,
                       const std::string& path) {
  auto mean = tensors.find(prefix + ".mean");
  auto var = tensors.find(prefix + ".var");
  if (mean == tensors.end() || var == tensors.end()) {
    throw DataError("checkpoint missing CMVN tensors '" + prefix + "' in " +
                    path);
  }
  CmvnStats stats;
  stats.kind = kind;
  stats.frame_count = frame_count;
  stats.mean = TensorToStats(mean->second);
  stats.var = TensorToStats(var->second);
  return stats;
}

}  // namespace

std::unique_ptr<Enhancer<float>> BuildEnhancer(const nlohmann::json& d,
                                               uint64_t seed) {
  const std::string arch = d.at("arch").get<std::string>();
  const FeatureKind input = ParseFeatureKind(d.at("input_kind").get<std::string>());
  const FeatureKind target = ParseFeatureKind(d.at("target_kind").get<std::string>());
  if (arch == "dnn") {
    DnnConfig cfg;
    cfg.hidden_layers = d.at("hidden_layers").get<int64_t>();
    cfg.hidden_units = d.at("hidden_units").get<int64_t>();
    cfg.context = d.at("context").get<int>();
    cfg.batch_renorm = d.at("batch_renorm").get<bool>();
    cfg.input_kind = input;
    cfg.target_kind = target;
    cfg.feature_dim_override = d.value("feature_dim_override", int64_t{0});
    cfg.output_dim_override = d.value("output_dim_override", int64_t{0});
    return std::make_unique<DnnModel<float>>(cfg, seed);
  }
  if (arch == "rced") {
    RcedConfig cfg;
    cfg.channels = d.at("channels").get<std::vector<int64_t>>();
    cfg.widths = d.at("widths").get<std::vector<int64_t>>();
    cfg.context = d.at("context").get<int>();
    cfg.batch_renorm = d.at("batch_renorm").get<bool>();
    cfg.input_kind = input;
    cfg.target_kind = target;
    cfg.feature_dim_override = d.value("feature_dim_override", int64_t{0});
    cfg.output_dim_override = d.value("output_dim_override", int64_t{0});
    return std::make_unique<RcedModel<float>>(cfg, seed);
  }
  if (arch == "lstmp") {
    LstmpConfig cfg;
    cfg.layers = d.at("layers").get<int64_t>();
    cfg.cells = d.at("cells").get<int64_t>();
    cfg.proj = d.at("proj").get<int64_t>();
    cfg.residual = ParseResidual(d.at("residual").get<std::string>());
    cfg.input_kind = input;
    cfg.target_kind = target;
    cfg.feature_dim_override = d.value("feature_dim_override", int64_t{0});
    cfg.output_dim_override = d.value("output_dim_override", int64_t{0});
    return std::make_unique<LstmpModel<float>>(cfg, seed);
  }
  throw DataError("unknown architecture in checkpoint: " + arch);
}

void SaveCheckpoint(const std::string& path, EnhancerBundle& bundle) {
  nlohmann::json descriptor = bundle.model->Descriptor();
  descriptor["normalize_input"] = bundle.normalize_input;
  descriptor["cmvn_input_frames"] = bundle.input_stats.frame_count;
  descriptor["cmvn_target_frames"] = bundle.target_stats.frame_count;

  std::vector<std::pair<std::string, const Tensor<float>*>> tensors;
  for (auto* p : bundle.model->Params()) tensors.emplace_back(p->name, &p->value);
  for (auto& [name, t] : bundle.model->StateTensors()) tensors.emplace_back(name, t);

  const Tensor<float> in_mean = StatsToTensor(bundle.input_stats.mean);
  const Tensor<float> in_var = StatsToTensor(bundle.input_stats.var);
  const Tensor<float> tgt_mean = StatsToTensor(bundle.target_stats.mean);
  const Tensor<float> tgt_var = StatsToTensor(bundle.target_stats.var);
  tensors.emplace_back("cmvn.input.mean", &in_mean);
  tensors.emplace_back("cmvn.input.var", &in_var);
  tensors.emplace_back("cmvn.target.mean", &tgt_mean);
  tensors.emplace_back("cmvn.target.var", &tgt_var);

  WriteContainer(path, descriptor, tensors);
}

EnhancerBundle LoadCheckpoint(const std::string& path) {
  nlohmann::json descriptor;
  const TensorMap tensors = ReadContainer(path, &descriptor);

  EnhancerBundle bundle;
  bundle.model = BuildEnhancer(descriptor, /*seed=*/0);
  bundle.normalize_input = descriptor.value("normalize_input", true);
  for (auto* p : bundle.model->Params()) {
    FillFromMap(tensors, p->name, &p->value, path);
  }
  for (auto& [name, t] : bundle.model->StateTensors()) {
    FillFromMap(tensors, name, t, path);
  }
  bundle.input_stats = StatsFromMap(
      tensors, "cmvn.input", bundle.model->input_kind(),
      descriptor.value("cmvn_input_frames", int64_t{0}), path);
  bundle.target_stats = StatsFromMap(
      tensors, "cmvn.target", bundle.model->target_kind(),
      descriptor.value("cmvn_target_frames", int64_t{0}), path);
  return bundle;
}

void SaveDiscriminator(const std::string& path, Discriminator<float>& d) {
  std::vector<std::pair<std::string, const Tensor<float>*>> tensors;
  for (auto* p : d.Params()) tensors.emplace_back(p->name, &p->value);
  WriteContainer(path, d.Descriptor(), tensors);
}

Discriminator<float> LoadDiscriminator(const std::string& path) {
  nlohmann::json d;
  const TensorMap tensors = ReadContainer(path, &d);
  if (d.at("arch").get<std::string>() != "discriminator") {
    throw DataError("not a discriminator checkpoint: " + path);
  }
  DiscriminatorConfig cfg;
  cfg.layers = d.at("layers").get<int64_t>();
  cfg.cells = d.at("cells").get<int64_t>();
  cfg.proj = d.at("proj").get<int64_t>();
  cfg.conditional = d.at("conditional").get<bool>();
  cfg.feature_dim = d.at("feature_dim").get<int64_t>();
  cfg.condition_dim = d.at("condition_dim").get<int64_t>();
  Discriminator<float> disc(cfg, /*seed=*/0);
  for (auto* p : disc.Params()) FillFromMap(tensors, p->name, &p->value, path);
  return disc;
}

}  // namespace derev
