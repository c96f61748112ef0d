// Copyright 2026 The spoofprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spoofprint/model.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "spoofprint/errors.h"
#include "spoofprint/nn/ops.h"

namespace spoofprint {
namespace {

using nn::ConvSpec;
using nn::Tensor;

nlohmann::ordered_json StackToJson(const std::vector<ConvSpec>& stack) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : stack) {
    arr.push_back({{"in", s.in_channels},
                   {"out", s.out_channels},
                   {"kernel", s.kernel},
                   {"stride", s.stride},
                   {"dilation", s.dilation}});
  }
  return arr;
}

std::vector<ConvSpec> StackFromJson(const nlohmann::json& arr) {
  std::vector<ConvSpec> stack;
  for (const auto& j : arr) {
    ConvSpec s;
    s.in_channels = j.at("in").get<std::size_t>();
    s.out_channels = j.at("out").get<std::size_t>();
    s.kernel = j.at("kernel").get<std::size_t>();
    s.stride = j.at("stride").get<std::size_t>();
    s.dilation = j.at("dilation").get<std::size_t>();
    stack.push_back(s);
  }
  return stack;
}

void CheckChain(const std::vector<ConvSpec>& stack, std::size_t in, const std::string& name) {
  if (stack.empty()) throw InvalidArgument(name + ": empty convolution stack");
  std::size_t c = in;
  for (const auto& s : stack) {
    if (s.in_channels != c) {
      throw InvalidArgument(name + ": layer expects " + std::to_string(s.in_channels) +
                            " input channels, previous layer gives " + std::to_string(c));
    }
    if (s.kernel == 0 || s.stride == 0 || s.dilation == 0 || s.out_channels == 0) {
      throw InvalidArgument(name + ": kernel, stride, dilation and width must be positive");
    }
    c = s.out_channels;
  }
}

std::vector<ConvSpec> LprChain(const ModelConfig& config) {
  std::vector<ConvSpec> chain = config.lpr_front_end;
  chain.insert(chain.end(), config.lpr_encoder.begin(), config.lpr_encoder.end());
  return chain;
}

// Log-mel frames needed for `hidden` LMS hidden frames.
std::size_t LmsFramesFor(const ModelConfig& config, std::size_t hidden) {
  const auto rf = nn::EffectiveReceptiveField(config.lms_encoder);
  return rf.size + (hidden - 1) * rf.stride;
}

std::vector<float> Standardized(const Matrix& m) {
  const auto& d = m.data();
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(std::max<std::size_t>(d.size(), 1));
  double var = 0.0;
  for (double v : d) var += (v - mean) * (v - mean);
  var /= static_cast<double>(std::max<std::size_t>(d.size(), 1));
  const double scale = 1.0 / std::max(std::sqrt(var), 1e-8);
  std::vector<float> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = static_cast<float>((d[i] - mean) * scale);
  return out;
}

std::vector<float> RmsNormalized(const std::vector<double>& x) {
  double energy = 0.0;
  for (double v : x) energy += v * v;
  const double rms = std::sqrt(energy / static_cast<double>(std::max<std::size_t>(x.size(), 1)));
  const double scale = rms > 0.0 ? 1.0 / rms : 0.0;
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<float>(x[i] * scale);
  return out;
}

}  // namespace

std::string ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kLpr: return "lpr";
    case Architecture::kLms: return "lms";
    case Architecture::kFuseIntermediate: return "fuse-intermediate";
  }
  return "lpr";
}

Architecture ParseArchitecture(const std::string& name) {
  if (name == "lpr") return Architecture::kLpr;
  if (name == "lms") return Architecture::kLms;
  if (name == "fuse-intermediate") return Architecture::kFuseIntermediate;
  throw InvalidArgument("unknown architecture '" + name +
                        "' (expected lpr, lms or fuse-intermediate)");
}

std::string ArchitectureLabel(Architecture arch) {
  switch (arch) {
    case Architecture::kLpr: return "LPR-DNN";
    case Architecture::kLms: return "LMS-DNN";
    case Architecture::kFuseIntermediate: return "LPR+LMS-DNN";
  }
  return "LPR-DNN";
}

bool UsesResidual(Architecture arch) { return arch != Architecture::kLms; }
bool UsesLogMel(Architecture arch) { return arch != Architecture::kLpr; }

std::vector<ConvSpec> DefaultLprFrontEnd() {
  return {{1, 16, 64, 4, 1}, {16, 64, 13, 4, 1}};
}

std::vector<ConvSpec> DefaultLprEncoder() {
  return {{64, 128, 5, 2, 1}, {128, 128, 3, 2, 1}, {128, 128, 3, 1, 15}, {128, 128, 1, 1, 1}};
}

std::vector<ConvSpec> DefaultLmsEncoder(std::size_t n_mels) {
  return {{n_mels, 128, 4, 3, 1}, {128, 128, 4, 2, 1}, {128, 128, 4, 2, 1}, {128, 128, 1, 1, 1}};
}

std::size_t ModelConfig::hidden_channels() const {
  switch (arch) {
    case Architecture::kLpr: return lpr_encoder.back().out_channels;
    case Architecture::kLms: return lms_encoder.back().out_channels;
    case Architecture::kFuseIntermediate:
      return lpr_encoder.back().out_channels + lms_encoder.back().out_channels;
  }
  return 0;
}

void ModelConfig::Validate() const {
  if (UsesResidual(arch)) {
    CheckChain(lpr_front_end, 1, "lpr front end");
    CheckChain(lpr_encoder, lpr_front_end.back().out_channels, "lpr encoder");
  }
  if (UsesLogMel(arch)) CheckChain(lms_encoder, log_mel.n_mels, "lms encoder");
  if (num_heads == 0) throw InvalidArgument("at least one attention head is required");
  if (attention_bottleneck == 0 || segment_hidden == 0) {
    throw InvalidArgument("attention bottleneck and segment width must be positive");
  }
  if (num_classes < 2) throw InvalidArgument("at least two classes are required");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidArgument("dropout must be in [0, 1)");
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  if (lp_order == 0) throw InvalidArgument("LP order must be positive");
}

std::string ModelConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["arch"] = ArchitectureName(arch);
  j["num_heads"] = num_heads;
  j["attention_bottleneck"] = attention_bottleneck;
  j["segment_hidden"] = segment_hidden;
  j["num_classes"] = num_classes;
  j["dropout"] = dropout;
  j["lp_order"] = lp_order;
  j["log_mel"] = {{"n_mels", log_mel.n_mels},
                  {"n_fft", log_mel.n_fft},
                  {"frame_length", log_mel.frame_length},
                  {"hop_length", log_mel.hop_length},
                  {"energy_floor", log_mel.energy_floor}};
  j["sample_rate"] = sample_rate;
  j["seed"] = seed;
  j["lpr_front_end"] = StackToJson(lpr_front_end);
  j["lpr_encoder"] = StackToJson(lpr_encoder);
  j["lms_encoder"] = StackToJson(lms_encoder);
  return j.dump();
}

ModelConfig ModelConfig::FromJson(const std::string& text) {
  ModelConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    c.arch = ParseArchitecture(j.at("arch").get<std::string>());
    c.num_heads = j.at("num_heads").get<std::size_t>();
    c.attention_bottleneck = j.at("attention_bottleneck").get<std::size_t>();
    c.segment_hidden = j.at("segment_hidden").get<std::size_t>();
    c.num_classes = j.at("num_classes").get<std::size_t>();
    c.dropout = j.at("dropout").get<double>();
    c.lp_order = j.at("lp_order").get<std::size_t>();
    const auto& lm = j.at("log_mel");
    c.log_mel.n_mels = lm.at("n_mels").get<std::size_t>();
    c.log_mel.n_fft = lm.at("n_fft").get<std::size_t>();
    c.log_mel.frame_length = lm.at("frame_length").get<std::size_t>();
    c.log_mel.hop_length = lm.at("hop_length").get<std::size_t>();
    c.log_mel.energy_floor = lm.at("energy_floor").get<double>();
    c.sample_rate = j.at("sample_rate").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.lpr_front_end = StackFromJson(j.at("lpr_front_end"));
    c.lpr_encoder = StackFromJson(j.at("lpr_encoder"));
    c.lms_encoder = StackFromJson(j.at("lms_encoder"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model config: ") + e.what());
  }
  c.Validate();
  return c;
}

double FrameTiming::CenterSeconds(std::size_t t) const {
  return (static_cast<double>(t * stride) + (static_cast<double>(receptive_field) - 1.0) / 2.0) /
         sample_rate;
}

FrameTiming LprTiming(const ModelConfig& config) {
  const auto chain = LprChain(config);
  const auto rf = nn::EffectiveReceptiveField(chain);
  return {rf.size, rf.stride, config.sample_rate};
}

FrameTiming LmsTiming(const ModelConfig& config) {
  std::vector<ConvSpec> chain{{1, 1, config.log_mel.frame_length, config.log_mel.hop_length, 1}};
  chain.insert(chain.end(), config.lms_encoder.begin(), config.lms_encoder.end());
  const auto rf = nn::EffectiveReceptiveField(chain);
  return {rf.size, rf.stride, config.sample_rate};
}

FrameTiming ModelTiming(const ModelConfig& config) {
  return config.arch == Architecture::kLms ? LmsTiming(config) : LprTiming(config);
}

nn::ReceptiveField ReportedReceptiveField(const ModelConfig& config, Architecture arch) {
  if (arch == Architecture::kLms) {
    const auto rf = nn::EffectiveReceptiveField(config.lms_encoder);
    return {rf.size * config.log_mel.hop_length, rf.stride};
  }
  return nn::EffectiveReceptiveField(LprChain(config));
}

std::size_t MinimumSamples(const ModelConfig& config) {
  std::size_t n = 0;
  if (UsesResidual(config.arch)) {
    const auto rf = nn::EffectiveReceptiveField(LprChain(config));
    n = std::max(n, rf.size + rf.stride);
  }
  if (UsesLogMel(config.arch)) {
    const std::size_t frames = LmsFramesFor(config, 2);
    n = std::max(n, config.log_mel.frame_length + (frames - 1) * config.log_mel.hop_length);
  }
  return n;
}

UtteranceFeatures FeaturesFromWaveform(const Waveform& wave, const ModelConfig& config,
                                       Execution exec) {
  if (wave.sample_rate != config.sample_rate) {
    throw DataError("sample rate " + std::to_string(wave.sample_rate) + " does not match model " +
                    std::to_string(config.sample_rate));
  }
  UtteranceFeatures f;
  if (UsesResidual(config.arch)) {
    f.residual = RmsNormalized(LpResidual(wave, config.lp_order, 400, 160, exec).samples);
  }
  if (UsesLogMel(config.arch)) {
    const FeatureMatrix m = LogMelEnergies(wave, config.log_mel, exec);
    f.frames = m.num_frames();
    f.log_mel = Standardized(m.data);
  }
  return f;
}

UtteranceFeatures FeaturesFromCache(const ResidualSignal* residual, const FeatureMatrix* log_mel,
                                    const ModelConfig& config) {
  UtteranceFeatures f;
  if (UsesResidual(config.arch)) {
    if (!residual) throw InvalidArgument("architecture needs a cached LP residual");
    if (residual->order != config.lp_order || residual->sample_rate != config.sample_rate) {
      throw InvalidArgument("cached residual (order " + std::to_string(residual->order) +
                            ") does not match the model configuration (order " +
                            std::to_string(config.lp_order) + ")");
    }
    f.residual = RmsNormalized(residual->samples);
  }
  if (UsesLogMel(config.arch)) {
    if (!log_mel) throw InvalidArgument("architecture needs cached log-mel features");
    if (log_mel->kind != FeatureKind::kLogMel || log_mel->num_features() != config.log_mel.n_mels ||
        log_mel->frame_grid.hop_length != config.log_mel.hop_length ||
        log_mel->frame_grid.frame_length != config.log_mel.frame_length ||
        log_mel->sample_rate != config.sample_rate) {
      throw InvalidArgument("cached log-mel features do not match the model configuration");
    }
    f.frames = log_mel->num_frames();
    f.log_mel = Standardized(log_mel->data);
  }
  return f;
}

void CheckFeatures(const UtteranceFeatures& f, const ModelConfig& config,
                   const std::string& utterance_id) {
  if (UsesResidual(config.arch)) {
    const auto rf = nn::EffectiveReceptiveField(LprChain(config));
    if (f.residual.size() < rf.size + rf.stride) {
      throw DataError(utterance_id + ": residual of " + std::to_string(f.residual.size()) +
                      " samples is shorter than the minimum " +
                      std::to_string(rf.size + rf.stride));
    }
  }
  if (UsesLogMel(config.arch)) {
    const std::size_t need = LmsFramesFor(config, 2);
    if (f.frames < need) {
      throw DataError(utterance_id + ": " + std::to_string(f.frames) +
                      " log-mel frames, fewer than the minimum " + std::to_string(need));
    }
  }
}

Batch MakeBatch(std::span<const UtteranceFeatures* const> items, const ModelConfig& config) {
  Batch b;
  b.size = items.size();
  if (items.empty()) throw InvalidArgument("empty batch");
  if (UsesResidual(config.arch)) {
    std::size_t max_len = 0;
    for (const auto* f : items) max_len = std::max(max_len, f->residual.size());
    b.residual = Tensor::Zeros({b.size, 1, max_len});
    auto d = b.residual.data();
    for (std::size_t n = 0; n < b.size; ++n) {
      std::copy(items[n]->residual.begin(), items[n]->residual.end(), d.begin() + n * max_len);
      b.residual_lengths.push_back(items[n]->residual.size());
    }
  }
  if (UsesLogMel(config.arch)) {
    const std::size_t M = config.log_mel.n_mels;
    std::size_t max_frames = 0;
    for (const auto* f : items) max_frames = std::max(max_frames, f->frames);
    b.log_mel = Tensor::Zeros({b.size, M, max_frames});
    auto d = b.log_mel.data();
    for (std::size_t n = 0; n < b.size; ++n) {
      const auto* f = items[n];
      if (f->log_mel.size() != M * f->frames) {
        throw InvalidArgument("log-mel matrix size does not match its frame count");
      }
      for (std::size_t m = 0; m < M; ++m) {
        std::copy_n(f->log_mel.begin() + m * f->frames, f->frames,
                    d.begin() + (n * M + m) * max_frames);
      }
      b.log_mel_lengths.push_back(f->frames);
    }
  }
  return b;
}

AttentionSummary BinarizeAttention(const AttentionMap& map) {
  if (map.frames == 0 || map.channels == 0) throw InvalidArgument("empty attention map");
  if (map.weights.size() != map.channels * map.frames) {
    throw InvalidArgument("attention map size does not match its shape");
  }
  AttentionSummary s;
  s.mean.assign(map.frames, 0.0);
  for (std::size_t c = 0; c < map.channels; ++c) {
    for (std::size_t t = 0; t < map.frames; ++t) s.mean[t] += map.weights[c * map.frames + t];
  }
  for (double& m : s.mean) m /= static_cast<double>(map.channels);
  for (double m : s.mean) s.threshold += m;
  s.threshold /= static_cast<double>(map.frames);
  s.mask.resize(map.frames);
  const auto& tm = map.timing;
  const double offset =
      (static_cast<double>(tm.receptive_field) - static_cast<double>(tm.stride)) / 2.0;
  for (std::size_t t = 0; t < map.frames; ++t) {
    s.mask[t] = s.mean[t] > s.threshold;
    if (!s.mask[t]) continue;
    const double begin =
        std::max(0.0, static_cast<double>(t * tm.stride) + offset) / tm.sample_rate;
    const double end =
        (static_cast<double>((t + 1) * tm.stride) + offset) / tm.sample_rate;
    if (t > 0 && s.mask[t - 1] && !s.intervals.empty()) {
      s.intervals.back().second = end;
    } else {
      s.intervals.push_back({begin, end});
    }
  }
  return s;
}

std::vector<double> LateFuse(std::span<const double> a, std::span<const double> b, double w_a,
                             double w_b) {
  if (a.size() != b.size()) throw InvalidArgument("late fusion: logit lengths differ");
  if (!(w_a >= 0.0 && w_b >= 0.0) || std::abs(w_a + w_b - 1.0) > 1e-9) {
    throw InvalidArgument("late fusion weights must be nonnegative and sum to 1");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = w_a * a[i] + w_b * b[i];
  return out;
}

std::vector<std::size_t> AlignFrames(const FrameTiming& fine, std::size_t fine_frames,
                                     const FrameTiming& coarse, std::size_t coarse_frames) {
  if (fine_frames == 0 || coarse_frames == 0) {
    throw DataError("cannot align hidden frames: one branch produced no frames");
  }
  std::vector<std::size_t> index(fine_frames);
  const double coarse_offset = (static_cast<double>(coarse.receptive_field) - 1.0) / 2.0;
  for (std::size_t t = 0; t < fine_frames; ++t) {
    const double center = static_cast<double>(t * fine.stride) +
                          (static_cast<double>(fine.receptive_field) - 1.0) / 2.0;
    const double u = std::round((center - coarse_offset) / static_cast<double>(coarse.stride));
    index[t] = static_cast<std::size_t>(
        std::clamp(u, 0.0, static_cast<double>(coarse_frames - 1)));
  }
  return index;
}

AttributionModel::AttributionModel(const ModelConfig& config) : config_(config) {
  config_.Validate();
  nn::Generator gen(config_.seed);
  if (UsesResidual(config_.arch)) {
    front_end_ = MakeBlocks(config_.lpr_front_end, &gen);
    lpr_encoder_ = MakeBlocks(config_.lpr_encoder, &gen);
  }
  if (UsesLogMel(config_.arch)) lms_encoder_ = MakeBlocks(config_.lms_encoder, &gen);
  const std::size_t d = config_.hidden_channels();
  for (std::size_t h = 0; h < config_.num_heads; ++h) {
    Head head;
    head.encoder = nn::Conv1dLayer({d, config_.attention_bottleneck, 1, 1, 1}, &gen);
    head.decoder = nn::Conv1dLayer({config_.attention_bottleneck, d, 1, 1, 1}, &gen);
    heads_.push_back(std::move(head));
  }
  segment1_ = nn::DenseLayer(config_.embedding_dim(), config_.segment_hidden, &gen);
  segment2_ = nn::DenseLayer(config_.segment_hidden, config_.num_classes, &gen);
}

std::vector<AttributionModel::Block> AttributionModel::MakeBlocks(
    const std::vector<ConvSpec>& specs, nn::Generator* gen) {
  std::vector<Block> blocks;
  for (const auto& s : specs) {
    Block b;
    b.conv = nn::Conv1dLayer(s, gen);
    b.norm = nn::LayerNormLayer(s.out_channels);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

Tensor AttributionModel::RunBlocks(const std::vector<Block>& blocks, Tensor x, bool training,
                                   nn::Generator* gen, Execution exec) const {
  for (const auto& b : blocks) {
    x = b.conv.Forward(x, exec);
    x = nn::Relu(x);
    x = nn::Dropout(x, config_.dropout, training, gen);
    x = b.norm.Forward(x);
  }
  return x;
}

ForwardResult AttributionModel::Forward(const Batch& batch, bool training,
                                        nn::Generator* dropout_gen, Execution exec) const {
  const auto arch = config_.arch;
  ForwardResult r;
  Tensor hidden;
  std::vector<std::size_t> lpr_len, lms_len;
  Tensor h_lpr, h_lms;
  if (UsesResidual(arch)) {
    if (!batch.residual.defined()) throw InvalidArgument("batch lacks residual input");
    const auto chain = LprChain(config_);
    for (std::size_t l : batch.residual_lengths) {
      lpr_len.push_back(nn::StackOutputLength(chain, l));
    }
    h_lpr = RunBlocks(front_end_, batch.residual, training, dropout_gen, exec);
    h_lpr = RunBlocks(lpr_encoder_, h_lpr, training, dropout_gen, exec);
  }
  if (UsesLogMel(arch)) {
    if (!batch.log_mel.defined()) throw InvalidArgument("batch lacks log-mel input");
    for (std::size_t l : batch.log_mel_lengths) {
      lms_len.push_back(nn::StackOutputLength(config_.lms_encoder, l));
    }
    h_lms = RunBlocks(lms_encoder_, batch.log_mel, training, dropout_gen, exec);
  }
  if (arch == Architecture::kLpr) {
    hidden = h_lpr;
    r.frame_lengths = lpr_len;
  } else if (arch == Architecture::kLms) {
    hidden = h_lms;
    r.frame_lengths = lms_len;
  } else {
    const FrameTiming fine = LprTiming(config_);
    const FrameTiming coarse = LmsTiming(config_);
    std::vector<std::vector<std::size_t>> index;
    for (std::size_t n = 0; n < batch.size; ++n) {
      index.push_back(AlignFrames(fine, h_lpr.dim(2), coarse, lms_len[n]));
    }
    hidden = nn::ConcatChannels(h_lpr, nn::GatherTime(h_lms, index));
    r.frame_lengths = lpr_len;
  }
  for (std::size_t l : r.frame_lengths) {
    if (l < 2) throw DataError("utterance too short: fewer than two hidden frames");
  }
  std::vector<Tensor> stats;
  for (const auto& head : heads_) {
    Tensor scores = head.decoder.Forward(head.encoder.Forward(hidden, exec), exec);
    Tensor a = nn::SoftmaxOverTime(scores, r.frame_lengths);
    stats.push_back(nn::AttentiveStats(hidden, a, r.frame_lengths));
    r.attention.push_back(a);
  }
  r.embedding = nn::ConcatFeatures<float>(stats);
  r.logits = segment2_.Forward(nn::Relu(segment1_.Forward(r.embedding)));
  r.logits.CheckFinite("logits");
  return r;
}

Classification AttributionModel::Classify(const UtteranceFeatures& features,
                                          Execution exec) const {
  nn::NoGradGuard no_grad;
  const UtteranceFeatures* items[] = {&features};
  const Batch batch = MakeBatch(items, config_);
  const ForwardResult r = Forward(batch, false, nullptr, exec);
  Classification c;
  c.logits.assign(r.logits.data().begin(), r.logits.data().end());
  c.embedding.assign(r.embedding.data().begin(), r.embedding.data().end());
  const std::size_t frames = r.frame_lengths[0];
  const FrameTiming timing = ModelTiming(config_);
  for (std::size_t h = 0; h < r.attention.size(); ++h) {
    const Tensor& a = r.attention[h];
    AttentionMap map;
    map.head = h;
    map.channels = a.dim(1);
    map.frames = frames;
    map.timing = timing;
    map.weights.resize(map.channels * frames);
    for (std::size_t ch = 0; ch < map.channels; ++ch) {
      std::copy_n(a.data().begin() + ch * a.dim(2), frames, map.weights.begin() + ch * frames);
    }
    c.attention.push_back(std::move(map));
  }
  return c;
}

Classification AttributionModel::Classify(const Waveform& wave, Execution exec) const {
  const UtteranceFeatures f = FeaturesFromWaveform(wave, config_, exec);
  CheckFeatures(f, config_, "<waveform>");
  return Classify(f, exec);
}

std::vector<nn::NamedParameter> AttributionModel::Parameters() const {
  std::vector<nn::NamedParameter> out;
  auto blocks = [&](const std::vector<Block>& bs, const std::string& prefix) {
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string p = prefix + "." + std::to_string(i);
      bs[i].conv.CollectParameters(p + ".conv", &out);
      bs[i].norm.CollectParameters(p + ".norm", &out);
    }
  };
  blocks(front_end_, "front_end");
  blocks(lpr_encoder_, "lpr_encoder");
  blocks(lms_encoder_, "lms_encoder");
  for (std::size_t h = 0; h < heads_.size(); ++h) {
    const std::string p = "heads." + std::to_string(h);
    heads_[h].encoder.CollectParameters(p + ".encoder", &out);
    heads_[h].decoder.CollectParameters(p + ".decoder", &out);
  }
  segment1_.CollectParameters("segment.0", &out);
  segment2_.CollectParameters("segment.1", &out);
  return out;
}

std::vector<std::vector<float>> AttributionModel::SnapshotParameters() const {
  std::vector<std::vector<float>> values;
  for (const auto& p : Parameters()) {
    values.emplace_back(p.tensor.data().begin(), p.tensor.data().end());
  }
  return values;
}

void AttributionModel::RestoreParameters(const std::vector<std::vector<float>>& values) {
  auto params = Parameters();
  if (values.size() != params.size()) throw InvalidArgument("parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto d = params[i].tensor.data();
    if (values[i].size() != d.size()) {
      throw InvalidArgument("parameter " + params[i].name + " has the wrong size");
    }
    std::copy(values[i].begin(), values[i].end(), d.begin());
  }
}

}  // namespace spoofprint
