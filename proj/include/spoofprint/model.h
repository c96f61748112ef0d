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

#ifndef SPOOFPRINT_MODEL_H_
#define SPOOFPRINT_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spoofprint/execution.h"
#include "spoofprint/features.h"
#include "spoofprint/lp.h"
#include "spoofprint/nn/layers.h"
#include "spoofprint/nn/random.h"
#include "spoofprint/nn/tensor.h"
#include "spoofprint/taxonomy.h"
#include "spoofprint/wav.h"

namespace spoofprint {

enum class Architecture { kLpr, kLms, kFuseIntermediate };

// "lpr", "lms", "fuse-intermediate".
std::string ArchitectureName(Architecture arch);
Architecture ParseArchitecture(const std::string& name);
// Report labels: "LPR-DNN", "LMS-DNN", "LPR+LMS-DNN".
std::string ArchitectureLabel(Architecture arch);
inline constexpr const char* kLateFusionLabel = "LPR+LMS-DNN*";

bool UsesResidual(Architecture arch);
bool UsesLogMel(Architecture arch);

// Learned front end on raw residual samples: 1 -> 16 -> 64 channels.
std::vector<nn::ConvSpec> DefaultLprFrontEnd();
// Frame encoder on the 64-channel front-end output.
std::vector<nn::ConvSpec> DefaultLprEncoder();
// Frame encoder on log-mel frames.
std::vector<nn::ConvSpec> DefaultLmsEncoder(std::size_t n_mels = 80);

struct ModelConfig {
  Architecture arch = Architecture::kLpr;
  std::size_t num_heads = 1;
  std::size_t attention_bottleneck = 64;
  std::size_t segment_hidden = 128;
  std::size_t num_classes = kNumClasses;
  double dropout = 0.1;
  std::size_t lp_order = kExperimentLpOrder;
  LogMelOptions log_mel;
  int sample_rate = 16000;
  std::uint64_t seed = 0;
  std::vector<nn::ConvSpec> lpr_front_end = DefaultLprFrontEnd();
  std::vector<nn::ConvSpec> lpr_encoder = DefaultLprEncoder();
  std::vector<nn::ConvSpec> lms_encoder = DefaultLmsEncoder();

  // Hidden width d of the pooled representation.
  std::size_t hidden_channels() const;
  std::size_t embedding_dim() const { return 2 * hidden_channels() * num_heads; }
  void Validate() const;
  std::string ToJson() const;
  static ModelConfig FromJson(const std::string& text);
};

// Timing of one frame-level hidden step on the waveform.
struct FrameTiming {
  std::size_t receptive_field = 1;  // samples
  std::size_t stride = 1;           // samples
  int sample_rate = 16000;

  double CenterSeconds(std::size_t t) const;
};

// The LPR chain in samples (front end + encoder).
FrameTiming LprTiming(const ModelConfig& config);
// The LMS encoder in samples, the analysis frame included as a first layer
// of width frame_length and stride hop_length.
FrameTiming LmsTiming(const ModelConfig& config);
FrameTiming ModelTiming(const ModelConfig& config);

// Receptive field and stride in the conventional units of each branch: the
// LPR chain in samples; the LMS encoder with its receptive field counted as
// frames times the hop (in samples) and its stride in frames.
nn::ReceptiveField ReportedReceptiveField(const ModelConfig& config, Architecture arch);

// Shortest waveform (samples) giving at least two hidden frames.
std::size_t MinimumSamples(const ModelConfig& config);

// Inputs of one utterance. The residual is divided by its RMS and the
// log-mel matrix standardized by its scalar mean and deviation.
struct UtteranceFeatures {
  std::vector<float> residual;
  std::vector<float> log_mel;  // [n_mels x frames], row-major
  std::size_t frames = 0;
};

UtteranceFeatures FeaturesFromWaveform(const Waveform& wave, const ModelConfig& config,
                                       Execution exec = Execution::kParallel);
// From cached intermediate results; either may be null when unused.
UtteranceFeatures FeaturesFromCache(const ResidualSignal* residual, const FeatureMatrix* log_mel,
                                    const ModelConfig& config);
void CheckFeatures(const UtteranceFeatures& f, const ModelConfig& config,
                   const std::string& utterance_id);

// Padded minibatch. Residuals are [B, 1, max samples], log-mels
// [B, n_mels, max frames].
struct Batch {
  nn::Tensor residual;
  std::vector<std::size_t> residual_lengths;
  nn::Tensor log_mel;
  std::vector<std::size_t> log_mel_lengths;
  std::size_t size = 0;
};

Batch MakeBatch(std::span<const UtteranceFeatures* const> items, const ModelConfig& config);

// Per-head attention weights for one utterance: weights[c * frames + t].
struct AttentionMap {
  std::size_t head = 0;
  std::size_t channels = 0;
  std::size_t frames = 0;
  std::vector<float> weights;
  FrameTiming timing;
};

struct AttentionSummary {
  std::vector<double> mean;  // channel mean per frame
  double threshold = 0.0;    // time mean of `mean`
  std::vector<bool> mask;    // mean > threshold (strict)
  // Merged runs of selected frames, seconds.
  std::vector<std::pair<double, double>> intervals;
};

// Frame t covers [t*stride + (rf - stride)/2, + stride) samples, clamped to
// start at 0.
AttentionSummary BinarizeAttention(const AttentionMap& map);

// Elementwise w_a * a + w_b * b; weights nonnegative and summing to one.
std::vector<double> LateFuse(std::span<const double> a, std::span<const double> b,
                             double w_a = 0.5, double w_b = 0.5);

struct ForwardResult {
  nn::Tensor logits;     // [B, num_classes]
  nn::Tensor embedding;  // [B, embedding_dim]
  std::vector<nn::Tensor> attention;  // per head, [B, d, T']
  std::vector<std::size_t> frame_lengths;
};

struct Classification {
  std::vector<double> logits;
  std::vector<double> embedding;
  std::vector<AttentionMap> attention;
};

// X-vector style classifier: frame encoder (conv -> ReLU -> dropout ->
// layer norm blocks), multi-head attentive statistics pooling, and a two
// layer dense segment encoder.
class AttributionModel {
 public:
  explicit AttributionModel(const ModelConfig& config);

  const ModelConfig& config() const { return config_; }

  ForwardResult Forward(const Batch& batch, bool training, nn::Generator* dropout_gen,
                        Execution exec = Execution::kParallel) const;

  // Inference with dropout off and no graph. Bit-identical across calls.
  Classification Classify(const UtteranceFeatures& features,
                          Execution exec = Execution::kParallel) const;
  Classification Classify(const Waveform& wave, Execution exec = Execution::kParallel) const;

  // Stable order; names are unique.
  std::vector<nn::NamedParameter> Parameters() const;
  std::vector<std::vector<float>> SnapshotParameters() const;
  void RestoreParameters(const std::vector<std::vector<float>>& values);

 private:
  struct Block {
    nn::Conv1dLayer conv;
    nn::LayerNormLayer norm;
  };
  struct Head {
    nn::Conv1dLayer encoder;  // d -> b, kernel 1
    nn::Conv1dLayer decoder;  // b -> d, kernel 1
  };

  nn::Tensor RunBlocks(const std::vector<Block>& blocks, nn::Tensor x, bool training,
                       nn::Generator* gen, Execution exec) const;
  static std::vector<Block> MakeBlocks(const std::vector<nn::ConvSpec>& specs,
                                       nn::Generator* gen);

  ModelConfig config_;
  std::vector<Block> front_end_;
  std::vector<Block> lpr_encoder_;
  std::vector<Block> lms_encoder_;
  std::vector<Head> heads_;
  nn::DenseLayer segment1_, segment2_;
};

// Nearest-center mapping of each LPR hidden frame onto the LMS hidden
// frames, clamped to the valid LMS range.
std::vector<std::size_t> AlignFrames(const FrameTiming& fine, std::size_t fine_frames,
                                     const FrameTiming& coarse, std::size_t coarse_frames);

}  // namespace spoofprint

#endif  // SPOOFPRINT_MODEL_H_
