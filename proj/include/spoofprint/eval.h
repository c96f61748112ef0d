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

#ifndef SPOOFPRINT_EVAL_H_
#define SPOOFPRINT_EVAL_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spoofprint/taxonomy.h"

namespace spoofprint {

// 100 * correct / total. Throws InvalidArgument on empty or unequal input.
double AlgorithmAccuracy(std::span<const std::size_t> predictions,
                         std::span<const std::size_t> truths);

// Counts grouped by generator family (row = true, column = predicted) and
// row-normalized. Families without support keep an all-zero row.
struct FamilyConfusion {
  std::vector<std::vector<std::size_t>> counts;  // kNumFamilies x kNumFamilies
  std::vector<std::vector<double>> rates;
  std::vector<bool> supported;
};

FamilyConfusion ConfusionByGenerator(std::span<const std::size_t> predictions,
                                     std::span<const std::size_t> truths);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // decide "spoof" when score >= threshold
};

struct RocResult {
  std::vector<RocPoint> points;  // from (0, 0) to (1, 1), FPR nondecreasing
  double eer = 0.0;
};

// Sweeps every distinct score (higher means more likely spoof). The EER is
// where the convex hull of the ROC meets FPR = 1 - TPR, interpolating
// linearly along the hull segment it crosses.
RocResult RocEer(std::span<const double> scores, std::span<const bool> is_spoof);

// 1 - P(Natural) from 18-way class probabilities.
double SpoofScore(std::span<const double> probabilities);

struct PredictionRecord {
  std::string utterance_id;
  std::size_t truth = 0;
  std::size_t prediction = 0;
  double spoof_score = 0.0;
};

struct EvalReport {
  std::string model_label;
  std::string partition;
  bool train_set_evaluation = false;
  std::size_t num_utterances = 0;
  double overall_accuracy = 0.0;
  std::map<std::string, double> per_class_accuracy;  // classes with support
  std::map<std::string, std::size_t> per_class_support;
  FamilyConfusion confusion;
  RocResult roc;
  bool has_roc = false;  // false when only one of natural/spoof is present
  bool fused = false;
  std::vector<std::string> fusion_components;
  std::vector<double> fusion_weights;
  std::vector<std::string> failures;

  std::string ToJson() const;
  std::string ToText() const;
  std::string ConfusionCsv() const;
  std::string RocCsv() const;
};

// Fills accuracy, per-class accuracy, confusion and ROC from predictions.
EvalReport SummarizePredictions(std::span<const PredictionRecord> predictions);

// %.9g rendering used by the CSV and text reports.
std::string FormatNumber(double v);

}  // namespace spoofprint

#endif  // SPOOFPRINT_EVAL_H_
