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

#include "spoofprint/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "spoofprint/errors.h"

namespace spoofprint {
namespace {

double Cross(const RocPoint& a, const RocPoint& b, const RocPoint& p) {
  return (b.fpr - a.fpr) * (p.tpr - a.tpr) - (b.tpr - a.tpr) * (p.fpr - a.fpr);
}

}  // namespace

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double AlgorithmAccuracy(std::span<const std::size_t> predictions,
                         std::span<const std::size_t> truths) {
  if (predictions.size() != truths.size()) {
    throw InvalidArgument("accuracy: predictions and truths differ in length");
  }
  if (predictions.empty()) throw InvalidArgument("accuracy of an empty set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) correct += predictions[i] == truths[i];
  return 100.0 * static_cast<double>(correct) / static_cast<double>(truths.size());
}

FamilyConfusion ConfusionByGenerator(std::span<const std::size_t> predictions,
                                     std::span<const std::size_t> truths) {
  if (predictions.size() != truths.size()) {
    throw InvalidArgument("confusion: predictions and truths differ in length");
  }
  FamilyConfusion c;
  c.counts.assign(kNumFamilies, std::vector<std::size_t>(kNumFamilies, 0));
  c.rates.assign(kNumFamilies, std::vector<double>(kNumFamilies, 0.0));
  c.supported.assign(kNumFamilies, false);
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const auto t = static_cast<std::size_t>(FamilyOf(truths[i]));
    const auto p = static_cast<std::size_t>(FamilyOf(predictions[i]));
    ++c.counts[t][p];
  }
  for (std::size_t r = 0; r < kNumFamilies; ++r) {
    std::size_t total = 0;
    for (std::size_t v : c.counts[r]) total += v;
    if (total == 0) continue;
    c.supported[r] = true;
    for (std::size_t k = 0; k < kNumFamilies; ++k) {
      c.rates[r][k] = static_cast<double>(c.counts[r][k]) / static_cast<double>(total);
    }
  }
  return c;
}

RocResult RocEer(std::span<const double> scores, std::span<const bool> is_spoof) {
  if (scores.size() != is_spoof.size()) {
    throw InvalidArgument("ROC: scores and labels differ in length");
  }
  std::size_t positives = 0;
  for (bool s : is_spoof) positives += s;
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw InvalidArgument("ROC needs both natural and spoof utterances");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw NumericalError("NaN score in ROC input");
  }
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocResult r;
  r.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double theta = scores[order[i]];
    while (i < order.size() && scores[order[i]] == theta) {
      (is_spoof[order[i]] ? tp : fp) += 1;
      ++i;
    }
    r.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                        static_cast<double>(tp) / static_cast<double>(positives), theta});
  }

  std::vector<RocPoint> hull;
  for (const auto& p : r.points) {
    while (hull.size() >= 2 && Cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  r.eer = 0.5;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const RocPoint& a = hull[i];
    const RocPoint& b = hull[i + 1];
    const double ga = a.fpr + a.tpr;
    const double gb = b.fpr + b.tpr;
    if (ga <= 1.0 && gb >= 1.0) {
      const double s = gb > ga ? (1.0 - ga) / (gb - ga) : 0.0;
      r.eer = a.fpr + s * (b.fpr - a.fpr);
      break;
    }
  }
  return r;
}

double SpoofScore(std::span<const double> probabilities) {
  if (probabilities.size() != kNumClasses) {
    throw InvalidArgument("spoof score needs " + std::to_string(kNumClasses) + " probabilities");
  }
  return 1.0 - probabilities[kNaturalClass];
}

EvalReport SummarizePredictions(std::span<const PredictionRecord> predictions) {
  EvalReport report;
  report.num_utterances = predictions.size();
  std::vector<std::size_t> pred, truth;
  std::vector<double> scores;
  std::vector<bool> spoof_flags;
  for (const auto& p : predictions) {
    pred.push_back(p.prediction);
    truth.push_back(p.truth);
    scores.push_back(p.spoof_score);
    spoof_flags.push_back(p.truth != kNaturalClass);
  }
  report.overall_accuracy = AlgorithmAccuracy(pred, truth);
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> per_class;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& [correct, total] = per_class[truth[i]];
    correct += pred[i] == truth[i];
    ++total;
  }
  for (const auto& [c, ct] : per_class) {
    report.per_class_accuracy[ClassName(c)] =
        100.0 * static_cast<double>(ct.first) / static_cast<double>(ct.second);
    report.per_class_support[ClassName(c)] = ct.second;
  }
  report.confusion = ConfusionByGenerator(pred, truth);
  const std::size_t n_spoof = std::count(spoof_flags.begin(), spoof_flags.end(), true);
  if (n_spoof > 0 && n_spoof < spoof_flags.size()) {
    // std::vector<bool> is not contiguous.
    auto flags = std::make_unique<bool[]>(spoof_flags.size());
    std::copy(spoof_flags.begin(), spoof_flags.end(), flags.get());
    report.roc = RocEer(scores, std::span<const bool>(flags.get(), spoof_flags.size()));
    report.has_roc = true;
  }
  return report;
}

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["model"] = model_label;
  j["partition"] = partition;
  j["train_set_evaluation"] = train_set_evaluation;
  if (train_set_evaluation) j["warning"] = "train-set evaluation";
  j["num_utterances"] = num_utterances;
  j["overall_accuracy"] = overall_accuracy;
  auto classes = nlohmann::ordered_json::object();
  for (const auto& [name, acc] : per_class_accuracy) {
    classes[name] = {{"accuracy", acc}, {"support", per_class_support.at(name)}};
  }
  j["per_class_accuracy"] = classes;
  auto families = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < kNumFamilies; ++f) {
    families.push_back(FamilyName(static_cast<GeneratorFamily>(f)));
  }
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < kNumFamilies; ++r) {
    std::size_t support = 0;
    for (std::size_t v : confusion.counts[r]) support += v;
    rows.push_back({{"family", FamilyName(static_cast<GeneratorFamily>(r))},
                    {"support", support},
                    {"no_support", !confusion.supported[r]},
                    {"rates", confusion.rates[r]}});
  }
  j["confusion"] = {{"families", families}, {"rows", rows}};
  if (has_roc) {
    j["eer"] = roc.eer;
  } else {
    j["eer"] = nullptr;
  }
  if (fused) {
    j["fusion"] = {{"method", "late"}, {"components", fusion_components}, {"weights", fusion_weights}};
  }
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

std::string EvalReport::ToText() const {
  std::ostringstream out;
  out << "model: " << model_label << "\n";
  out << "partition: " << partition << (train_set_evaluation ? " (train-set evaluation)" : "")
      << "\n";
  if (fused) {
    out << "late fusion:";
    for (std::size_t i = 0; i < fusion_components.size(); ++i) {
      out << " " << fusion_components[i] << "=" << FormatNumber(fusion_weights[i]);
    }
    out << "\n";
  }
  out << "utterances: " << num_utterances << "\n";
  out << "accuracy: " << FormatNumber(overall_accuracy) << " %\n";
  out << "eer: " << (has_roc ? FormatNumber(roc.eer) : std::string("n/a")) << "\n";
  out << "per-class accuracy:\n";
  for (const auto& [name, acc] : per_class_accuracy) {
    out << "  " << name << ": " << FormatNumber(acc) << " % (" << per_class_support.at(name)
        << ")\n";
  }
  out << "confusion by generator (row = true):\n";
  for (std::size_t r = 0; r < kNumFamilies; ++r) {
    if (!confusion.supported[r]) continue;
    out << "  " << FamilyName(static_cast<GeneratorFamily>(r)) << ":";
    for (std::size_t k = 0; k < kNumFamilies; ++k) {
      if (confusion.counts[r][k] == 0) continue;
      out << " " << FamilyName(static_cast<GeneratorFamily>(k)) << "="
          << FormatNumber(confusion.rates[r][k]);
    }
    out << "\n";
  }
  if (!failures.empty()) {
    out << "failures:\n";
    for (const auto& f : failures) out << "  " << f << "\n";
  }
  return out.str();
}

std::string EvalReport::ConfusionCsv() const {
  std::ostringstream out;
  out << "true_family,support,no_support";
  for (std::size_t k = 0; k < kNumFamilies; ++k) {
    out << "," << FamilyName(static_cast<GeneratorFamily>(k));
  }
  out << "\n";
  for (std::size_t r = 0; r < kNumFamilies; ++r) {
    std::size_t support = 0;
    for (std::size_t v : confusion.counts[r]) support += v;
    out << FamilyName(static_cast<GeneratorFamily>(r)) << "," << support << ","
        << (confusion.supported[r] ? 0 : 1);
    for (std::size_t k = 0; k < kNumFamilies; ++k) out << "," << FormatNumber(confusion.rates[r][k]);
    out << "\n";
  }
  return out.str();
}

std::string EvalReport::RocCsv() const {
  std::ostringstream out;
  out << "fpr,tpr,threshold\n";
  for (const auto& p : roc.points) {
    out << FormatNumber(p.fpr) << "," << FormatNumber(p.tpr) << "," << FormatNumber(p.threshold)
        << "\n";
  }
  return out.str();
}

}  // namespace spoofprint
