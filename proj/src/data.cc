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

#include "spoofprint/data.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "spoofprint/errors.h"

namespace spoofprint {
namespace {

constexpr const char* kManifestHeader = "utterance_id,audio_path,algorithm_class,speaker_id";

std::uint64_t SplitMix64(std::uint64_t* state) {
  std::uint64_t z = (*state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Portable generator: the draws depend only on the seed, not on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next() { return SplitMix64(&state_); }
  // Uniform on [0, 1).
  double Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  // Uniform on [-1, 1).
  double Symmetric() { return 2.0 * Unit() - 1.0; }
  double Gaussian() {
    const double u1 = 1.0 - Unit();
    const double u2 = Unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  std::size_t Below(std::size_t n) { return static_cast<std::size_t>(Next() % n); }

 private:
  std::uint64_t state_;
};

template <typename T>
void Shuffle(std::vector<T>* v, Rng* rng) {
  for (std::size_t i = v->size(); i > 1; --i) {
    std::swap((*v)[i - 1], (*v)[rng->Below(i)]);
  }
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCsvLine(const std::string& line, const std::string& where) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw DataError(where + ": unterminated quote");
  return fields;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> SortedIds(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

void CheckCoverage(std::span<const UtteranceRecord> records, const SplitSpec& split,
                   const std::string& kind) {
  std::map<std::string, std::size_t> cls;
  std::set<std::size_t> all;
  for (const auto& r : records) {
    cls[r.utterance_id] = r.class_index;
    all.insert(r.class_index);
  }
  const std::pair<const char*, const std::vector<std::string>*> parts[] = {
      {"train", &split.train}, {"val", &split.val}, {"eval", &split.eval}};
  for (const auto& [name, ids] : parts) {
    std::set<std::size_t> present;
    for (const auto& id : *ids) present.insert(cls.at(id));
    for (std::size_t c : all) {
      if (!present.count(c)) {
        throw DataError(kind + " split infeasible: class " + ClassName(c) +
                        " has no utterances in the " + name + " partition");
      }
    }
  }
}

SplitSpec MakeCs1(std::span<const UtteranceRecord> records, std::uint64_t seed) {
  std::map<std::size_t, std::vector<std::string>> by_class;
  for (const auto& r : records) by_class[r.class_index].push_back(r.utterance_id);
  SplitSpec split;
  split.kind = SplitKind::kCs1;
  split.seed = seed;
  for (auto& [c, ids] : by_class) {
    const std::size_t n = ids.size();
    if (n < 3) {
      throw DataError("CS1 split needs at least 3 utterances per class; " + ClassName(c) +
                      " has " + std::to_string(n));
    }
    std::sort(ids.begin(), ids.end());
    Rng rng(MixSeed(seed, 1, c));
    Shuffle(&ids, &rng);
    const std::size_t n_train =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.4 * n)));
    const std::size_t n_val =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.1 * n)));
    for (std::size_t i = 0; i < n; ++i) {
      auto& dst = i < n_train ? split.train : i < n_train + n_val ? split.val : split.eval;
      dst.push_back(ids[i]);
    }
  }
  split.train = SortedIds(split.train);
  split.val = SortedIds(split.val);
  split.eval = SortedIds(split.eval);
  CheckCoverage(records, split, "CS1");
  return split;
}

SplitSpec MakeCs2(std::span<const UtteranceRecord> records, const SplitOptions& opts) {
  std::set<std::string> speaker_set;
  for (const auto& r : records) speaker_set.insert(r.speaker_id);
  std::vector<std::string> speakers(speaker_set.begin(), speaker_set.end());
  const std::size_t n = speakers.size();
  if (n < 3) {
    throw DataError("CS2 split needs at least 3 speakers, found " + std::to_string(n));
  }
  if (!(opts.eval_speaker_fraction > 0.0 && opts.eval_speaker_fraction < 1.0)) {
    throw InvalidArgument("eval speaker fraction must be in (0, 1)");
  }
  Rng rng(MixSeed(opts.seed, 2));
  Shuffle(&speakers, &rng);
  const std::size_t n_eval = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(opts.eval_speaker_fraction * n)), 1, n - 2);
  const std::size_t rest = n - n_eval;
  const std::size_t n_common = std::min(opts.common_speakers, rest);
  const std::size_t remaining = rest - n_common;
  std::size_t n_val_only = remaining / 3;
  if (n_common == 0 && n_val_only == 0) n_val_only = 1;
  const std::size_t n_train_only = remaining - n_val_only;

  SplitSpec split;
  split.kind = SplitKind::kCs2;
  split.seed = opts.seed;
  split.speaker_disjoint_eval = true;
  std::map<std::string, int> role;  // 0 eval, 1 common, 2 train-only, 3 val-only
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& s = speakers[i];
    if (i < n_eval) {
      role[s] = 0;
      split.eval_speakers.push_back(s);
    } else if (i < n_eval + n_common) {
      role[s] = 1;
      split.common_speakers.push_back(s);
      split.train_speakers.push_back(s);
      split.val_speakers.push_back(s);
    } else if (i < n_eval + n_common + n_train_only) {
      role[s] = 2;
      split.train_speakers.push_back(s);
    } else {
      role[s] = 3;
      split.val_speakers.push_back(s);
    }
  }
  std::map<std::pair<std::string, std::size_t>, std::vector<std::string>> common_groups;
  for (const auto& r : records) {
    switch (role.at(r.speaker_id)) {
      case 0: split.eval.push_back(r.utterance_id); break;
      case 1: common_groups[{r.speaker_id, r.class_index}].push_back(r.utterance_id); break;
      case 2: split.train.push_back(r.utterance_id); break;
      default: split.val.push_back(r.utterance_id); break;
    }
  }
  std::map<std::string, std::size_t> common_val_count;
  for (auto& [key, ids] : common_groups) {
    std::sort(ids.begin(), ids.end());
    Rng group_rng(MixSeed(opts.seed, 3, std::hash<std::string>{}(key.first) ^ key.second));
    Shuffle(&ids, &group_rng);
    const std::size_t m = ids.size();
    const std::size_t n_train =
        m < 2 ? m : std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(2.0 * m / 3.0)), 1, m - 1);
    for (std::size_t i = 0; i < m; ++i) (i < n_train ? split.train : split.val).push_back(ids[i]);
    common_val_count[key.first] += m - n_train;
  }
  for (const auto& s : split.common_speakers) {
    if (common_val_count[s] == 0) {
      throw DataError("CS2 split infeasible: common speaker " + s +
                      " has too few utterances to appear in both train and val");
    }
  }
  split.train = SortedIds(split.train);
  split.val = SortedIds(split.val);
  split.eval = SortedIds(split.eval);
  split.train_speakers = SortedIds(split.train_speakers);
  split.val_speakers = SortedIds(split.val_speakers);
  split.eval_speakers = SortedIds(split.eval_speakers);
  split.common_speakers = SortedIds(split.common_speakers);
  CheckCoverage(records, split, "CS2");
  return split;
}

std::vector<Formant> ParseFormantList(const std::string& value, bool radius_form,
                                      int sample_rate, const std::string& where) {
  std::vector<Formant> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument(where + ": expected frequency:value, got '" + item + "'");
    }
    Formant f;
    try {
      f.frequency_hz = std::stod(item.substr(0, colon));
      const double v = std::stod(item.substr(colon + 1));
      f.radius = radius_form ? v : BandwidthToRadius(v, sample_rate);
    } catch (const std::invalid_argument&) {
      throw InvalidArgument(where + ": bad number in '" + item + "'");
    } catch (const std::out_of_range&) {
      throw InvalidArgument(where + ": number out of range in '" + item + "'");
    }
    out.push_back(f);
  }
  return out;
}

double ParseNumber(const std::string& value, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw InvalidArgument(where + ": expected a number, got '" + value + "'");
  }
  if (used != value.size()) {
    throw InvalidArgument(where + ": expected a number, got '" + value + "'");
  }
  return v;
}

std::uint64_t ParseCount(const std::string& value, const std::string& where) {
  const double v = ParseNumber(value, where);
  if (v < 0 || v != std::floor(v)) {
    throw InvalidArgument(where + ": expected a nonnegative integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::string SanitizeId(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    out += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : '_';
  }
  return out;
}

// Hann-windowed sinc interpolation kernel half-width, in samples.
constexpr int kSincHalfWidth = 16;

void AddFractionalImpulse(std::vector<double>* x, double position, double amplitude) {
  const double base = std::floor(position);
  const double frac = position - base;
  const auto n0 = static_cast<long>(base);
  const long size = static_cast<long>(x->size());
  if (frac == 0.0) {
    if (n0 >= 0 && n0 < size) (*x)[n0] += amplitude;
    return;
  }
  for (long n = n0 - kSincHalfWidth + 1; n <= n0 + kSincHalfWidth; ++n) {
    if (n < 0 || n >= size) continue;
    const double d = static_cast<double>(n) - position;
    const double sinc = std::sin(std::numbers::pi * d) / (std::numbers::pi * d);
    const double win =
        0.5 + 0.5 * std::cos(std::numbers::pi * d / static_cast<double>(kSincHalfWidth));
    (*x)[n] += amplitude * sinc * win;
  }
}

}  // namespace

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  std::uint64_t x = SplitMix64(&s);
  s = x ^ (a * 0xD6E8FEB86659FD93ULL);
  x = SplitMix64(&s);
  s = x ^ (b * 0xA0761D6478BD642FULL);
  return SplitMix64(&s);
}

std::vector<UtteranceRecord> ParseManifest(const std::string& text, const std::string& name) {
  std::vector<UtteranceRecord> records;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::set<std::string> ids;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (Trim(line).empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (Trim(line) != kManifestHeader) {
        throw DataError(where + ": expected header '" + std::string(kManifestHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    auto fields = SplitCsvLine(line, where);
    if (fields.size() != 4) {
      throw DataError(where + ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    for (auto& f : fields) f = Trim(f);
    UtteranceRecord r;
    r.utterance_id = fields[0];
    r.audio_path = fields[1];
    r.speaker_id = fields[3];
    if (r.utterance_id.empty()) throw DataError(where + ": empty utterance_id");
    if (r.audio_path.empty()) throw DataError(where + ": empty audio_path");
    if (!TryParseClass(fields[2], &r.class_index)) {
      throw DataError(where + ": unknown class label '" + fields[2] + "'");
    }
    if (!ids.insert(r.utterance_id).second) {
      throw DataError(where + ": duplicate utterance_id '" + r.utterance_id + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path& path) {
  return ParseManifest(ReadText(path), path.string());
}

void WriteManifest(const std::filesystem::path& path,
                   std::span<const UtteranceRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << kManifestHeader << '\n';
  for (const auto& r : records) {
    out << CsvField(r.utterance_id) << ',' << CsvField(r.audio_path) << ','
        << CsvField(ClassName(r.class_index)) << ',' << CsvField(r.speaker_id) << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::filesystem::path ResolveAudioPath(const std::filesystem::path& manifest,
                                       const UtteranceRecord& record) {
  const std::filesystem::path p(record.audio_path);
  if (p.is_absolute()) return p;
  return manifest.parent_path() / p;
}

std::string SplitKindName(SplitKind kind) {
  switch (kind) {
    case SplitKind::kCs1: return "CS1";
    case SplitKind::kCs2: return "CS2";
    case SplitKind::kCustom: return "custom";
  }
  return "custom";
}

SplitKind ParseSplitKind(const std::string& name) {
  std::string key;
  for (unsigned char c : name) key += static_cast<char>(std::tolower(c));
  if (key == "cs1") return SplitKind::kCs1;
  if (key == "cs2") return SplitKind::kCs2;
  if (key == "custom") return SplitKind::kCustom;
  throw InvalidArgument("unknown split kind '" + name + "' (expected CS1, CS2 or custom)");
}

const std::vector<std::string>& SplitSpec::partition(const std::string& name) const {
  if (name == "train") return train;
  if (name == "val") return val;
  if (name == "eval") return eval;
  throw InvalidArgument("unknown partition '" + name + "' (expected train, val or eval)");
}

std::string SplitSpec::ToJson() const {
  nlohmann::ordered_json j;
  j["name"] = SplitKindName(kind);
  j["seed"] = seed;
  j["speaker_disjoint_eval"] = speaker_disjoint_eval;
  j["train"] = train;
  j["val"] = val;
  j["eval"] = eval;
  j["train_speakers"] = train_speakers;
  j["val_speakers"] = val_speakers;
  j["eval_speakers"] = eval_speakers;
  j["common_speakers"] = common_speakers;
  return j.dump(2) + "\n";
}

SplitSpec SplitSpec::FromJson(const std::string& text) {
  SplitSpec s;
  try {
    const auto j = nlohmann::json::parse(text);
    s.kind = ParseSplitKind(j.at("name").get<std::string>());
    s.seed = j.value("seed", std::uint64_t{0});
    s.speaker_disjoint_eval = j.value("speaker_disjoint_eval", false);
    s.train = j.at("train").get<std::vector<std::string>>();
    s.val = j.at("val").get<std::vector<std::string>>();
    s.eval = j.at("eval").get<std::vector<std::string>>();
    s.train_speakers = j.value("train_speakers", std::vector<std::string>{});
    s.val_speakers = j.value("val_speakers", std::vector<std::string>{});
    s.eval_speakers = j.value("eval_speakers", std::vector<std::string>{});
    s.common_speakers = j.value("common_speakers", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed split file: ") + e.what());
  }
  return s;
}

SplitSpec MakeSplit(std::span<const UtteranceRecord> records, const SplitOptions& opts) {
  if (records.empty()) throw DataError("cannot split an empty manifest");
  switch (opts.kind) {
    case SplitKind::kCs1: return MakeCs1(records, opts.seed);
    case SplitKind::kCs2: return MakeCs2(records, opts);
    case SplitKind::kCustom: break;
  }
  throw InvalidArgument("custom splits are loaded from a split file, not generated");
}

double BandwidthToRadius(double bandwidth_hz, int sample_rate) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  return std::exp(-std::numbers::pi * bandwidth_hz / sample_rate);
}

double PerturbationHalfWidth(double target_pct) { return 3.0 * target_pct / 200.0; }

void ToySpec::Validate() const {
  const std::string who = "class '" + name + "'";
  if (name.empty()) throw InvalidArgument("toy class with empty name");
  if (sample_rate <= 0) throw InvalidArgument(who + ": sample rate must be positive");
  if (!(f0 > 0.0 && f0 < sample_rate / 2.0)) {
    throw InvalidArgument(who + ": f0 must be in (0, fs/2)");
  }
  if (!(jitter_pct >= 0.0) || PerturbationHalfWidth(jitter_pct) >= 0.5) {
    throw InvalidArgument(who + ": jitter_pct must be in [0, 33.3)");
  }
  if (!(shimmer_pct >= 0.0) || PerturbationHalfWidth(shimmer_pct) >= 1.0) {
    throw InvalidArgument(who + ": shimmer_pct must be in [0, 66.7)");
  }
  if (!(noise_mix >= 0.0)) throw InvalidArgument(who + ": noise_mix must be nonnegative");
  if (!(silence_pad >= 0.0)) throw InvalidArgument(who + ": silence_pad must be nonnegative");
  if (!(duration > 0.0) || duration * f0 < 3.0) {
    throw InvalidArgument(who + ": duration must hold at least three periods");
  }
  for (const auto& f : formants) {
    if (!(f.radius > 0.0 && f.radius < 1.0)) {
      std::ostringstream msg;
      msg << who << ": pole radius " << f.radius << " at " << f.frequency_hz
          << " Hz is not strictly inside the unit circle";
      throw InvalidArgument(msg.str());
    }
    if (!(f.frequency_hz > 0.0 && f.frequency_hz < sample_rate / 2.0)) {
      std::ostringstream msg;
      msg << who << ": formant frequency " << f.frequency_hz << " Hz outside (0, fs/2)";
      throw InvalidArgument(msg.str());
    }
  }
}

ToyUtterance SynthesizeToyUtterance(const ToySpec& spec, double formant_scale) {
  spec.Validate();
  if (!(formant_scale > 0.0)) throw InvalidArgument("formant scale must be positive");
  const int fs = spec.sample_rate;
  const double period = std::round(fs / spec.f0);
  const auto pad = static_cast<std::size_t>(std::llround(spec.silence_pad * fs));
  const auto voiced = static_cast<std::size_t>(std::llround(spec.duration * fs));
  const std::size_t total = 2 * pad + voiced;
  const double w_jitter = PerturbationHalfWidth(spec.jitter_pct);
  const double w_shimmer = PerturbationHalfWidth(spec.shimmer_pct);

  Rng rng(spec.seed);
  ToyUtterance out;
  out.pulses.sample_rate = fs;
  // The last nominal period carries no pulse and fades to zero, so the voiced
  // segment ends without a step.
  const auto tail = static_cast<std::size_t>(std::min(period, static_cast<double>(voiced)));
  const double pulse_end = static_cast<double>(pad + voiced - tail);
  double t = static_cast<double>(pad) + std::floor(period / 2.0);
  while (t < pulse_end) {
    out.pulses.peak_indices.push_back(t);
    out.pulses.peak_amplitudes.push_back(1.0 + w_shimmer * rng.Symmetric());
    t += period * (1.0 + w_jitter * rng.Symmetric());
  }

  std::vector<double> x(total, 0.0);
  double energy = 0.0;
  for (std::size_t i = 0; i < out.pulses.peak_indices.size(); ++i) {
    const double a = out.pulses.peak_amplitudes[i];
    AddFractionalImpulse(&x, out.pulses.peak_indices[i], a);
    energy += a * a;
  }
  if (spec.noise_mix > 0.0) {
    const double sigma = spec.noise_mix * std::sqrt(energy / static_cast<double>(voiced));
    for (std::size_t n = pad; n < pad + voiced; ++n) x[n] += sigma * rng.Gaussian();
  }

  for (const auto& f : spec.formants) {
    const double hz = f.frequency_hz * formant_scale;
    if (hz >= fs / 2.0) {
      throw InvalidArgument("class '" + spec.name + "': scaled formant above fs/2");
    }
    const double theta = 2.0 * std::numbers::pi * hz / fs;
    const double a1 = 2.0 * f.radius * std::cos(theta);
    const double a2 = -f.radius * f.radius;
    double y1 = 0.0, y2 = 0.0;
    for (double& v : x) {
      const double y = v + a1 * y1 + a2 * y2;
      y2 = y1;
      y1 = y;
      v = y;
    }
  }
  for (std::size_t n = 0; n < total; ++n) {
    if (n < pad || n >= pad + voiced) x[n] = 0.0;
  }
  for (std::size_t k = 0; k < tail; ++k) {
    const double phase = std::numbers::pi * static_cast<double>(k + 1) / static_cast<double>(tail);
    x[pad + voiced - tail + k] *= 0.5 + 0.5 * std::cos(phase);
  }

  out.wave.sample_rate = fs;
  out.wave.samples = std::move(x);
  out.wave = PeakNormalized(out.wave, 0.5);
  return out;
}

ToyCorpusConfig ParseToyConfig(const std::string& text, const std::string& name) {
  ToyCorpusConfig config;
  struct PendingFormants {
    std::string value;
    bool radius_form;
    std::string where;
  };
  std::vector<std::vector<PendingFormants>> pending;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  enum class Section { kNone, kCorpus, kClass } section = Section::kNone;
  std::set<std::string> class_names;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string where = name + ":" + std::to_string(line_no);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InvalidArgument(where + ": unterminated section header");
      const std::string header = Trim(line.substr(1, line.size() - 2));
      if (header == "corpus") {
        section = Section::kCorpus;
      } else if (header.rfind("class ", 0) == 0) {
        section = Section::kClass;
        ToySpec spec;
        spec.name = Trim(header.substr(6));
        if (spec.name.empty()) throw InvalidArgument(where + ": class section without a name");
        if (!class_names.insert(spec.name).second) {
          throw InvalidArgument(where + ": duplicate class '" + spec.name + "'");
        }
        if (!TryParseClass(spec.name, &spec.class_index)) spec.class_index = kNaturalClass;
        config.classes.push_back(spec);
        pending.emplace_back();
      } else {
        throw InvalidArgument(where + ": unknown section '" + header + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument(where + ": expected key = value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (section == Section::kNone) {
      throw InvalidArgument(where + ": key '" + key + "' outside of a section");
    }
    if (section == Section::kCorpus) {
      auto& o = config.options;
      if (key == "sample_rate") o.sample_rate = static_cast<int>(ParseCount(value, where));
      else if (key == "utterances_per_class") o.utterances_per_class = ParseCount(value, where);
      else if (key == "speakers") o.speakers = ParseCount(value, where);
      else if (key == "speaker_spread") o.speaker_spread = ParseNumber(value, where);
      else if (key == "seed") o.seed = ParseCount(value, where);
      else throw InvalidArgument(where + ": unknown corpus key '" + key + "'");
      continue;
    }
    ToySpec& spec = config.classes.back();
    if (key == "label") {
      if (!TryParseClass(value, &spec.class_index)) {
        throw InvalidArgument(where + ": unknown class label '" + value + "'");
      }
    } else if (key == "f0") spec.f0 = ParseNumber(value, where);
    else if (key == "jitter_pct") spec.jitter_pct = ParseNumber(value, where);
    else if (key == "shimmer_pct") spec.shimmer_pct = ParseNumber(value, where);
    else if (key == "noise_mix") spec.noise_mix = ParseNumber(value, where);
    else if (key == "silence_pad") spec.silence_pad = ParseNumber(value, where);
    else if (key == "duration") spec.duration = ParseNumber(value, where);
    else if (key == "formants") pending.back().push_back({value, false, where});
    else if (key == "poles") pending.back().push_back({value, true, where});
    else throw InvalidArgument(where + ": unknown class key '" + key + "'");
  }
  const auto& o = config.options;
  if (o.sample_rate <= 0) throw InvalidArgument(name + ": sample_rate must be positive");
  if (o.speakers == 0) throw InvalidArgument(name + ": speakers must be at least 1");
  if (o.utterances_per_class == 0) {
    throw InvalidArgument(name + ": utterances_per_class must be at least 1");
  }
  if (!(o.speaker_spread >= 0.0 && o.speaker_spread < 0.5)) {
    throw InvalidArgument(name + ": speaker_spread must be in [0, 0.5)");
  }
  if (config.classes.size() < 2) throw InvalidArgument(name + ": need at least 2 classes");
  std::set<std::size_t> labels;
  for (std::size_t c = 0; c < config.classes.size(); ++c) {
    ToySpec& spec = config.classes[c];
    spec.sample_rate = o.sample_rate;
    for (const auto& p : pending[c]) {
      auto f = ParseFormantList(p.value, p.radius_form, o.sample_rate, p.where);
      spec.formants.insert(spec.formants.end(), f.begin(), f.end());
    }
    if (!labels.insert(spec.class_index).second) {
      throw InvalidArgument(name + ": class '" + spec.name + "' reuses label " +
                            ClassName(spec.class_index));
    }
    spec.Validate();
  }
  return config;
}

ToyCorpusConfig LoadToyConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open toy spec " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseToyConfig(ss.str(), path.string());
}

std::vector<double> SpeakerFormantScales(const ToyCorpusOptions& opts) {
  Rng rng(MixSeed(opts.seed, 0x5BEA4E5ULL));
  std::vector<double> scales(opts.speakers);
  for (double& s : scales) s = 1.0 + opts.speaker_spread * rng.Symmetric();
  return scales;
}

ToySpec UtteranceSpec(const ToySpec& cls, std::size_t class_position, std::size_t utterance,
                      const ToyCorpusOptions& opts) {
  ToySpec spec = cls;
  spec.sample_rate = opts.sample_rate;
  spec.seed = MixSeed(opts.seed, 0x1000 + class_position, utterance);
  return spec;
}

std::vector<UtteranceRecord> BuildToyCorpus(const ToyCorpusConfig& config,
                                            const std::filesystem::path& out_dir) {
  const auto& opts = config.options;
  if (config.classes.size() < 2) throw InvalidArgument("toy corpus needs at least 2 classes");
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "wav", ec);
  if (ec) throw DataError("cannot create " + (out_dir / "wav").string() + ": " + ec.message());
  const std::vector<double> scales = SpeakerFormantScales(opts);
  const std::size_t per_class = opts.utterances_per_class;
  const std::size_t total = per_class * config.classes.size();
  std::vector<UtteranceRecord> records(total);
  std::vector<std::exception_ptr> errors(total);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < total; ++k) {
    try {
      const std::size_t c = k / per_class;
      const std::size_t i = k % per_class;
      const ToySpec& cls = config.classes[c];
      const std::size_t speaker = i % opts.speakers;
      char idx[32], spk[32];
      std::snprintf(idx, sizeof(idx), "%04zu", i);
      std::snprintf(spk, sizeof(spk), "spk%02zu", speaker);
      UtteranceRecord& r = records[k];
      r.utterance_id = SanitizeId(cls.name) + "_" + idx;
      r.audio_path = "wav/" + r.utterance_id + ".wav";
      r.class_index = cls.class_index;
      r.speaker_id = spk;
      const ToyUtterance u = SynthesizeToyUtterance(UtteranceSpec(cls, c, i, opts), scales[speaker]);
      WriteWav(out_dir / r.audio_path, u.wave);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.utterance_id < b.utterance_id; });
  WriteManifest(out_dir / "manifest.csv", records);
  return records;
}

}  // namespace spoofprint
