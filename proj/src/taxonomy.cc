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

#include "spoofprint/taxonomy.h"

#include <algorithm>
#include <cctype>

#include "spoofprint/errors.h"

namespace spoofprint {
namespace {

struct ClassEntry {
  const char* name;
  GeneratorFamily family;
};

constexpr std::array<ClassEntry, kNumClasses> kClasses = {{
    {"A01", GeneratorFamily::kWaveNet},
    {"A02", GeneratorFamily::kWorld},
    {"A03", GeneratorFamily::kWorld},
    {"A04/A16", GeneratorFamily::kWaveformConcatenation},
    {"A05", GeneratorFamily::kWorld},
    {"A06/A19", GeneratorFamily::kSpectralFilteringOla},
    {"A07", GeneratorFamily::kWorld},
    {"A08", GeneratorFamily::kNeuralSourceFilter},
    {"A09", GeneratorFamily::kVocaine},
    {"A10", GeneratorFamily::kWaveRnn},
    {"A11", GeneratorFamily::kGriffinLim},
    {"A12", GeneratorFamily::kWaveNet},
    {"A13", GeneratorFamily::kWaveformFiltering},
    {"A14", GeneratorFamily::kStraight},
    {"A15", GeneratorFamily::kWaveformConcatenation},
    {"A17", GeneratorFamily::kWaveformFiltering},
    {"A18", GeneratorFamily::kMfccVocoder},
    {"Natural", GeneratorFamily::kNatural},
}};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string ClassName(std::size_t class_index) {
  if (class_index >= kNumClasses) {
    throw InvalidArgument("class index " + std::to_string(class_index) + " out of range");
  }
  return kClasses[class_index].name;
}

bool TryParseClass(std::string_view label, std::size_t* class_index) {
  const std::string key = Lower(label);
  if (key == "natural" || key == "bonafide" || key == "bona-fide") {
    *class_index = kNaturalClass;
    return true;
  }
  static constexpr std::array<std::pair<const char*, std::size_t>, 2> kAliases = {{
      {"a16", 3}, {"a19", 5}}};
  for (const auto& [alias, index] : kAliases) {
    if (key == alias) {
      *class_index = index;
      return true;
    }
  }
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    const std::string name = Lower(kClasses[i].name);
    if (key == name || (name.find('/') != std::string::npos && name.substr(0, 3) == key)) {
      *class_index = i;
      return true;
    }
  }
  return false;
}

std::size_t ParseClass(std::string_view label) {
  std::size_t index = 0;
  if (!TryParseClass(label, &index)) {
    throw DataError("unknown class label '" + std::string(label) + "'");
  }
  return index;
}

GeneratorFamily FamilyOf(std::size_t class_index) {
  if (class_index >= kNumClasses) {
    throw InvalidArgument("class index " + std::to_string(class_index) + " out of range");
  }
  return kClasses[class_index].family;
}

std::string FamilyName(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::kWaveNet: return "WaveNet";
    case GeneratorFamily::kWorld: return "WORLD";
    case GeneratorFamily::kWaveformConcatenation: return "Waveform Concatenation";
    case GeneratorFamily::kSpectralFilteringOla: return "Spectral filtering + OLA";
    case GeneratorFamily::kNeuralSourceFilter: return "Neural source-filter";
    case GeneratorFamily::kVocaine: return "Vocaine";
    case GeneratorFamily::kWaveRnn: return "WaveRNN";
    case GeneratorFamily::kGriffinLim: return "Griffin-Lim";
    case GeneratorFamily::kWaveformFiltering: return "Waveform filtering";
    case GeneratorFamily::kStraight: return "STRAIGHT";
    case GeneratorFamily::kMfccVocoder: return "MFCC Vocoder";
    case GeneratorFamily::kNatural: return "Natural";
  }
  return "unknown";
}

}  // namespace spoofprint
