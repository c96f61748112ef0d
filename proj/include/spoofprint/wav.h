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

#ifndef SPOOFPRINT_WAV_H_
#define SPOOFPRINT_WAV_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace spoofprint {

// Mono PCM audio. Samples are nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// RIFF/WAVE, mono, 16-bit PCM. Multi-channel input is rejected rather than
// downmixed. Samples are scaled by 1/32768, so ReadWav(WriteWav(w)) is
// bit-exact whenever w came from a 16-bit file.
Waveform ReadWav(const std::filesystem::path& path);
Waveform DecodeWav(const std::vector<std::uint8_t>& bytes,
                   const std::string& name = "<memory>");

// Values outside [-1, 1) are clipped to the 16-bit range.
void WriteWav(const std::filesystem::path& path, const Waveform& wave);
std::vector<std::uint8_t> EncodeWav(const Waveform& wave);

// Copy scaled so that max |x| == peak (all-zero input is returned unchanged).
Waveform PeakNormalized(const Waveform& wave, double peak = 0.99);

}  // namespace spoofprint

#endif  // SPOOFPRINT_WAV_H_
