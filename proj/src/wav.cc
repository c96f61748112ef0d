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

#include "spoofprint/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "spoofprint/errors.h"

namespace spoofprint {
namespace {

std::uint32_t ReadU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<std::uint8_t>* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back((v >> (8 * i)) & 0xff);
}

void PutU16(std::vector<std::uint8_t>* out, std::uint16_t v) {
  out->push_back(v & 0xff);
  out->push_back((v >> 8) & 0xff);
}

void PutTag(std::vector<std::uint8_t>* out, const char* tag) {
  out->insert(out->end(), tag, tag + 4);
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

}  // namespace

Waveform DecodeWav(const std::vector<std::uint8_t>& bytes,
                   const std::string& name) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError(name + ": not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size() && std::memcmp(chunk, "data", 4) != 0) {
      throw DataError(name + ": truncated chunk");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw DataError(name + ": short fmt chunk");
      std::uint16_t format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      if (format == kFormatExtensible && size >= 26) {
        format = ReadU16(chunk + 32);
      }
      if (format != kFormatPcm) {
        throw DataError(name + ": only PCM WAV is supported");
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw DataError(name + ": data chunk before fmt chunk");
      if (channels != 1) {
        throw DataError(name + ": expected mono audio, got " +
                        std::to_string(channels) + " channels");
      }
      if (bits != 16) {
        throw DataError(name + ": expected 16-bit PCM, got " +
                        std::to_string(bits) + "-bit");
      }
      if (rate == 0) throw DataError(name + ": zero sample rate");
      // Some writers leave the size field unset; clamp to what is present.
      const std::size_t avail =
          std::min<std::size_t>(size, bytes.size() - body);
      Waveform wave;
      wave.sample_rate = static_cast<int>(rate);
      wave.samples.resize(avail / 2);
      for (std::size_t i = 0; i < wave.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(ReadU16(bytes.data() + body + 2 * i));
        wave.samples[i] = v / 32768.0;
      }
      return wave;
    }
    pos = body + size + (size & 1);
  }
  throw DataError(name + ": no data chunk");
}

Waveform ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeWav(bytes, path.string());
}

std::vector<std::uint8_t> EncodeWav(const Waveform& wave) {
  if (wave.sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(wave.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_bytes);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, kFormatPcm);
  PutU16(&out, 1);
  PutU32(&out, static_cast<std::uint32_t>(wave.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(wave.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  PutTag(&out, "data");
  PutU32(&out, data_bytes);
  for (double x : wave.samples) {
    const double scaled = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
    PutU16(&out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  return out;
}

void WriteWav(const std::filesystem::path& path, const Waveform& wave) {
  const auto bytes = EncodeWav(wave);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

Waveform PeakNormalized(const Waveform& wave, double peak) {
  double max_abs = 0.0;
  for (double x : wave.samples) max_abs = std::max(max_abs, std::abs(x));
  Waveform out = wave;
  if (max_abs == 0.0) return out;
  const double scale = peak / max_abs;
  for (double& x : out.samples) x *= scale;
  return out;
}

}  // namespace spoofprint
