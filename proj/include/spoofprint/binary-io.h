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

#ifndef SPOOFPRINT_BINARY_IO_H_
#define SPOOFPRINT_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "spoofprint/errors.h"

namespace spoofprint {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

// Little-endian writer for the self-describing cache and checkpoint formats.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::filesystem::path& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw DataError("cannot write " + path.string());
  }

  void Magic(std::string_view tag) { Raw(tag.data(), tag.size()); }
  void U8(std::uint8_t v) { Raw(&v, 1); }
  void U32(std::uint32_t v) { Raw(&v, 4); }
  void U64(std::uint64_t v) { Raw(&v, 8); }
  void F32(float v) { Raw(&v, 4); }
  void F64(double v) { Raw(&v, 8); }
  void String(std::string_view s) {
    U32(static_cast<std::uint32_t>(s.size()));
    Raw(s.data(), s.size());
  }
  void Close() {
    out_.close();
    if (!out_) throw DataError("write failed: " + path_.string());
  }

 private:
  void Raw(const void* p, std::size_t n) {
    out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::filesystem::path& path) : name_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + name_);
    bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void ExpectMagic(std::string_view tag) {
    std::string got(tag.size(), '\0');
    Raw(got.data(), tag.size());
    if (got != tag) {
      throw DataError(name_ + ": bad magic, expected " + std::string(tag));
    }
  }
  std::uint8_t U8() { return Read<std::uint8_t>(); }
  std::uint32_t U32() { return Read<std::uint32_t>(); }
  std::uint64_t U64() { return Read<std::uint64_t>(); }
  float F32() { return Read<float>(); }
  double F64() { return Read<double>(); }
  std::string String() {
    const std::uint32_t n = U32();
    std::string s(n, '\0');
    Raw(s.data(), n);
    return s;
  }
  void ExpectEnd() const {
    if (pos_ != bytes_.size()) throw DataError(name_ + ": trailing bytes");
  }

 private:
  template <typename T>
  T Read() {
    T v;
    Raw(&v, sizeof(T));
    return v;
  }
  void Raw(void* p, std::size_t n) {
    if (pos_ + n > bytes_.size()) throw DataError(name_ + ": unexpected end of file");
    std::memcpy(p, bytes_.data() + pos_, n);
    pos_ += n;
  }

  std::string name_;
  std::vector<char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace spoofprint

#endif  // SPOOFPRINT_BINARY_IO_H_
