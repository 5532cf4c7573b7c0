/* Copyright 2026 The VLF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef VLF_SRC_COMMON_LE_IO_HPP_
#define VLF_SRC_COMMON_LE_IO_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "vlf/errors.hpp"

// Little-endian primitive I/O shared by the binary file formats.
namespace vlf::detail {

template <typename UInt>
void write_le(std::ostream& out, UInt v) {
  std::array<char, sizeof(UInt)> buf;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  }
  out.write(buf.data(), buf.size());
}

template <typename UInt>
UInt read_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(UInt)> buf;
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    throw InputError(std::string("truncated file while reading ") + what);
  }
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    v |= static_cast<UInt>(buf[i]) << (8 * i);
  }
  return v;
}

inline void write_f64(std::ostream& out, double v) {
  write_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

inline double read_f64(std::istream& in, const char* what) {
  return std::bit_cast<double>(read_le<std::uint64_t>(in, what));
}

inline void write_f32(std::ostream& out, float v) {
  write_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
}

inline float read_f32(std::istream& in, const char* what) {
  return std::bit_cast<float>(read_le<std::uint32_t>(in, what));
}

inline void expect_magic(std::istream& in, const char (&magic)[5], const char* what) {
  char buf[4];
  if (!in.read(buf, 4) || std::memcmp(buf, magic, 4) != 0) {
    throw InputError(std::string("not a ") + what + " file (bad magic)");
  }
}

}  // namespace vlf::detail

#endif  // VLF_SRC_COMMON_LE_IO_HPP_
