// include/ttslabel/binary_io.h

// Copyright 2026  ttslabel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TTSLABEL_BINARY_IO_H_
#define TTSLABEL_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "ttslabel/error.h"

namespace ttslabel {

// Little-endian scalar IO independent of host byte order.
inline void WriteU32(std::ostream &os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char *>(b), 4);
}

inline void WriteU64(std::ostream &os, std::uint64_t v) {
  WriteU32(os, static_cast<std::uint32_t>(v));
  WriteU32(os, static_cast<std::uint32_t>(v >> 32));
}

inline void WriteF32(std::ostream &os, float f) {
  WriteU32(os, std::bit_cast<std::uint32_t>(f));
}

inline void WriteString(std::ostream &os, const std::string &s) {
  WriteU32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::uint32_t ReadU32(std::istream &is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char *>(b), 4))
    throw Error(ErrorCode::kFormat, "unexpected end of binary data");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t ReadU64(std::istream &is) {
  const std::uint64_t lo = ReadU32(is);
  const std::uint64_t hi = ReadU32(is);
  return lo | (hi << 32);
}

inline float ReadF32(std::istream &is) {
  return std::bit_cast<float>(ReadU32(is));
}

inline std::string ReadString(std::istream &is) {
  const std::uint32_t n = ReadU32(is);
  if (n > (1u << 24)) throw Error(ErrorCode::kFormat, "string too long");
  std::string s(n, '\0');
  if (n > 0 && !is.read(s.data(), n))
    throw Error(ErrorCode::kFormat, "unexpected end of binary data");
  return s;
}

}  // namespace ttslabel

#endif  // TTSLABEL_BINARY_IO_H_
