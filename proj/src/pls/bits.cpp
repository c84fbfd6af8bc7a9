// Copyright 2026 The bgpls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <bit>
#include <string>

#include "bgpls/pls.hpp"

namespace bgpls {

void BitString::push(bool b) {
  if ((size_ & 7) == 0) bytes_.push_back(0);
  if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80 >> (size_ & 7));
  ++size_;
}

void BitString::resize(std::size_t n) {
  bytes_.resize((n + 7) / 8);
  size_ = n;
  if (n & 7) bytes_.back() &= static_cast<std::uint8_t>(0xff00 >> (n & 7));
}

std::string BitString::hex() const {
  static const char* kDigits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : bytes_) {
    out += kDigits[b >> 4];
    out += kDigits[b & 15];
  }
  return out;
}

BitString BitString::from_hex(const std::string& hex, std::size_t bits) {
  if (hex.size() != 2 * ((bits + 7) / 8)) throw DecodeError("hex length does not match bit count");
  BitString out;
  for (std::size_t i = 0; i < bits; ++i) {
    const char c = hex[i / 4];
    int nibble;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else {
      throw DecodeError("bad hex digit");
    }
    out.push((nibble >> (3 - i % 4)) & 1);
  }
  return out;
}

void BitWriter::put(std::uint64_t value, int width) {
  if (width < 64 && (value >> width) != 0) {
    throw Error("value " + std::to_string(value) + " needs more than " + std::to_string(width) +
                " bits");
  }
  for (int b = width - 1; b >= 0; --b) bits_.push((value >> b) & 1);
}

std::uint64_t BitReader::get(int width) {
  if (bits_.size() - pos_ < static_cast<std::size_t>(width)) throw DecodeError("truncated");
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) v = (v << 1) | bits_.get(pos_++);
  return v;
}

int bits_for(std::uint64_t v) { return std::max(1, static_cast<int>(std::bit_width(v))); }

}  // namespace bgpls
