/*
 * Copyright (c) 2026, the LCM project authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lcm/bytes.hpp"

#include "lcm/errors.hpp"

namespace lcm {

Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

std::string to_string(ByteSpan b) {
  return std::string(b.begin(), b.end());
}

std::string hex_encode(ByteSpan b) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (std::uint8_t c : b) {
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 0x0f]);
  }
  return out;
}

static std::uint8_t hex_nibble(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
  throw MalformedTrace("invalid hex digit");
}

Bytes hex_decode(std::string_view s) {
  if (s.size() % 2 != 0) throw MalformedTrace("odd-length hex string");
  Bytes out;
  out.reserve(s.size() / 2);
  for (std::size_t i = 0; i < s.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>((hex_nibble(s[i]) << 4) |
                                            hex_nibble(s[i + 1])));
  }
  return out;
}

void ByteWriter::u32(std::uint32_t v) {
  buf_.push_back(static_cast<std::uint8_t>(v >> 24));
  buf_.push_back(static_cast<std::uint8_t>(v >> 16));
  buf_.push_back(static_cast<std::uint8_t>(v >> 8));
  buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    buf_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void ByteWriter::var_bytes(ByteSpan b) {
  if (b.size() > 0xffffffffull) throw LcmError("var_bytes field too large");
  u32(static_cast<std::uint32_t>(b.size()));
  raw(b);
}

ByteSpan ByteReader::need(std::size_t n) {
  if (remaining() < n) throw MalformedMessage("truncated message");
  ByteSpan out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() {
  return need(1)[0];
}

std::uint32_t ByteReader::u32() {
  ByteSpan b = need(4);
  return (static_cast<std::uint32_t>(b[0]) << 24) |
         (static_cast<std::uint32_t>(b[1]) << 16) |
         (static_cast<std::uint32_t>(b[2]) << 8) |
         static_cast<std::uint32_t>(b[3]);
}

std::uint64_t ByteReader::u64() {
  ByteSpan b = need(8);
  std::uint64_t v = 0;
  for (std::uint8_t c : b) v = (v << 8) | c;
  return v;
}

ByteSpan ByteReader::raw(std::size_t n) {
  return need(n);
}

Bytes ByteReader::var_bytes() {
  std::uint32_t n = u32();
  ByteSpan b = need(n);
  return Bytes(b.begin(), b.end());
}

void ByteReader::expect_end() const {
  if (remaining() != 0) throw MalformedMessage("trailing bytes after message");
}

}  // namespace lcm
