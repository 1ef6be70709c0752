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

#ifndef LCM_BYTES_HPP_
#define LCM_BYTES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcm {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_string(ByteSpan b);

std::string hex_encode(ByteSpan b);
Bytes hex_decode(std::string_view s);  // throws MalformedTrace on bad input

/// Append-only builder for the fixed-width big-endian encodings used on the
/// wire and in sealed state. All multi-byte integers are big-endian.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void raw(ByteSpan b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  /// 4-byte big-endian length prefix followed by the bytes.
  void var_bytes(ByteSpan b);

  Bytes take() { return std::move(buf_); }
  const Bytes& bytes() const { return buf_; }

 private:
  Bytes buf_;
};

/// Cursor over an encoded buffer. Any out-of-bounds read throws
/// MalformedMessage, which callers treat as evidence of server misbehavior.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  ByteSpan raw(std::size_t n);
  Bytes var_bytes();

  std::size_t remaining() const { return data_.size() - pos_; }
  /// Throws MalformedMessage unless the buffer is fully consumed.
  void expect_end() const;

 private:
  ByteSpan need(std::size_t n);

  ByteSpan data_;
  std::size_t pos_ = 0;
};

}  // namespace lcm

#endif  // LCM_BYTES_HPP_
