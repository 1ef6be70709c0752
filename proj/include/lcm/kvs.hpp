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

#ifndef LCM_KVS_HPP_
#define LCM_KVS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "lcm/bytes.hpp"

namespace lcm {

/// The two interfaces an application must implement to run inside the
/// context: an operation processor and a state (de)serializer. exec must
/// be a pure, total function of (state, op); application-level failures
/// are results, never exceptions.
class AppFunctionality {
 public:
  virtual ~AppFunctionality() = default;

  virtual Bytes exec(ByteSpan op_bytes) = 0;
  virtual Bytes serialize_state() const = 0;
  virtual void restore_state(ByteSpan state) = 0;
  virtual void reset() = 0;
  virtual std::unique_ptr<AppFunctionality> clone() const = 0;
};

enum class KvsKind : std::uint8_t {
  kGet = 0x01,
  kPut = 0x02,
  kDel = 0x03,
};

inline constexpr std::size_t kMaxKeyLen = 1024;

/// get/put/del over a flat key namespace.
struct KvsOperation {
  KvsKind kind = KvsKind::kGet;
  Bytes key;
  Bytes value;  // put only

  Bytes encode() const;
  /// Returns nullopt on malformed input; exec_F turns that into an error
  /// result rather than a protocol violation.
  static std::optional<KvsOperation> decode(ByteSpan b);

  static KvsOperation get(std::string_view k);
  static KvsOperation put(std::string_view k, std::string_view v);
  static KvsOperation del(std::string_view k);
  bool operator==(const KvsOperation&) const = default;
};

enum class KvsStatus : std::uint8_t {
  kOk = 0x00,
  kFound = 0x01,
  kNotFound = 0x02,
  kError = 0x03,
};

struct KvsResult {
  KvsStatus status = KvsStatus::kOk;
  Bytes payload;  // value for kFound, message for kError

  Bytes encode() const;
  static KvsResult decode(ByteSpan b);  // throws MalformedMessage
  bool operator==(const KvsResult&) const = default;
};

/// The key-value store run inside the context. State serialization is
/// canonical: entries sorted by key, length-prefixed.
class KvsApp final : public AppFunctionality {
 public:
  Bytes exec(ByteSpan op_bytes) override;
  Bytes serialize_state() const override;
  void restore_state(ByteSpan state) override;
  void reset() override { data_.clear(); }
  std::unique_ptr<AppFunctionality> clone() const override;

  const std::map<Bytes, Bytes>& data() const { return data_; }

  /// Total executions since construction; instrumentation for the
  /// exactly-once checks in crash scenarios.
  std::uint64_t exec_count() const { return exec_count_; }

 private:
  std::map<Bytes, Bytes> data_;
  std::uint64_t exec_count_ = 0;
};

}  // namespace lcm

#endif  // LCM_KVS_HPP_
