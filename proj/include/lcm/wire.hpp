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

#ifndef LCM_WIRE_HPP_
#define LCM_WIRE_HPP_

#include <cstdint>
#include <map>
#include <optional>

#include "lcm/bytes.hpp"
#include "lcm/crypto.hpp"

// Plaintext message and persisted-state formats. These encodings are the
// normative wire and storage format (see docs/wire_format.md); the hash
// chain and the cross-checks in the test suite depend on them bit-exactly.
//
// Conventions: big-endian fixed-width integers, a 1-byte message-type tag,
// and 4-byte length prefixes for variable-length fields. Encodings are
// canonical: each value has exactly one encoding.

namespace lcm {

inline constexpr std::uint8_t kTagInvoke = 0x01;
inline constexpr std::uint8_t kTagReply = 0x02;
inline constexpr std::uint8_t kTagAdminCommand = 0x03;
inline constexpr std::uint8_t kTagAdminReply = 0x04;

/// The application-opaque operation o, plus the two protocol flag bits.
/// Dummy operations carry no payload; they exist to refresh stability.
struct OperationRequest {
  Bytes op_bytes;
  bool is_dummy = false;
  bool is_retry = false;

  static OperationRequest dummy() { return {{}, true, false}; }
  bool operator==(const OperationRequest&) const = default;
};

/// <invoke | t_c, h_c, o, i>
struct InvokeMessage {
  std::uint64_t t_c = 0;
  Digest h_c;
  std::uint32_t client_id = 0;
  OperationRequest request;

  Bytes encode() const;
  static InvokeMessage decode(ByteSpan b);
  bool operator==(const InvokeMessage&) const = default;
};

/// <reply | t, h, r, q, h_c'>
struct ReplyMessage {
  std::uint64_t t = 0;
  Digest h;
  std::uint64_t q = 0;  // majority-stable sequence number, q <= t
  Digest h_c_echo;
  Bytes result;

  Bytes encode() const;
  static ReplyMessage decode(ByteSpan b);
  bool operator==(const ReplyMessage&) const = default;
};

/// Per-client record in the context's protocol state V. t_ack is the
/// sequence number of the client's last acknowledged operation, t_last /
/// h_last describe its last executed operation, and last_result caches
/// that operation's result for the crash-retry path.
struct VEntry {
  std::uint64_t t_ack = 0;
  std::uint64_t t_last = 0;
  Digest h_last;
  Bytes last_result;

  bool operator==(const VEntry&) const = default;
};

/// The (s, V, k_C) tuple the context seals under k_P.
struct ContextStateSnapshot {
  Bytes app_state;
  std::map<std::uint32_t, VEntry> v;  // sorted by client id => canonical
  SymKey k_c;

  Bytes encode() const;
  static ContextStateSnapshot decode(ByteSpan b);
  bool operator==(const ContextStateSnapshot&) const = default;
};

/// The persisted form of the context's survivable state:
/// blob_key  = k_P sealed under k_S, blob_state = snapshot under k_P.
struct SealedBlobPair {
  Envelope blob_key;
  Envelope blob_state;

  Bytes encode() const;
  static SealedBlobPair decode(ByteSpan b);
  bool operator==(const SealedBlobPair&) const = default;
};

enum class AdminKind : std::uint8_t {
  kAddClient = 0x01,
  kRemoveClient = 0x02,
};

/// Group-membership command, authenticated under the current k_C.
/// Removal carries the fresh communication key the context switches to.
struct AdminCommand {
  AdminKind kind = AdminKind::kAddClient;
  std::uint32_t client_id = 0;
  std::optional<SymKey> new_k_c;  // present iff kind == kRemoveClient

  Bytes encode() const;
  static AdminCommand decode(ByteSpan b);
  bool operator==(const AdminCommand&) const = default;
};

enum class AdminStatus : std::uint8_t {
  kOk = 0x00,
  kUnknownClient = 0x01,
  kDuplicateClient = 0x02,
};

struct AdminReply {
  AdminStatus status = AdminStatus::kOk;
  std::uint32_t group_size = 0;

  Bytes encode() const;
  static AdminReply decode(ByteSpan b);
  bool operator==(const AdminReply&) const = default;
};

/// Reads the leading message-type tag without consuming the buffer.
std::uint8_t peek_message_tag(ByteSpan b);

/// Encoded-size deltas over the raw payload; constant by construction.
/// kInvokeOverhead covers the plaintext framing of an InvokeMessage over
/// its op_bytes; adding kEnvelopeOverhead gives the on-wire delta.
inline constexpr std::size_t kInvokeOverhead = 1 + 8 + kDigestLen + 4 + 1 + 4;
inline constexpr std::size_t kReplyOverhead = 1 + 8 + kDigestLen + 8 + kDigestLen + 4;

}  // namespace lcm

#endif  // LCM_WIRE_HPP_
