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

#ifndef LCM_CLIENT_HPP_
#define LCM_CLIENT_HPP_

#include <cstdint>
#include <optional>

#include "lcm/crypto.hpp"
#include "lcm/errors.hpp"
#include "lcm/wire.hpp"

namespace lcm {

/// What the protocol hands back to the application when an operation
/// completes: the result, its sequence number, and the majority-stable
/// sequence number at that point.
struct CompletedOp {
  Bytes result;
  std::uint64_t t = 0;
  std::uint64_t q = 0;
};

/// Client-side protocol state machine. A client is strictly sequential:
/// one outstanding operation at a time. Any ProtocolViolation thrown here
/// permanently halts the client; the harness records it as a detection.
class LcmClient {
 public:
  LcmClient(std::uint32_t client_id, SymKey k_c);

  /// Buffers op and returns the encrypted invoke carrying (t_c, h_c, o, i).
  /// Throws PendingOperation if one is already outstanding, ClientHalted
  /// after a violation.
  Envelope invoke(const OperationRequest& op);

  /// Re-sends the outstanding operation with the retry flag set, freshly
  /// encrypted. Throws NoPendingOperation when nothing is outstanding.
  Envelope retry();

  /// Verifies and applies a reply. On success advances
  /// (t_c, t_s, h_c) := (t, q, h), clears the pending operation and
  /// returns (r, t, q). Throws AuthenticationFailure or EchoMismatch on
  /// violation; both halt this client permanently.
  CompletedOp handle_reply(const Envelope& reply_envelope);

  /// An operation with sequence number t_op is stable among a majority
  /// iff t_op <= t_s.
  bool is_majority_stable(std::uint64_t t_op) const;

  std::uint32_t id() const { return client_id_; }
  std::uint64_t t_c() const { return t_c_; }
  std::uint64_t t_s() const { return t_s_; }
  const Digest& h_c() const { return h_c_; }
  bool has_pending() const { return pending_.has_value(); }
  const std::optional<OperationRequest>& pending() const { return pending_; }
  bool halted() const { return halted_; }
  const std::string& halt_reason() const { return halt_reason_; }

  /// Durable snapshot of the client state (excluding k_C, which the admin
  /// re-provisions); taken after every completed operation so a crashed
  /// client can resume without losing its view.
  Bytes snapshot() const;
  static LcmClient restore(ByteSpan snapshot, SymKey k_c);

  /// Key rotation after a group-membership change.
  void set_key(SymKey k_c) { k_c_ = k_c; }

 private:
  Envelope build_invoke(bool as_retry) const;
  [[noreturn]] void halt(const char* reason, const char* what);

  std::uint32_t client_id_;
  std::uint64_t t_c_ = 0;  // last sequence number
  std::uint64_t t_s_ = 0;  // last majority-stable sequence number
  Digest h_c_ = kDigestZero;
  SymKey k_c_;
  std::optional<OperationRequest> pending_;
  bool halted_ = false;
  std::string halt_reason_;
};

}  // namespace lcm

#endif  // LCM_CLIENT_HPP_
