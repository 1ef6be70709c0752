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

#include "lcm/client.hpp"

namespace lcm {

LcmClient::LcmClient(std::uint32_t client_id, SymKey k_c)
    : client_id_(client_id), k_c_(k_c) {
  if (client_id < 1) throw LcmError("client id must be >= 1");
}

Envelope LcmClient::build_invoke(bool as_retry) const {
  InvokeMessage m;
  m.t_c = t_c_;
  m.h_c = h_c_;
  m.client_id = client_id_;
  m.request = *pending_;
  m.request.is_retry = as_retry;
  return auth_encrypt(m.encode(), k_c_);
}

Envelope LcmClient::invoke(const OperationRequest& op) {
  if (halted_) throw ClientHalted(halt_reason_);
  if (pending_) throw PendingOperation("operation already outstanding");
  if (op.op_bytes.empty() && !op.is_dummy) {
    throw LcmError("non-dummy operation must carry bytes");
  }
  pending_ = op;
  return build_invoke(/*as_retry=*/false);
}

Envelope LcmClient::retry() {
  if (halted_) throw ClientHalted(halt_reason_);
  if (!pending_) throw NoPendingOperation("no operation outstanding");
  return build_invoke(/*as_retry=*/true);
}

void LcmClient::halt(const char* reason, const char* what) {
  halted_ = true;
  halt_reason_ = reason;
  throw AuthenticationFailure(what);
}

CompletedOp LcmClient::handle_reply(const Envelope& reply_envelope) {
  if (halted_) throw ClientHalted(halt_reason_);

  Bytes plain;
  try {
    plain = auth_decrypt(reply_envelope, k_c_);
  } catch (const AuthenticationFailure&) {
    halt("authentication_failure", "reply failed authentication");
  }

  ReplyMessage m;
  try {
    m = ReplyMessage::decode(plain);
  } catch (const MalformedMessage&) {
    halt("authentication_failure", "reply failed to decode");
  }

  // The echoed hash-chain value must match ours; anything else means the
  // reply does not answer our outstanding invoke.
  if (m.h_c_echo != h_c_) {
    halted_ = true;
    halt_reason_ = "echo_mismatch";
    throw EchoMismatch("echoed h_c does not match client state");
  }

  t_c_ = m.t;
  t_s_ = m.q;
  h_c_ = m.h;
  pending_.reset();
  return CompletedOp{m.result, m.t, m.q};
}

bool LcmClient::is_majority_stable(std::uint64_t t_op) const {
  if (t_op > t_c_) throw LcmError("t_op exceeds last completed sequence number");
  return t_op <= t_s_;
}

Bytes LcmClient::snapshot() const {
  ByteWriter w;
  w.u32(client_id_);
  w.u64(t_c_);
  w.u64(t_s_);
  w.raw(h_c_.value);
  w.u8(pending_ ? 1 : 0);
  if (pending_) {
    w.u8(pending_->is_dummy ? 1 : 0);
    w.var_bytes(pending_->op_bytes);
  }
  return w.take();
}

LcmClient LcmClient::restore(ByteSpan snapshot, SymKey k_c) {
  ByteReader r(snapshot);
  std::uint32_t id = r.u32();
  LcmClient c(id, k_c);
  c.t_c_ = r.u64();
  c.t_s_ = r.u64();
  ByteSpan h = r.raw(kDigestLen);
  std::copy(h.begin(), h.end(), c.h_c_.value.begin());
  if (r.u8() != 0) {
    OperationRequest op;
    op.is_dummy = r.u8() != 0;
    op.op_bytes = r.var_bytes();
    c.pending_ = std::move(op);
  }
  r.expect_end();
  return c;
}

}  // namespace lcm
