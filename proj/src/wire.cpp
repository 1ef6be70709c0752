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

#include "lcm/wire.hpp"

#include "lcm/errors.hpp"

namespace lcm {

namespace {

constexpr std::uint8_t kFlagDummy = 0x01;
constexpr std::uint8_t kFlagRetry = 0x02;

void write_request(ByteWriter& w, const OperationRequest& r) {
  std::uint8_t flags = 0;
  if (r.is_dummy) flags |= kFlagDummy;
  if (r.is_retry) flags |= kFlagRetry;
  w.u8(flags);
  w.var_bytes(r.op_bytes);
}

OperationRequest read_request(ByteReader& r) {
  std::uint8_t flags = r.u8();
  if (flags & ~(kFlagDummy | kFlagRetry)) {
    throw MalformedMessage("unknown request flags");
  }
  OperationRequest out;
  out.is_dummy = flags & kFlagDummy;
  out.is_retry = flags & kFlagRetry;
  out.op_bytes = r.var_bytes();
  if (out.op_bytes.empty() && !out.is_dummy) {
    throw MalformedMessage("empty operation in non-dummy request");
  }
  return out;
}

Digest read_digest(ByteReader& r) {
  Digest d;
  ByteSpan b = r.raw(kDigestLen);
  std::copy(b.begin(), b.end(), d.value.begin());
  return d;
}

SymKey read_key(ByteReader& r) {
  SymKey k;
  ByteSpan b = r.raw(kSymKeyLen);
  std::copy(b.begin(), b.end(), k.bytes.begin());
  return k;
}

void expect_tag(ByteReader& r, std::uint8_t tag) {
  if (r.u8() != tag) throw MalformedMessage("unexpected message tag");
}

}  // namespace

Bytes InvokeMessage::encode() const {
  ByteWriter w;
  w.u8(kTagInvoke);
  w.u64(t_c);
  w.raw(h_c.value);
  w.u32(client_id);
  write_request(w, request);
  return w.take();
}

InvokeMessage InvokeMessage::decode(ByteSpan b) {
  ByteReader r(b);
  expect_tag(r, kTagInvoke);
  InvokeMessage m;
  m.t_c = r.u64();
  m.h_c = read_digest(r);
  m.client_id = r.u32();
  if (m.client_id < 1) throw MalformedMessage("client id must be >= 1");
  m.request = read_request(r);
  r.expect_end();
  return m;
}

Bytes ReplyMessage::encode() const {
  ByteWriter w;
  w.u8(kTagReply);
  w.u64(t);
  w.raw(h.value);
  w.u64(q);
  w.raw(h_c_echo.value);
  w.var_bytes(result);
  return w.take();
}

ReplyMessage ReplyMessage::decode(ByteSpan b) {
  ByteReader r(b);
  expect_tag(r, kTagReply);
  ReplyMessage m;
  m.t = r.u64();
  m.h = read_digest(r);
  m.q = r.u64();
  m.h_c_echo = read_digest(r);
  m.result = r.var_bytes();
  r.expect_end();
  if (m.q > m.t) throw MalformedMessage("q exceeds t in reply");
  return m;
}

Bytes ContextStateSnapshot::encode() const {
  ByteWriter w;
  w.var_bytes(app_state);
  w.u32(static_cast<std::uint32_t>(v.size()));
  for (const auto& [id, e] : v) {  // std::map iterates sorted: canonical
    w.u32(id);
    w.u64(e.t_ack);
    w.u64(e.t_last);
    w.raw(e.h_last.value);
    w.var_bytes(e.last_result);
  }
  w.raw(k_c.bytes);
  return w.take();
}

ContextStateSnapshot ContextStateSnapshot::decode(ByteSpan b) {
  ByteReader r(b);
  ContextStateSnapshot s;
  s.app_state = r.var_bytes();
  std::uint32_t count = r.u32();
  std::uint32_t prev_id = 0;
  for (std::uint32_t k = 0; k < count; ++k) {
    std::uint32_t id = r.u32();
    if (k > 0 && id <= prev_id) {
      throw MalformedMessage("V entries not strictly sorted by client id");
    }
    prev_id = id;
    VEntry e;
    e.t_ack = r.u64();
    e.t_last = r.u64();
    e.h_last = read_digest(r);
    e.last_result = r.var_bytes();
    if (e.t_ack > e.t_last) throw MalformedMessage("t_ack exceeds t_last");
    s.v.emplace(id, std::move(e));
  }
  s.k_c = read_key(r);
  r.expect_end();
  return s;
}

Bytes SealedBlobPair::encode() const {
  ByteWriter w;
  w.var_bytes(blob_key.to_bytes());
  w.var_bytes(blob_state.to_bytes());
  return w.take();
}

SealedBlobPair SealedBlobPair::decode(ByteSpan b) {
  ByteReader r(b);
  SealedBlobPair p;
  p.blob_key = Envelope::from_bytes(r.var_bytes());
  p.blob_state = Envelope::from_bytes(r.var_bytes());
  r.expect_end();
  return p;
}

Bytes AdminCommand::encode() const {
  ByteWriter w;
  w.u8(kTagAdminCommand);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u32(client_id);
  if (kind == AdminKind::kRemoveClient) {
    if (!new_k_c) throw LcmError("remove command requires a fresh key");
    w.raw(new_k_c->bytes);
  }
  return w.take();
}

AdminCommand AdminCommand::decode(ByteSpan b) {
  ByteReader r(b);
  expect_tag(r, kTagAdminCommand);
  AdminCommand c;
  std::uint8_t kind = r.u8();
  if (kind != static_cast<std::uint8_t>(AdminKind::kAddClient) &&
      kind != static_cast<std::uint8_t>(AdminKind::kRemoveClient)) {
    throw MalformedMessage("unknown admin command kind");
  }
  c.kind = static_cast<AdminKind>(kind);
  c.client_id = r.u32();
  if (c.kind == AdminKind::kRemoveClient) c.new_k_c = read_key(r);
  r.expect_end();
  return c;
}

Bytes AdminReply::encode() const {
  ByteWriter w;
  w.u8(kTagAdminReply);
  w.u8(static_cast<std::uint8_t>(status));
  w.u32(group_size);
  return w.take();
}

AdminReply AdminReply::decode(ByteSpan b) {
  ByteReader r(b);
  expect_tag(r, kTagAdminReply);
  AdminReply m;
  std::uint8_t status = r.u8();
  if (status > static_cast<std::uint8_t>(AdminStatus::kDuplicateClient)) {
    throw MalformedMessage("unknown admin status");
  }
  m.status = static_cast<AdminStatus>(status);
  m.group_size = r.u32();
  r.expect_end();
  return m;
}

std::uint8_t peek_message_tag(ByteSpan b) {
  if (b.empty()) throw MalformedMessage("empty message");
  return b[0];
}

}  // namespace lcm
