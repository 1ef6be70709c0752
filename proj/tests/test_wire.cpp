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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lcm/errors.hpp"
#include "lcm/wire.hpp"
#include "lcm/workload.hpp"

using namespace lcm;

namespace {

Bytes random_bytes_n(Rng& rng, std::size_t n) {
  Bytes b(n);
  for (auto& c : b) c = static_cast<std::uint8_t>(rng.below(256));
  return b;
}

Digest random_digest(Rng& rng) {
  Digest d;
  for (auto& c : d.value) c = static_cast<std::uint8_t>(rng.below(256));
  return d;
}

InvokeMessage random_invoke(Rng& rng) {
  InvokeMessage m;
  m.t_c = rng.below(1 << 20);
  m.h_c = random_digest(rng);
  m.client_id = static_cast<std::uint32_t>(rng.range(1, 1000));
  m.request.is_dummy = rng.below(8) == 0;
  m.request.is_retry = rng.below(4) == 0;
  if (!m.request.is_dummy) {
    m.request.op_bytes = random_bytes_n(rng, rng.range(1, 300));
  }
  return m;
}

ReplyMessage random_reply(Rng& rng) {
  ReplyMessage m;
  m.t = rng.range(1, 1 << 20);
  m.q = rng.below(m.t + 1);
  m.h = random_digest(rng);
  m.h_c_echo = random_digest(rng);
  m.result = random_bytes_n(rng, rng.below(300));
  return m;
}

}  // namespace

TEST_CASE("invoke message: initial-state example") {
  InvokeMessage m;
  m.t_c = 0;
  m.h_c = kDigestZero;
  m.client_id = 1;
  m.request.op_bytes = to_bytes("abc");

  Bytes enc = m.encode();
  CHECK(enc.size() == kInvokeOverhead + 3);  // fixed header + payload
  CHECK(enc[0] == kTagInvoke);
  CHECK(InvokeMessage::decode(enc) == m);
}

TEST_CASE("reply message round-trips for random field values") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    ReplyMessage m = random_reply(rng);
    CHECK(ReplyMessage::decode(m.encode()) == m);
  }
}

TEST_CASE("decode of truncated buffers is MalformedMessage") {
  Rng rng(12);
  InvokeMessage inv = random_invoke(rng);
  Bytes enc = inv.encode();
  for (std::size_t cut = 1; cut < enc.size(); cut += 7) {
    Bytes prefix(enc.begin(), enc.begin() + cut);
    CHECK_THROWS_AS(InvokeMessage::decode(prefix), MalformedMessage);
  }
  ReplyMessage rep = random_reply(rng);
  Bytes renc = rep.encode();
  Bytes prefix(renc.begin(), renc.end() - 1);
  CHECK_THROWS_AS(ReplyMessage::decode(prefix), MalformedMessage);
}

TEST_CASE("trailing bytes are rejected") {
  Rng rng(13);
  Bytes enc = random_invoke(rng).encode();
  enc.push_back(0);
  CHECK_THROWS_AS(InvokeMessage::decode(enc), MalformedMessage);
}

TEST_CASE("encodings are canonical (injective) at test scale") {
  Rng rng(14);
  std::set<Bytes> encodings;
  std::set<std::string> values;
  for (int i = 0; i < 1000; ++i) {
    InvokeMessage m = random_invoke(rng);
    Bytes enc = m.encode();
    CHECK(InvokeMessage::decode(enc) == m);
    // distinct values must produce distinct encodings
    std::string fp = std::to_string(m.t_c) + m.h_c.hex() +
                     std::to_string(m.client_id) + hex_encode(m.request.op_bytes) +
                     (m.request.is_dummy ? "d" : "") +
                     (m.request.is_retry ? "r" : "");
    bool fresh_value = values.insert(fp).second;
    CHECK(encodings.insert(enc).second == fresh_value);
  }
}

TEST_CASE("metadata overhead is constant across operation sizes") {
  SymKey k = SymKey::random();
  Rng rng(15);
  std::set<std::size_t> invoke_deltas, reply_deltas;
  for (std::size_t size : {std::size_t{1}, std::size_t{10}, std::size_t{100},
                           std::size_t{1000}, std::size_t{2500}}) {
    InvokeMessage m;
    m.t_c = 5;
    m.h_c = kDigestZero;
    m.client_id = 2;
    m.request.op_bytes = random_bytes_n(rng, size);
    std::size_t wire = auth_encrypt(m.encode(), k).wire_size();
    invoke_deltas.insert(wire - size);

    ReplyMessage r;
    r.t = 9;
    r.q = 3;
    r.result = random_bytes_n(rng, size);
    std::size_t rwire = auth_encrypt(r.encode(), k).wire_size();
    reply_deltas.insert(rwire - size);
  }
  CHECK(invoke_deltas.size() == 1);
  CHECK(reply_deltas.size() == 1);
  CHECK(*invoke_deltas.begin() == kInvokeOverhead + kEnvelopeOverhead);
  CHECK(*reply_deltas.begin() == kReplyOverhead + kEnvelopeOverhead);
}

TEST_CASE("operation request rejects empty non-dummy payloads") {
  InvokeMessage m;
  m.client_id = 1;
  m.request.op_bytes = {};
  m.request.is_dummy = false;
  CHECK_THROWS_AS(InvokeMessage::decode(m.encode()), MalformedMessage);
}

TEST_CASE("reply with q > t is rejected") {
  ReplyMessage m;
  m.t = 2;
  m.q = 5;
  Bytes enc = m.encode();
  CHECK_THROWS_AS(ReplyMessage::decode(enc), MalformedMessage);
}

TEST_CASE("snapshot encoding is canonical and validated") {
  Rng rng(16);
  ContextStateSnapshot snap;
  snap.app_state = to_bytes("state");
  snap.k_c = SymKey::random();
  for (std::uint32_t id : {3u, 1u, 2u}) {
    VEntry e;
    e.t_ack = id;
    e.t_last = id + 1;
    e.h_last = random_digest(rng);
    e.last_result = to_bytes("r");
    snap.v[id] = e;
  }
  Bytes enc = snap.encode();
  CHECK(ContextStateSnapshot::decode(enc) == snap);

  SUBCASE("unsorted V entries are rejected") {
    // handcraft: swap the two leading entries' ids in the encoding
    ByteWriter w;
    w.var_bytes(snap.app_state);
    w.u32(2);
    w.u32(2);  // out of order after next id
    w.u64(0); w.u64(1);
    w.raw(kDigestZero.value);
    w.var_bytes({});
    w.u32(1);
    w.u64(0); w.u64(1);
    w.raw(kDigestZero.value);
    w.var_bytes({});
    w.raw(snap.k_c.bytes);
    CHECK_THROWS_AS(ContextStateSnapshot::decode(w.bytes()), MalformedMessage);
  }
  SUBCASE("t_ack > t_last is rejected") {
    ByteWriter w;
    w.var_bytes(snap.app_state);
    w.u32(1);
    w.u32(1);
    w.u64(5); w.u64(2);
    w.raw(kDigestZero.value);
    w.var_bytes({});
    w.raw(snap.k_c.bytes);
    CHECK_THROWS_AS(ContextStateSnapshot::decode(w.bytes()), MalformedMessage);
  }
}

TEST_CASE("sealed blob pair round-trips") {
  SymKey k = SymKey::random();
  SealedBlobPair p;
  p.blob_key = auth_encrypt(to_bytes("key"), k);
  p.blob_state = auth_encrypt(to_bytes("state"), k);
  CHECK(SealedBlobPair::decode(p.encode()) == p);
}

TEST_CASE("admin command encoding") {
  AdminCommand add{AdminKind::kAddClient, 7, std::nullopt};
  CHECK(AdminCommand::decode(add.encode()) == add);

  AdminCommand rm{AdminKind::kRemoveClient, 3, SymKey::random()};
  CHECK(AdminCommand::decode(rm.encode()) == rm);

  AdminCommand bad{AdminKind::kRemoveClient, 3, std::nullopt};
  CHECK_THROWS_AS(bad.encode(), LcmError);

  AdminReply reply{AdminStatus::kDuplicateClient, 4};
  CHECK(AdminReply::decode(reply.encode()) == reply);
}
