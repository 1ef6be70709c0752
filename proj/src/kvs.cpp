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

#include "lcm/kvs.hpp"

#include "lcm/errors.hpp"

namespace lcm {

Bytes KvsOperation::encode() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(kind));
  w.var_bytes(key);
  if (kind == KvsKind::kPut) w.var_bytes(value);
  return w.take();
}

std::optional<KvsOperation> KvsOperation::decode(ByteSpan b) {
  try {
    ByteReader r(b);
    KvsOperation op;
    std::uint8_t kind = r.u8();
    if (kind < static_cast<std::uint8_t>(KvsKind::kGet) ||
        kind > static_cast<std::uint8_t>(KvsKind::kDel)) {
      return std::nullopt;
    }
    op.kind = static_cast<KvsKind>(kind);
    op.key = r.var_bytes();
    if (op.key.empty() || op.key.size() > kMaxKeyLen) return std::nullopt;
    if (op.kind == KvsKind::kPut) op.value = r.var_bytes();
    r.expect_end();
    return op;
  } catch (const MalformedMessage&) {
    return std::nullopt;
  }
}

KvsOperation KvsOperation::get(std::string_view k) {
  return {KvsKind::kGet, to_bytes(k), {}};
}

KvsOperation KvsOperation::put(std::string_view k, std::string_view v) {
  return {KvsKind::kPut, to_bytes(k), to_bytes(v)};
}

KvsOperation KvsOperation::del(std::string_view k) {
  return {KvsKind::kDel, to_bytes(k), {}};
}

Bytes KvsResult::encode() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(status));
  if (status == KvsStatus::kFound || status == KvsStatus::kError) {
    w.var_bytes(payload);
  }
  return w.take();
}

KvsResult KvsResult::decode(ByteSpan b) {
  ByteReader r(b);
  KvsResult res;
  std::uint8_t status = r.u8();
  if (status > static_cast<std::uint8_t>(KvsStatus::kError)) {
    throw MalformedMessage("unknown kvs result status");
  }
  res.status = static_cast<KvsStatus>(status);
  if (res.status == KvsStatus::kFound || res.status == KvsStatus::kError) {
    res.payload = r.var_bytes();
  }
  r.expect_end();
  return res;
}

Bytes KvsApp::exec(ByteSpan op_bytes) {
  ++exec_count_;
  std::optional<KvsOperation> op = KvsOperation::decode(op_bytes);
  if (!op) {
    return KvsResult{KvsStatus::kError, to_bytes("malformed operation")}
        .encode();
  }
  switch (op->kind) {
    case KvsKind::kGet: {
      auto it = data_.find(op->key);
      if (it == data_.end()) return KvsResult{KvsStatus::kNotFound, {}}.encode();
      return KvsResult{KvsStatus::kFound, it->second}.encode();
    }
    case KvsKind::kPut:
      data_[op->key] = op->value;
      return KvsResult{KvsStatus::kOk, {}}.encode();
    case KvsKind::kDel:
      if (data_.erase(op->key) == 0) {
        return KvsResult{KvsStatus::kNotFound, {}}.encode();
      }
      return KvsResult{KvsStatus::kOk, {}}.encode();
  }
  return KvsResult{KvsStatus::kError, to_bytes("unreachable")}.encode();
}

Bytes KvsApp::serialize_state() const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(data_.size()));
  for (const auto& [k, v] : data_) {  // map order: sorted keys, canonical
    w.var_bytes(k);
    w.var_bytes(v);
  }
  return w.take();
}

void KvsApp::restore_state(ByteSpan state) {
  std::map<Bytes, Bytes> fresh;
  ByteReader r(state);
  std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    Bytes k = r.var_bytes();
    Bytes v = r.var_bytes();
    fresh.emplace(std::move(k), std::move(v));
  }
  r.expect_end();
  data_ = std::move(fresh);
}

std::unique_ptr<AppFunctionality> KvsApp::clone() const {
  auto copy = std::make_unique<KvsApp>();
  copy->data_ = data_;
  return copy;
}

}  // namespace lcm
