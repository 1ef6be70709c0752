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

#include "lcm/context.hpp"

#include <algorithm>

namespace lcm {

std::uint64_t majority_stable(const std::map<std::uint32_t, VEntry>& v) {
  const std::size_t n = v.size();
  std::uint64_t best = 0;
  for (const auto& [id, entry] : v) {
    const std::uint64_t s = entry.t_ack;
    if (s <= best) continue;
    std::size_t count = 0;
    for (const auto& [other_id, other] : v) {
      if (other.t_ack >= s) ++count;
    }
    if (count * 2 > n) best = s;
  }
  return best;
}

TrustedContext::TrustedContext(PlatformIdentity platform, Bytes program_id,
                               std::unique_ptr<AppFunctionality> app,
                               bool skip_view_checks)
    : platform_(std::move(platform)),
      program_id_(std::move(program_id)),
      app_(std::move(app)),
      skip_view_checks_(skip_view_checks) {}

void TrustedContext::violation(const char* kind, const std::string& what) {
  phase_ = Phase::kHalted;
  halt_reason_ = kind;
  if (std::string_view(kind) == "view_mismatch") throw ViewMismatch(what);
  if (std::string_view(kind) == "malformed_message") throw MalformedMessage(what);
  throw AuthenticationFailure(what);
}

void TrustedContext::require_ready() const {
  if (phase_ == Phase::kHalted) throw ContextHalted(halt_reason_);
  if (phase_ != Phase::kReady) throw NotBootstrapped("context not ready");
}

void TrustedContext::init(const std::optional<SealedBlobPair>& loaded) {
  if (phase_ != Phase::kCreated) throw LcmError("init on a used context");
  k_s_ = get_key(platform_, program_id_);
  if (!loaded) {
    phase_ = Phase::kAwaitingBootstrap;
    return;
  }
  try {
    Bytes k_p_plain = auth_decrypt(loaded->blob_key, k_s_);
    if (k_p_plain.size() != kSymKeyLen) {
      throw AuthenticationFailure("key blob has wrong length");
    }
    std::copy(k_p_plain.begin(), k_p_plain.end(), k_p_.bytes.begin());

    Bytes snap_plain = auth_decrypt(loaded->blob_state, k_p_);
    ContextStateSnapshot snap = ContextStateSnapshot::decode(snap_plain);

    v_ = std::move(snap.v);
    k_c_ = snap.k_c;
    app_->restore_state(snap.app_state);

    // (., t, h) <- V[argmax(V)]
    t_ = 0;
    h_ = kDigestZero;
    for (const auto& [id, entry] : v_) {
      if (entry.t_last > t_) {
        t_ = entry.t_last;
        h_ = entry.h_last;
      }
    }
    last_q_ = majority_stable(v_);
    phase_ = Phase::kReady;
  } catch (const AuthenticationFailure& e) {
    phase_ = Phase::kHalted;
    halt_reason_ = "authentication_failure";
    throw;
  } catch (const MalformedMessage& e) {
    phase_ = Phase::kHalted;
    halt_reason_ = "malformed_message";
    throw;
  }
}

SealedBlobPair TrustedContext::bootstrap(const SymKey& k_p, const SymKey& k_c,
                                         const std::vector<std::uint32_t>& group) {
  if (phase_ == Phase::kReady || phase_ == Phase::kHalted) {
    throw AlreadyBootstrapped("context already holds state");
  }
  if (phase_ == Phase::kCreated) k_s_ = get_key(platform_, program_id_);
  if (group.empty()) throw ConfigError("client group must be non-empty");

  k_p_ = k_p;
  k_c_ = k_c;
  v_.clear();
  for (std::uint32_t id : group) {
    if (id < 1) throw ConfigError("client ids must be >= 1");
    if (!v_.emplace(id, VEntry{}).second) {
      throw ConfigError("duplicate client id in group");
    }
  }
  app_->reset();
  t_ = 0;
  h_ = kDigestZero;
  last_q_ = 0;
  phase_ = Phase::kReady;
  return seal_state();
}

SealedBlobPair TrustedContext::seal_state() const {
  if (phase_ != Phase::kReady && phase_ != Phase::kHalted) {
    throw NotBootstrapped("no state to seal");
  }
  ContextStateSnapshot snap;
  snap.app_state = app_->serialize_state();
  snap.v = v_;
  snap.k_c = k_c_;
  SealedBlobPair pair;
  pair.blob_key = auth_encrypt(k_p_.bytes, k_s_);
  pair.blob_state = auth_encrypt(snap.encode(), k_p_);
  return pair;
}

ProcessedOp TrustedContext::process_invoke(const InvokeMessage& m) {
  auto it = v_.find(m.client_id);
  if (it == v_.end()) {
    violation("view_mismatch", "invoke from client outside the group");
  }
  VEntry& entry = it->second;
  const OperationRequest& req = m.request;

  if (req.is_retry && entry.t_last > m.t_c) {
    // The operation was already executed and persisted but its reply was
    // lost (crash after store). Resend the cached result; exec_F must not
    // run again.
    if (entry.t_ack != m.t_c && !skip_view_checks_) {
      violation("view_mismatch", "retry does not match recorded state");
    }
    ReplyMessage r;
    r.t = entry.t_last;
    r.h = entry.h_last;
    // The current watermark may exceed the cached operation's sequence
    // number; a reply must keep q <= t, and a smaller stable number is
    // always sound (and still monotone at this client).
    r.q = std::min(majority_stable(v_), entry.t_last);
    r.h_c_echo = m.h_c;
    r.result = entry.last_result;

    ProcessedOp out;
    out.reply = auth_encrypt(r.encode(), k_c_);
    out.t = r.t;
    out.t_c = m.t_c;
    out.q = r.q;
    out.client_id = m.client_id;
    out.h = r.h;
    out.op_bytes = req.op_bytes;
    out.result = r.result;
    out.is_dummy = req.is_dummy;
    out.executed = false;
    out.cached = true;
    return out;
  }

  // assert V[i] = (*, t_c, h_c): the client's condensed view must match
  // the last reply this lineage produced for it.
  if ((entry.t_last != m.t_c || entry.h_last != m.h_c) && !skip_view_checks_) {
    violation("view_mismatch", "client view does not match V");
  }

  t_ += 1;
  Bytes result;
  if (!req.is_dummy) {
    result = app_->exec(req.op_bytes);
  }
  h_ = chain_hash(h_, req.op_bytes, t_, m.client_id);
  entry = VEntry{m.t_c, t_, h_, result};
  last_q_ = majority_stable(v_);

  ReplyMessage r;
  r.t = t_;
  r.h = h_;
  r.q = last_q_;
  r.h_c_echo = m.h_c;
  r.result = result;

  ProcessedOp out;
  out.reply = auth_encrypt(r.encode(), k_c_);
  out.t = t_;
  out.t_c = m.t_c;
  out.q = last_q_;
  out.client_id = m.client_id;
  out.h = h_;
  out.op_bytes = req.op_bytes;
  out.result = result;
  out.is_dummy = req.is_dummy;
  out.executed = !req.is_dummy;
  return out;
}

AdminStatus TrustedContext::apply_admin(const AdminCommand& cmd) {
  switch (cmd.kind) {
    case AdminKind::kAddClient:
      if (v_.contains(cmd.client_id)) return AdminStatus::kDuplicateClient;
      v_.emplace(cmd.client_id, VEntry{});
      return AdminStatus::kOk;
    case AdminKind::kRemoveClient:
      if (!v_.contains(cmd.client_id)) return AdminStatus::kUnknownClient;
      v_.erase(cmd.client_id);
      k_c_ = *cmd.new_k_c;  // fresh key; old-key traffic now fails
      last_q_ = majority_stable(v_);
      return AdminStatus::kOk;
  }
  return AdminStatus::kUnknownClient;
}

ProcessedOp TrustedContext::process_admin(const AdminCommand& cmd) {
  AdminReply reply;
  reply.status = apply_admin(cmd);
  reply.group_size = static_cast<std::uint32_t>(v_.size());

  ProcessedOp out;
  // Encrypted under the key in effect after the command, which the admin
  // holds in both cases.
  out.reply = auth_encrypt(reply.encode(), k_c_);
  out.client_id = cmd.client_id;
  out.is_admin = true;
  return out;
}

ProcessedOp TrustedContext::process_plaintext(ByteSpan plain) {
  std::uint8_t tag = 0;
  AdminCommand admin;
  InvokeMessage inv;
  try {
    tag = peek_message_tag(plain);
    if (tag == kTagAdminCommand) {
      admin = AdminCommand::decode(plain);
    } else {
      inv = InvokeMessage::decode(plain);
    }
  } catch (const MalformedMessage& e) {
    violation("malformed_message", e.what());
  }
  return tag == kTagAdminCommand ? process_admin(admin) : process_invoke(inv);
}

ProcessedOp TrustedContext::handle_invoke(const Envelope& invoke_envelope) {
  require_ready();
  Bytes plain;
  try {
    plain = auth_decrypt(invoke_envelope, k_c_);
  } catch (const AuthenticationFailure& e) {
    violation("authentication_failure", e.what());
  }
  return process_plaintext(plain);
}

BatchResult TrustedContext::handle_batch(const std::vector<Envelope>& invokes) {
  require_ready();
  BatchResult out;
  for (const Envelope& env : invokes) {
    try {
      out.ops.push_back(handle_invoke(env));
      ++out.processed;
    } catch (const ProtocolViolation& e) {
      ++out.processed;  // the violating item was consumed
      out.halted = true;
      out.violation_kind = e.kind();
      break;
    }
  }
  // State is sealed once per batch, covering exactly the processed prefix.
  out.blob = seal_state();
  return out;
}

SealedBlobPair TrustedContext::migrate_out(TrustedContext& target) {
  require_ready();
  if (&target == this) throw TargetNotFresh("cannot migrate into self");
  if (target.phase_ == Phase::kReady || target.phase_ == Phase::kHalted) {
    throw TargetNotFresh("migration target already holds state");
  }
  if (target.phase_ == Phase::kCreated) {
    target.k_s_ = get_key(target.platform_, target.program_id_);
  }

  // k_P and the live state cross the secure channel; the target reseals
  // under its own k_S, binding the state to its platform.
  target.k_p_ = k_p_;
  target.k_c_ = k_c_;
  target.v_ = v_;
  target.t_ = t_;
  target.h_ = h_;
  target.last_q_ = last_q_;
  target.app_->restore_state(app_->serialize_state());
  target.phase_ = Phase::kReady;

  phase_ = Phase::kHalted;
  halt_reason_ = "migrated";
  return target.seal_state();
}

void TrustedContext::add_client(std::uint32_t client_id) {
  require_ready();
  AdminCommand cmd{AdminKind::kAddClient, client_id, std::nullopt};
  if (apply_admin(cmd) == AdminStatus::kDuplicateClient) {
    throw DuplicateClient("client already in group");
  }
}

void TrustedContext::remove_client(std::uint32_t client_id,
                                   const SymKey& new_k_c) {
  require_ready();
  AdminCommand cmd{AdminKind::kRemoveClient, client_id, new_k_c};
  if (apply_admin(cmd) == AdminStatus::kUnknownClient) {
    throw UnknownClient("client not in group");
  }
}

}  // namespace lcm
