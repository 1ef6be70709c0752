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

#ifndef LCM_CONTEXT_HPP_
#define LCM_CONTEXT_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcm/crypto.hpp"
#include "lcm/errors.hpp"
#include "lcm/kvs.hpp"
#include "lcm/wire.hpp"

namespace lcm {

/// The largest acknowledged sequence number in V that more than n/2
/// entries' acknowledgments reach: q := max{ s in {0} u {t_ack} :
/// |{ j : V[j].t_ack >= s }| > n/2 }.
std::uint64_t majority_stable(const std::map<std::uint32_t, VEntry>& v);

/// One processed invoke: the encrypted reply plus the sealed state that
/// the host must persist. Per-operation metadata is exposed for trace
/// recording by a host that could derive none of it from the ciphertexts.
struct ProcessedOp {
  Envelope reply;
  std::uint64_t t = 0;        // sequence number assigned (t_last on cached resend)
  std::uint64_t t_c = 0;      // ack carried by the invoke; identifies the op instance
  std::uint64_t q = 0;
  std::uint32_t client_id = 0;
  Digest h;
  Bytes op_bytes;
  Bytes result;
  bool is_dummy = false;
  bool executed = false;      // exec_F ran (false for dummies and resends)
  bool cached = false;        // cached resend: no sequence number consumed
  bool is_admin = false;
};

struct BatchResult {
  std::vector<ProcessedOp> ops;  // one entry per item answered
  SealedBlobPair blob;           // state after the processed prefix
  std::size_t processed = 0;     // items consumed (answered or violating)
  bool halted = false;
  std::string violation_kind;    // set when halted by a violation
};

/// The trusted execution context T. Strictly single-stream: the host may
/// queue concurrently but delivery in here is serialized. All violations
/// (failed view verification, failed authentication) halt the context
/// permanently; halt is absorbing for this instance and its lineage.
class TrustedContext {
 public:
  /// skip_view_checks is test instrumentation only: it lets checker tests
  /// manufacture the trace an undetected fork would leave behind.
  TrustedContext(PlatformIdentity platform, Bytes program_id,
                 std::unique_ptr<AppFunctionality> app,
                 bool skip_view_checks = false);

  /// Entry point for a new epoch. With no persisted state the context
  /// waits for bootstrapping; otherwise it unseals k_P with the platform
  /// sealing key, decrypts the snapshot, and recovers (t, h) from the
  /// V entry with the highest sequence number. A stale-but-valid blob
  /// loads fine here: rollback is detected by the clients' views, not at
  /// load time.
  void init(const std::optional<SealedBlobPair>& loaded);

  /// Installs the admin-generated keys and the client group, and returns
  /// the initial sealed state for the host to persist.
  SealedBlobPair bootstrap(const SymKey& k_p, const SymKey& k_c,
                           const std::vector<std::uint32_t>& group);

  /// Decrypts and processes one incoming envelope (client invoke or admin
  /// command). Throws the ProtocolViolation that halted the context.
  ProcessedOp handle_invoke(const Envelope& invoke_envelope);
  SealedBlobPair seal_state() const;

  /// Processes a batch sequentially but seals state once. A violation
  /// halts mid-batch; earlier replies are still returned and the blob
  /// covers exactly the processed prefix.
  BatchResult handle_batch(const std::vector<Envelope>& invokes);

  /// Hands the protocol over to a fresh context on another platform:
  /// k_P and the live state cross over a secure channel, the target
  /// reseals under its own sealing key, and this context stops for good.
  /// Returns the target's initial sealed state.
  SealedBlobPair migrate_out(TrustedContext& target);

  /// Direct membership API (the message path accepts the same commands
  /// as authenticated envelopes). Removal installs the fresh k_C.
  void add_client(std::uint32_t client_id);
  void remove_client(std::uint32_t client_id, const SymKey& new_k_c);

  bool ready() const { return phase_ == Phase::kReady; }
  bool awaiting_bootstrap() const { return phase_ == Phase::kAwaitingBootstrap; }
  bool halted() const { return phase_ == Phase::kHalted; }
  const std::string& halt_reason() const { return halt_reason_; }

  std::uint64_t t() const { return t_; }
  const Digest& h() const { return h_; }
  std::uint64_t last_q() const { return last_q_; }
  std::size_t group_size() const { return v_.size(); }
  const std::map<std::uint32_t, VEntry>& v_entries() const { return v_; }
  const AppFunctionality& app() const { return *app_; }

 private:
  enum class Phase { kCreated, kAwaitingBootstrap, kReady, kHalted };

  ProcessedOp process_plaintext(ByteSpan plain);
  ProcessedOp process_invoke(const InvokeMessage& m);
  ProcessedOp process_admin(const AdminCommand& cmd);
  AdminStatus apply_admin(const AdminCommand& cmd);
  [[noreturn]] void violation(const char* kind, const std::string& what);
  void require_ready() const;

  PlatformIdentity platform_;
  Bytes program_id_;
  std::unique_ptr<AppFunctionality> app_;

  Phase phase_ = Phase::kCreated;
  std::string halt_reason_;

  std::uint64_t t_ = 0;
  Digest h_ = kDigestZero;
  std::map<std::uint32_t, VEntry> v_;
  std::uint64_t last_q_ = 0;

  bool skip_view_checks_ = false;

  SymKey k_s_;  // sealing key, from get_key
  SymKey k_p_;  // protocol-state key, admin-generated, portable
  SymKey k_c_;  // communication key, shared with the client group
};

}  // namespace lcm

#endif  // LCM_CONTEXT_HPP_
