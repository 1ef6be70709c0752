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

#ifndef LCM_SIM_HPP_
#define LCM_SIM_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcm/crypto.hpp"
#include "lcm/trace.hpp"
#include "lcm/workload.hpp"

// The untrusted server S and its environment, as a deterministic
// discrete-event simulation. The correct personality forwards messages
// FIFO, persists every sealed blob, and restarts the context after
// crashes. The adversarial personality executes a script of the attacks
// the threat model grants the server. The adversary holds no keys: it can
// only drop, delay, duplicate, reorder and re-route ciphertexts it has
// seen, and substitute stored blobs.

namespace lcm {

enum class ActionKind {
  kDropInvoke,       // drop the n-th invoke arrival
  kReplayInvoke,     // deliver a copy of the n-th invoke arrival later
  kDropReply,        // drop the n-th reply send
  kReplayReply,      // deliver a copy of the n-th reply later
  kReorderInvokes,   // hold arrivals n..n+window-1, release reversed
  kRestartFrom,      // after the n-th execution, restart from `version`
  kFork,             // after the n-th execution, partition the clients
  kRouteClient,      // after the n-th execution, re-route one client
  kCrashBeforeStore, // crash consuming the n-th batch, before processing
  kCrashAfterStore,  // crash after persisting the n-th batch's state
  kSubstituteBlob,   // after the n-th execution, point the store at `version`
  kMigrate,          // after the n-th execution, migrate to a new platform
  kDropRepliesTo,    // persistently drop every reply to one client
};

const char* action_kind_name(ActionKind k);

struct AdversaryAction {
  ActionKind kind = ActionKind::kDropInvoke;
  std::uint64_t n = 1;        // trigger occurrence (1-based)
  std::uint64_t version = 0;  // kRestartFrom / kSubstituteBlob / kFork
  std::uint64_t delay_ms = 50;       // replay delivery delay
  std::uint32_t window = 2;          // kReorderInvokes
  std::uint32_t client = 0;          // kRouteClient
  std::uint32_t target_slot = 0;     // kRouteClient: destination partition
  std::vector<std::vector<std::uint32_t>> partitions;  // kFork
  std::vector<std::uint64_t> versions;                 // kFork, per partition

  std::string describe() const;
};

struct AdversaryScript {
  std::vector<AdversaryAction> actions;
  bool empty() const { return actions.empty(); }
};

struct SimConfig {
  std::string name = "run";
  std::uint32_t n_clients = 3;
  WorkloadSpec workload;
  std::uint32_t batch_size = 1;
  bool sync_store = false;
  std::uint64_t retry_timeout_ms = 100;
  std::uint64_t dummy_period_ms = 0;  // 0 disables dummy operations
  std::uint64_t max_sim_ms = 30'000;
  std::uint64_t seed = 1;
  /// Optional per-client operation counts (truncates the generated
  /// scripts); empty means every client runs workload.ops_per_client.
  std::vector<std::uint32_t> client_ops;

  // Test instrumentation: lets a test build produce the traces an
  // undetected attack would leave. Never set outside checker tests.
  bool disable_context_checks = false;
};

struct ViolationRecord {
  std::string party;  // "client:2" or "context:1"
  std::string kind;
  std::uint64_t ts = 0;
};

struct LineageFinal {
  std::uint32_t lineage = 0;
  bool live = false;
  bool halted = false;
  std::string halt_reason;
  std::uint64_t t = 0;
  Digest h;
  Bytes app_state;
  std::uint64_t exec_count = 0;  // exec_F calls in this lineage's app
};

struct RunResult {
  Trace trace;
  std::vector<ViolationRecord> violations;
  std::map<std::uint32_t, std::uint64_t> completed_per_client;
  bool all_clients_done = false;
  std::vector<LineageFinal> lineages;
  std::uint64_t total_execs = 0;  // operations executed across lineages
};

RunResult run_simulation(const SimConfig& cfg, const AdversaryScript& script);

inline RunResult run_correct(const SimConfig& cfg) {
  return run_simulation(cfg, AdversaryScript{});
}

}  // namespace lcm

#endif  // LCM_SIM_HPP_
