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

#include "lcm/sim.hpp"

#include <deque>
#include <functional>
#include <memory>
#include <queue>
#include <sstream>

#include "lcm/client.hpp"
#include "lcm/context.hpp"

namespace lcm {

const char* action_kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::kDropInvoke: return "drop_invoke";
    case ActionKind::kReplayInvoke: return "replay_invoke";
    case ActionKind::kDropReply: return "drop_reply";
    case ActionKind::kReplayReply: return "replay_reply";
    case ActionKind::kReorderInvokes: return "reorder_invokes";
    case ActionKind::kRestartFrom: return "restart_from";
    case ActionKind::kFork: return "fork";
    case ActionKind::kRouteClient: return "route_client";
    case ActionKind::kCrashBeforeStore: return "crash_before_store";
    case ActionKind::kCrashAfterStore: return "crash_after_store";
    case ActionKind::kSubstituteBlob: return "substitute_blob";
    case ActionKind::kMigrate: return "migrate";
    case ActionKind::kDropRepliesTo: return "drop_replies_to";
  }
  return "?";
}

std::string AdversaryAction::describe() const {
  std::ostringstream os;
  os << action_kind_name(kind) << " n=" << n;
  switch (kind) {
    case ActionKind::kRestartFrom:
    case ActionKind::kSubstituteBlob:
      os << " version=" << version;
      break;
    case ActionKind::kReplayInvoke:
    case ActionKind::kReplayReply:
      os << " delay=" << delay_ms;
      break;
    case ActionKind::kReorderInvokes:
      os << " window=" << window;
      break;
    case ActionKind::kRouteClient:
      os << " client=" << client << " slot=" << target_slot;
      break;
    case ActionKind::kFork:
      os << " parts=" << partitions.size();
      break;
    default:
      break;
  }
  return os.str();
}

namespace {

constexpr std::uint64_t kNetDelayMs = 1;
constexpr std::uint64_t kRestartDelayMs = 10;

class Simulator {
 public:
  Simulator(const SimConfig& cfg, const AdversaryScript& script)
      : cfg_(cfg), script_(script), rng_(cfg.seed) {
    cfg_.workload.validate();
    if (cfg_.n_clients < 1) throw ConfigError("need at least one client");
    if (cfg_.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  }

  RunResult run();

 private:
  // ---- event queue ------------------------------------------------------
  struct Event {
    std::uint64_t time;
    std::uint64_t seq;
    std::function<void()> fn;
  };
  struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  void at(std::uint64_t delay, std::function<void()> fn) {
    queue_.push(Event{now_ + delay, next_seq_++, std::move(fn)});
  }

  // ---- server-side state -------------------------------------------------
  struct Slot {
    std::uint32_t lineage = 0;
    std::unique_ptr<TrustedContext> ctx;  // null while restarting
    std::uint32_t epoch = 0;
    bool dead = false;  // absorbing: lineage halted or superseded
    std::vector<SealedBlobPair> versions;
    std::vector<std::uint64_t> version_t;  // state sequence number per version
    std::size_t store_ptr = 0;             // version the next load returns
    std::deque<std::pair<std::uint32_t, Envelope>> inbox;  // (from, msg)
    bool poll_scheduled = false;
    std::shared_ptr<PlatformIdentity> platform;
    std::uint64_t exec_count = 0;
  };

  struct ClientAgent {
    std::unique_ptr<LcmClient> proto;
    std::vector<KvsOperation> script;
    std::size_t next_op = 0;
    bool waiting = false;
    bool pending_is_dummy = false;
    std::uint64_t op_generation = 0;
    std::uint64_t completed = 0;
    bool done = false;
    bool halted = false;
    Bytes durable_snapshot;
  };

  std::unique_ptr<TrustedContext> make_context(
      std::shared_ptr<PlatformIdentity> platform) {
    return std::make_unique<TrustedContext>(*platform, program_id_,
                                            std::make_unique<KvsApp>(),
                                            cfg_.disable_context_checks);
  }

  Slot& slot_of(std::uint32_t client) { return *slots_[route_.at(client)]; }

  bool all_real_ops_done() const {
    for (const auto& [id, a] : clients_) {
      if (!a.halted && a.next_op < a.script.size()) return false;
    }
    return true;
  }

  bool should_stop() const {
    bool all_settled = true;
    for (const auto& [id, a] : clients_) {
      if (!a.halted && !(a.done && !a.waiting)) all_settled = false;
    }
    // delayed replays may still be due; let them land
    if (all_settled) return in_flight_replies_ == 0;
    bool any_live_slot = false;
    for (const auto& s : slots_) {
      if (!s->dead) any_live_slot = true;
    }
    return !any_live_slot && in_flight_replies_ == 0;
  }

  // ---- trace helpers ----------------------------------------------------
  TraceEvent& emit(EventKind kind) {
    TraceEvent e;
    e.kind = kind;
    e.ts = now_;
    trace_.events.push_back(std::move(e));
    return trace_.events.back();
  }

  void emit_violation(const std::string& party, const std::string& kind) {
    TraceEvent& e = emit(EventKind::kViolation);
    e.party = party;
    e.reason = kind;
    violations_.push_back({party, kind, now_});
  }

  // ---- adversary --------------------------------------------------------
  /// Consumes and returns the first unused action of `kind` whose trigger
  /// index matches `n`.
  std::optional<AdversaryAction> take_action(ActionKind kind, std::uint64_t n) {
    for (std::size_t i = 0; i < script_.actions.size(); ++i) {
      if (used_[i]) continue;
      const AdversaryAction& a = script_.actions[i];
      if (a.kind == kind && a.n == n) {
        used_[i] = true;
        return a;
      }
    }
    return std::nullopt;
  }

  // ---- protocol flow ----------------------------------------------------
  void setup();
  void client_send_next(std::uint32_t id);
  void client_send_dummy(std::uint32_t id);
  void send_invoke(std::uint32_t id, const Envelope& env, bool is_retry);
  void retry_check(std::uint32_t id, std::uint64_t generation);
  void host_receive_invoke(std::uint32_t from, Envelope env);
  void enqueue_to_slot(std::uint32_t from, Envelope env);
  void schedule_poll(std::size_t slot_idx);
  void poll(std::size_t slot_idx);
  void dispatch_reply(std::uint32_t to, Envelope env, std::uint32_t lineage);
  void client_receive_reply(std::uint32_t to, Envelope env,
                            std::uint32_t lineage);
  void store_blob(Slot& slot, SealedBlobPair blob, std::uint64_t state_t);
  void crash_restart(Slot& slot, const char* reason);
  void do_restart(std::size_t slot_idx, const char* reason);
  std::size_t branch_slot(std::size_t parent_idx, std::uint64_t version);
  void apply_lifecycle(const AdversaryAction& a, std::size_t slot_idx);
  void after_exec_triggers(std::size_t slot_idx,
                           std::vector<AdversaryAction>& deferred);

  // ---- members ----------------------------------------------------------
  SimConfig cfg_;
  AdversaryScript script_;
  std::vector<bool> used_;
  Rng rng_;
  Trace trace_;

  std::uint64_t now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;

  Bytes program_id_ = to_bytes("lcm-kvs");
  SymKey k_p_, k_c_;

  std::vector<std::unique_ptr<Slot>> slots_;
  std::uint32_t next_lineage_ = 1;
  std::map<std::uint32_t, std::size_t> route_;  // client -> slot index
  std::map<std::uint32_t, ClientAgent> clients_;

  std::uint64_t invoke_arrivals_ = 0;
  std::uint64_t reply_sends_ = 0;
  std::uint64_t batches_ = 0;
  std::uint64_t execs_ = 0;
  std::uint64_t in_flight_replies_ = 0;

  // reorder hold buffer
  bool reorder_active_ = false;
  std::uint64_t reorder_end_ = 0;
  std::vector<std::pair<std::uint32_t, Envelope>> reorder_buf_;

  std::vector<ViolationRecord> violations_;
};

void Simulator::setup() {
  used_.assign(script_.actions.size(), false);
  trace_.name = cfg_.name;
  trace_.n_clients = cfg_.n_clients;
  trace_.seed = cfg_.seed;

  k_p_ = SymKey::random();
  k_c_ = SymKey::random();

  auto slot = std::make_unique<Slot>();
  slot->lineage = next_lineage_++;
  slot->platform =
      std::make_shared<PlatformIdentity>(PlatformIdentity::random("platform-0"));
  slot->ctx = make_context(slot->platform);
  slot->ctx->init(std::nullopt);
  slot->epoch = 1;

  std::vector<std::uint32_t> group;
  for (std::uint32_t id = 1; id <= cfg_.n_clients; ++id) group.push_back(id);
  SealedBlobPair blob0 = slot->ctx->bootstrap(k_p_, k_c_, group);

  TraceEvent& boot = emit(EventKind::kContextRestart);
  boot.lineage = slot->lineage;
  boot.epoch = slot->epoch;
  boot.reason = "boot";

  store_blob(*slot, std::move(blob0), 0);
  slots_.push_back(std::move(slot));

  auto scripts = generate_scripts(cfg_.workload, cfg_.n_clients, cfg_.seed);
  for (std::uint32_t id = 1; id <= cfg_.n_clients; ++id) {
    ClientAgent agent;
    agent.proto = std::make_unique<LcmClient>(id, k_c_);
    agent.script = std::move(scripts[id - 1]);
    if (id <= cfg_.client_ops.size() &&
        cfg_.client_ops[id - 1] < agent.script.size()) {
      agent.script.resize(cfg_.client_ops[id - 1]);
    }
    clients_.emplace(id, std::move(agent));
    route_[id] = 0;
    // staggered start keeps interleavings varied but deterministic
    at(1 + (id - 1), [this, id] { client_send_next(id); });
  }
}

void Simulator::client_send_next(std::uint32_t id) {
  ClientAgent& a = clients_.at(id);
  if (a.halted || a.waiting || a.done) return;
  if (a.next_op < a.script.size()) {
    OperationRequest req;
    req.op_bytes = a.script[a.next_op].encode();
    a.pending_is_dummy = false;
    send_invoke(id, a.proto->invoke(req), false);
    return;
  }
  if (cfg_.dummy_period_ms > 0 && !all_real_ops_done()) {
    at(cfg_.dummy_period_ms, [this, id] { client_send_dummy(id); });
    return;
  }
  a.done = true;
}

void Simulator::client_send_dummy(std::uint32_t id) {
  ClientAgent& a = clients_.at(id);
  if (a.halted || a.waiting || a.done) return;
  if (all_real_ops_done()) {
    a.done = true;
    return;
  }
  a.pending_is_dummy = true;
  send_invoke(id, a.proto->invoke(OperationRequest::dummy()), false);
}

void Simulator::send_invoke(std::uint32_t id, const Envelope& env,
                            bool is_retry) {
  ClientAgent& a = clients_.at(id);
  a.waiting = true;
  if (!is_retry) ++a.op_generation;
  std::uint64_t generation = a.op_generation;

  TraceEvent& e = emit(EventKind::kInvoke);
  e.client_id = id;
  e.t_c = a.proto->t_c();
  e.op = a.proto->pending()->op_bytes;
  e.is_dummy = a.proto->pending()->is_dummy;
  e.is_retry = is_retry;

  at(kNetDelayMs, [this, id, env] { host_receive_invoke(id, env); });
  at(cfg_.retry_timeout_ms, [this, id, generation] { retry_check(id, generation); });
}

void Simulator::retry_check(std::uint32_t id, std::uint64_t generation) {
  ClientAgent& a = clients_.at(id);
  if (a.halted || !a.waiting || a.op_generation != generation) return;
  send_invoke(id, a.proto->retry(), true);
}

void Simulator::host_receive_invoke(std::uint32_t from, Envelope env) {
  std::uint64_t n = ++invoke_arrivals_;

  if (auto act = take_action(ActionKind::kDropInvoke, n)) {
    return;
  }
  if (auto act = take_action(ActionKind::kReplayInvoke, n)) {
    Envelope copy = env;
    at(act->delay_ms, [this, from, copy] { host_receive_invoke(from, copy); });
  }
  if (auto act = take_action(ActionKind::kReorderInvokes, n)) {
    reorder_active_ = true;
    reorder_end_ = n + act->window - 1;
    reorder_buf_.clear();
  }
  if (reorder_active_) {
    reorder_buf_.emplace_back(from, std::move(env));
    if (n >= reorder_end_) {
      reorder_active_ = false;
      for (auto it = reorder_buf_.rbegin(); it != reorder_buf_.rend(); ++it) {
        enqueue_to_slot(it->first, std::move(it->second));
      }
      reorder_buf_.clear();
    }
    return;
  }
  enqueue_to_slot(from, std::move(env));
}

void Simulator::enqueue_to_slot(std::uint32_t from, Envelope env) {
  std::size_t idx = route_.at(from);
  Slot& slot = *slots_[idx];
  if (slot.dead) return;  // black hole; DoS is out of scope
  slot.inbox.emplace_back(from, std::move(env));
  schedule_poll(idx);
}

void Simulator::schedule_poll(std::size_t slot_idx) {
  Slot& slot = *slots_[slot_idx];
  if (slot.poll_scheduled) return;
  slot.poll_scheduled = true;
  at(0, [this, slot_idx] { poll(slot_idx); });
}

void Simulator::store_blob(Slot& slot, SealedBlobPair blob,
                           std::uint64_t state_t) {
  slot.versions.push_back(std::move(blob));
  slot.version_t.push_back(state_t);
  slot.store_ptr = slot.versions.size() - 1;
  TraceEvent& e = emit(EventKind::kStore);
  e.lineage = slot.lineage;
  e.version = slot.store_ptr;
  e.t = state_t;
}

void Simulator::poll(std::size_t slot_idx) {
  Slot& slot = *slots_[slot_idx];
  slot.poll_scheduled = false;
  if (slot.dead || !slot.ctx || !slot.ctx->ready() || slot.inbox.empty()) return;

  std::vector<Envelope> batch;
  while (!slot.inbox.empty() && batch.size() < cfg_.batch_size) {
    batch.push_back(std::move(slot.inbox.front().second));
    slot.inbox.pop_front();
  }
  std::uint64_t b = ++batches_;

  if (take_action(ActionKind::kCrashBeforeStore, b)) {
    // Crash consuming the batch before the context processes it: the
    // operations are lost and nothing is persisted; clients will retry.
    crash_restart(slot, "crash_before_store");
    return;
  }
  bool crash_after = take_action(ActionKind::kCrashAfterStore, b).has_value();

  BatchResult res = slot.ctx->handle_batch(batch);

  std::vector<AdversaryAction> deferred;
  for (const ProcessedOp& op : res.ops) {
    if (op.is_admin || op.cached) continue;
    TraceEvent& e = emit(EventKind::kExec);
    e.lineage = slot.lineage;
    e.epoch = slot.epoch;
    e.client_id = op.client_id;
    e.t = op.t;
    e.q = op.q;
    e.t_c = op.t_c;
    e.h = op.h;
    e.op = op.op_bytes;
    e.result = op.result;
    e.is_dummy = op.is_dummy;
    if (op.executed) ++slot.exec_count;
    ++execs_;
    after_exec_triggers(slot_idx, deferred);
  }

  store_blob(slot, std::move(res.blob), slot.ctx->t());

  if (res.halted) {
    emit_violation("context:" + std::to_string(slot.lineage),
                   res.violation_kind);
    slot.dead = true;
    slot.inbox.clear();
  }

  if (crash_after) {
    // Persisted, but the replies are lost with the crash.
    crash_restart(slot, "crash_after_store");
    return;
  }

  for (const ProcessedOp& op : res.ops) {
    dispatch_reply(op.client_id, op.reply, slot.lineage);
  }

  for (const AdversaryAction& act : deferred) {
    apply_lifecycle(act, slot_idx);
  }

  if (!slot.dead && slot.ctx && !slot.inbox.empty()) schedule_poll(slot_idx);
}

void Simulator::after_exec_triggers(std::size_t slot_idx,
                                    std::vector<AdversaryAction>& deferred) {
  // Lifecycle actions fire between batches: the batch that crossed the
  // trigger finishes delivering its replies first.
  for (ActionKind k : {ActionKind::kRestartFrom, ActionKind::kFork,
                       ActionKind::kRouteClient, ActionKind::kSubstituteBlob,
                       ActionKind::kMigrate}) {
    if (auto act = take_action(k, execs_)) deferred.push_back(*act);
  }
  (void)slot_idx;
}

void Simulator::dispatch_reply(std::uint32_t to, Envelope env,
                               std::uint32_t lineage) {
  std::uint64_t n = ++reply_sends_;
  for (const AdversaryAction& a : script_.actions) {
    if (a.kind == ActionKind::kDropRepliesTo && a.client == to) return;
  }
  if (take_action(ActionKind::kDropReply, n)) return;
  if (auto act = take_action(ActionKind::kReplayReply, n)) {
    Envelope copy = env;
    ++in_flight_replies_;
    at(act->delay_ms, [this, to, copy, lineage] {
      --in_flight_replies_;
      client_receive_reply(to, copy, lineage);
    });
  }
  ++in_flight_replies_;
  at(kNetDelayMs, [this, to, env, lineage] {
    --in_flight_replies_;
    client_receive_reply(to, env, lineage);
  });
}

void Simulator::client_receive_reply(std::uint32_t to, Envelope env,
                                     std::uint32_t lineage) {
  ClientAgent& a = clients_.at(to);
  if (a.halted) return;
  bool was_dummy = a.pending_is_dummy;
  try {
    CompletedOp done = a.proto->handle_reply(env);
    TraceEvent& e = emit(EventKind::kResponse);
    e.client_id = to;
    e.t = done.t;
    e.q = done.q;
    e.h = a.proto->h_c();
    e.result = done.result;
    e.is_dummy = was_dummy;
    e.lineage = lineage;

    a.waiting = false;
    ++a.op_generation;  // invalidates the retry timer
    ++a.completed;
    if (!was_dummy) ++a.next_op;
    a.pending_is_dummy = false;
    a.durable_snapshot = a.proto->snapshot();
    at(kNetDelayMs, [this, to] { client_send_next(to); });
  } catch (const ProtocolViolation& v) {
    a.halted = true;
    a.waiting = false;
    emit_violation("client:" + std::to_string(to), v.kind());
  }
}

void Simulator::crash_restart(Slot& slot, const char* reason) {
  slot.ctx.reset();  // the epoch's memory is gone
  std::size_t idx = 0;
  for (; idx < slots_.size(); ++idx) {
    if (slots_[idx].get() == &slot) break;
  }
  std::string why = reason;
  at(kRestartDelayMs, [this, idx, why] { do_restart(idx, why.c_str()); });
}

void Simulator::do_restart(std::size_t slot_idx, const char* reason) {
  Slot& slot = *slots_[slot_idx];
  if (slot.dead) return;
  slot.ctx = make_context(slot.platform);
  ++slot.epoch;

  TraceEvent& restart = emit(EventKind::kContextRestart);
  restart.lineage = slot.lineage;
  restart.epoch = slot.epoch;
  restart.reason = reason;
  restart.version = slot.store_ptr;

  const SealedBlobPair& blob = slot.versions.at(slot.store_ptr);
  TraceEvent& load = emit(EventKind::kLoad);
  load.lineage = slot.lineage;
  load.epoch = slot.epoch;
  load.version = slot.store_ptr;
  load.t = slot.version_t.at(slot.store_ptr);

  try {
    slot.ctx->init(blob);
  } catch (const ProtocolViolation& v) {
    emit_violation("context:" + std::to_string(slot.lineage), v.kind());
    slot.dead = true;
    slot.inbox.clear();
    return;
  }
  if (!slot.inbox.empty()) schedule_poll(slot_idx);
}

std::size_t Simulator::branch_slot(std::size_t parent_idx,
                                   std::uint64_t version) {
  Slot& parent = *slots_[parent_idx];
  auto child = std::make_unique<Slot>();
  child->lineage = next_lineage_++;
  child->platform = parent.platform;
  std::uint64_t v = std::min<std::uint64_t>(version, parent.versions.size() - 1);
  child->versions.assign(parent.versions.begin(),
                         parent.versions.begin() + v + 1);
  child->version_t.assign(parent.version_t.begin(),
                          parent.version_t.begin() + v + 1);
  child->store_ptr = v;
  child->epoch = 0;

  TraceEvent& e = emit(EventKind::kFork);
  e.lineage = child->lineage;
  e.parent_lineage = parent.lineage;
  e.branch_t = child->version_t.back();
  e.version = v;

  slots_.push_back(std::move(child));
  return slots_.size() - 1;
}

void Simulator::apply_lifecycle(const AdversaryAction& a,
                                std::size_t slot_idx) {
  Slot& slot = *slots_[slot_idx];
  switch (a.kind) {
    case ActionKind::kSubstituteBlob:
      if (!slot.versions.empty()) {
        slot.store_ptr =
            std::min<std::size_t>(a.version, slot.versions.size() - 1);
      }
      return;
    case ActionKind::kRestartFrom: {
      std::uint64_t latest = slot.versions.size() - 1;
      if (a.version >= latest) {
        // restart without rollback: same lineage, new epoch
        slot.ctx.reset();
        slot.store_ptr = latest;
        at(kRestartDelayMs, [this, slot_idx] { do_restart(slot_idx, "restart"); });
        return;
      }
      std::size_t child_idx = branch_slot(slot_idx, a.version);
      Slot& child = *slots_[child_idx];
      // the rolled-back instance replaces the old one entirely
      for (auto& [cid, sidx] : route_) {
        if (sidx == slot_idx) sidx = child_idx;
      }
      child.inbox = std::move(slot.inbox);
      slot.ctx.reset();
      slot.dead = true;
      at(kRestartDelayMs,
         [this, child_idx] { do_restart(child_idx, "rollback"); });
      return;
    }
    case ActionKind::kFork: {
      std::vector<std::size_t> children;
      for (std::size_t p = 0; p < a.partitions.size(); ++p) {
        std::uint64_t v = p < a.versions.size() ? a.versions[p]
                                                : slot.versions.size() - 1;
        std::size_t child_idx = branch_slot(slot_idx, v);
        children.push_back(child_idx);
        for (std::uint32_t cid : a.partitions[p]) {
          if (route_.count(cid)) route_[cid] = child_idx;
        }
      }
      // re-distribute in-flight messages to the senders' new instances
      for (auto& [from, env] : slot.inbox) {
        std::size_t tgt = route_.at(from);
        if (tgt != slot_idx) slots_[tgt]->inbox.emplace_back(from, std::move(env));
      }
      slot.inbox.clear();
      slot.ctx.reset();
      slot.dead = true;
      for (std::size_t child_idx : children) {
        at(kRestartDelayMs, [this, child_idx] { do_restart(child_idx, "fork"); });
      }
      return;
    }
    case ActionKind::kRouteClient: {
      if (!route_.count(a.client)) return;
      std::size_t tgt = a.target_slot;
      if (tgt >= slots_.size()) return;
      route_[a.client] = tgt;
      return;
    }
    case ActionKind::kMigrate: {
      if (!slot.ctx || !slot.ctx->ready()) return;
      auto platform = std::make_shared<PlatformIdentity>(PlatformIdentity::random(
          "platform-" + std::to_string(slot.lineage) + "-" +
          std::to_string(slot.epoch + 1)));
      auto fresh = make_context(platform);
      SealedBlobPair initial = slot.ctx->migrate_out(*fresh);
      slot.platform = platform;
      slot.ctx = std::move(fresh);
      ++slot.epoch;
      TraceEvent& e = emit(EventKind::kContextRestart);
      e.lineage = slot.lineage;
      e.epoch = slot.epoch;
      e.reason = "migrate";
      store_blob(slot, std::move(initial), slot.ctx->t());
      if (!slot.inbox.empty()) schedule_poll(slot_idx);
      return;
    }
    default:
      return;
  }
}

RunResult Simulator::run() {
  setup();
  while (!queue_.empty()) {
    if (now_ > cfg_.max_sim_ms || should_stop()) break;
    Event ev = queue_.top();
    queue_.pop();
    if (ev.time > cfg_.max_sim_ms) break;
    now_ = ev.time;
    ev.fn();
  }

  RunResult out;
  out.violations = violations_;
  bool all_done = true;
  for (auto& [id, a] : clients_) {
    out.completed_per_client[id] = a.completed;
    if (!(a.done && !a.waiting && !a.halted)) all_done = false;
  }
  out.all_clients_done = all_done;
  out.total_execs = execs_;
  for (auto& s : slots_) {
    LineageFinal f;
    f.lineage = s->lineage;
    f.live = !s->dead && s->ctx != nullptr;
    f.halted = s->ctx && s->ctx->halted();
    if (s->ctx) {
      f.halt_reason = s->ctx->halt_reason();
      f.t = s->ctx->t();
      f.h = s->ctx->h();
      f.app_state = s->ctx->app().serialize_state();
    }
    f.exec_count = s->exec_count;
    out.lineages.push_back(std::move(f));
  }
  out.trace = std::move(trace_);
  return out;
}

}  // namespace

RunResult run_simulation(const SimConfig& cfg, const AdversaryScript& script) {
  Simulator sim(cfg, script);
  return sim.run();
}

}  // namespace lcm
