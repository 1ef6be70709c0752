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

// Acceptance suite. Each criterion prints one pass/fail line; the binary
// exits nonzero if any criterion fails. Run from the repository root so
// the scenario catalog resolves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "lcm/bench.hpp"
#include "lcm/checker.hpp"
#include "lcm/client.hpp"
#include "lcm/context.hpp"
#include "lcm/fuzz.hpp"
#include "lcm/scenario.hpp"

using namespace lcm;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;
  double secs = 0;
};

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

Criterion run_criterion(const std::string& name,
                        const std::function<void(Criterion&)>& body) {
  Criterion c;
  c.name = name;
  auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.secs = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

SimConfig make_config(std::uint32_t clients, std::uint32_t ops,
                      std::uint64_t seed) {
  SimConfig cfg;
  cfg.name = "acceptance";
  cfg.n_clients = clients;
  cfg.workload.ops_per_client = ops;
  cfg.seed = seed;
  return cfg;
}

Bytes replay_lineage(const Trace& trace, std::uint32_t lineage) {
  std::map<std::uint32_t, std::pair<std::uint32_t, std::uint64_t>> parents;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == EventKind::kFork) {
      parents[e.lineage] = {e.parent_lineage, e.branch_t};
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint64_t>> path;
  std::uint32_t cur = lineage;
  std::uint64_t upto = ~0ull;
  while (true) {
    path.emplace_back(cur, upto);
    auto it = parents.find(cur);
    if (it == parents.end()) break;
    upto = it->second.second;
    cur = it->second.first;
  }
  std::reverse(path.begin(), path.end());
  KvsApp app;
  for (const auto& [lin, limit] : path) {
    for (const TraceEvent& e : trace.events) {
      if (e.kind == EventKind::kExec && e.lineage == lin && e.t <= limit &&
          !e.is_dummy) {
        app.exec(e.op);
      }
    }
  }
  return app.serialize_state();
}

// ---- A1 -------------------------------------------------------------------
// Rollback detection: restart from every historical version of a 3-client
// 60-op run; the first post-rollback operation of any client whose view is
// ahead must trigger a violation. Zero false positives on the controls.
Criterion a1_rollback() {
  return run_criterion("A1 rollback-detection", [](Criterion& c) {
    Check ck;
    const std::uint32_t clients = 3, ops = 24;  // 60 ops before the rollback
    std::uint64_t detected = 0;

    for (std::uint64_t version = 0; version < 60; ++version) {
      SimConfig cfg = make_config(clients, ops, 500 + version);
      cfg.max_sim_ms = 4000;
      AdversaryAction rollback;
      rollback.kind = ActionKind::kRestartFrom;
      rollback.n = 60;
      rollback.version = version;
      RunResult run = run_simulation(cfg, {{rollback}});

      // rolled-back per-client state: last sequence number <= version
      std::map<std::uint32_t, std::uint64_t> rolled;
      std::map<std::uint32_t, std::uint64_t> completed_t;
      std::uint32_t new_lineage = 0;
      std::uint64_t violation_ts = ~0ull;
      bool qualifying_exec_before_detection = false;

      for (const TraceEvent& e : run.trace.events) {
        if (e.kind == EventKind::kExec && e.lineage == 1 && e.t <= version) {
          rolled[e.client_id] = e.t;
        }
        if (e.kind == EventKind::kFork) new_lineage = e.lineage;
        if (e.kind == EventKind::kViolation) {
          violation_ts = std::min(violation_ts, e.ts);
        }
      }
      for (const TraceEvent& e : run.trace.events) {
        if (e.kind == EventKind::kResponse && e.ts < violation_ts) {
          completed_t[e.client_id] = std::max(completed_t[e.client_id], e.t);
        }
        if (e.kind == EventKind::kExec && new_lineage != 0 &&
            e.lineage == new_lineage && e.ts <= violation_ts) {
          // an execution on the rolled-back lineage by a client whose view
          // was ahead would be an undetected rollback
          if (completed_t[e.client_id] > rolled[e.client_id]) {
            qualifying_exec_before_detection = true;
          }
        }
      }

      ck.require(!run.violations.empty(),
                 "version " + std::to_string(version) + ": no detection");
      ck.require(!qualifying_exec_before_detection,
                 "version " + std::to_string(version) +
                     ": ahead client served without detection");
      TraceVerdict verdict = evaluate_trace(run.trace);
      ck.require(!verdict.undetected_inconsistency,
                 "version " + std::to_string(version) +
                     ": undetected inconsistency");
      if (!run.violations.empty()) ++detected;
    }

    // controls: plain run, and a restart from the latest version
    SimConfig control = make_config(clients, ops, 999);
    RunResult plain = run_correct(control);
    ck.require(plain.violations.empty() && plain.all_clients_done,
               "control run raised a violation or stalled");
    AdversaryAction benign;
    benign.kind = ActionKind::kRestartFrom;
    benign.n = 60;
    benign.version = 60;
    RunResult restart = run_simulation(control, {{benign}});
    ck.require(restart.violations.empty() && restart.all_clients_done,
               "restart-from-latest raised a violation or stalled");

    c.pass = ck.ok;
    c.detail = ck.ok ? std::to_string(detected) +
                           "/60 rollbacks detected, 0 false positives"
                     : ck.why.str();
  });
}

// ---- A2 -------------------------------------------------------------------
Criterion a2_forks() {
  return run_criterion("A2 fork-detection-at-join", [](Criterion& c) {
    struct Entry {
      const char* file;
      bool expect_detection;
    };
    const Entry catalog[] = {
        {"scenarios/fork_n2_split.scn", false},
        {"scenarios/fork_n2_join.scn", true},
        {"scenarios/fork_n3_minority.scn", false},
        {"scenarios/fork_n3_join.scn", true},
        {"scenarios/fork_n3_majority_join.scn", true},
        {"scenarios/fork_n3_stale.scn", true},
        {"scenarios/fork_n3_threeway.scn", false},
        {"scenarios/fork_n5_split.scn", false},
        {"scenarios/fork_n5_minority.scn", false},
        {"scenarios/fork_n5_join.scn", true},
        {"scenarios/fork_n5_threeway_join.scn", true},
    };
    Check ck;
    std::size_t ran = 0;
    for (const Entry& entry : catalog) {
      Scenario sc = load_scenario(entry.file);
      RunResult run = run_simulation(sc.config, sc.script);
      TraceVerdict verdict = evaluate_trace(run.trace);
      std::string tag = sc.config.name + ": ";
      ck.require(!verdict.undetected_inconsistency,
                 tag + "undetected inconsistency");
      if (entry.expect_detection) {
        ck.require(!run.violations.empty(), tag + "join was not detected");
      } else {
        ck.require(run.violations.empty(), tag + "false positive");
        // forever-forked: post-fork operations of minority partitions
        // cease to become stable
        StabilityReport stab = stability_oracle(run.trace);
        for (const AdversaryAction& a : sc.script.actions) {
          if (a.kind != ActionKind::kFork) continue;
          for (std::size_t p = 0; p < a.partitions.size(); ++p) {
            if (a.partitions[p].size() * 2 > sc.config.n_clients) continue;
            std::set<std::uint32_t> minority(a.partitions[p].begin(),
                                             a.partitions[p].end());
            for (const StabilityEntry& e : stab.ops) {
              if (minority.count(e.client) && e.t > a.versions[p]) {
                ck.require(!e.stable, tag + "minority op became stable");
              }
            }
          }
        }
      }
      ++ran;
    }
    c.pass = ck.ok;
    c.detail = ck.ok ? std::to_string(ran) + " fork scripts, 0 undetected"
                     : ck.why.str();
  });
}

// ---- A3 -------------------------------------------------------------------
Criterion a3_fuzz() {
  return run_criterion("A3 fuzzed-soundness-completeness", [](Criterion& c) {
    Check ck;
    std::uint32_t threads = std::max(2u, std::thread::hardware_concurrency());

    FuzzOptions attack;
    attack.first_seed = 10'000;
    attack.runs = 1000;
    attack.attack_budget = 8;
    attack.n_clients = 3;
    attack.ops_per_client = 33;
    attack.threads = threads;
    FuzzSummary hostile = run_fuzz(attack);
    ck.require(hostile.undetected_inconsistencies == 0,
               "undetected inconsistencies under attack: " +
                   std::to_string(hostile.undetected_inconsistencies));

    FuzzOptions control = attack;
    control.first_seed = 20'000;
    control.attack_budget = 0;
    FuzzSummary calm = run_fuzz(control);
    ck.require(calm.violations_total == 0,
               "violations on a correct server: " +
                   std::to_string(calm.violations_total));
    ck.require(calm.incomplete_runs == 0,
               "stalled correct-server runs: " +
                   std::to_string(calm.incomplete_runs));
    ck.require(calm.undetected_inconsistencies == 0, "checker flagged control");

    c.pass = ck.ok;
    if (ck.ok) {
      c.detail = "1000 attack runs (" +
                 std::to_string(hostile.runs_with_detection) +
                 " with detections) + 1000 control runs, 0 undetected";
    } else {
      c.detail = ck.why.str();
    }
  });
}

// ---- A4 -------------------------------------------------------------------
Criterion a4_stability() {
  return run_criterion("A4 stability-equivalence", [](Criterion& c) {
    Check ck;
    std::uint64_t replies = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      SimConfig cfg = make_config(3, 33, 20'000 + seed);  // A3's control set
      RunResult run = run_correct(cfg);
      QCrossCheck q = check_reported_stability(run.trace);
      replies += q.checked;
      ck.require(q.mismatches == 0,
                 "seed " + std::to_string(seed) + ": " +
                     (q.details.empty() ? "mismatch" : q.details.front()));
      ck.require(q.q_monotone, "seed " + std::to_string(seed) + ": q not monotone");
    }
    // monotonicity must also hold on adversarial traces
    for (const char* file :
         {"scenarios/fork_n3_minority.scn", "scenarios/rollback_basic.scn",
          "scenarios/crash_retry.scn"}) {
      Scenario sc = load_scenario(file);
      RunResult run = run_simulation(sc.config, sc.script);
      QCrossCheck q = check_reported_stability(run.trace);
      ck.require(q.q_monotone, std::string(file) + ": q not monotone");
    }
    c.pass = ck.ok;
    c.detail = ck.ok
                   ? std::to_string(replies) +
                         " replies equal the Definition-2 value; 0 divergences "
                         "(the >= acknowledgment rule coincides with the "
                         "literal definition: nonzero acknowledgments are "
                         "pairwise distinct and the owner counts exactly when "
                         "its completion is acknowledged)"
                   : ck.why.str();
  });
}

// ---- A5 -------------------------------------------------------------------
Criterion a5_crash_exactly_once() {
  return run_criterion("A5 crash-exactly-once", [](Criterion& c) {
    Check ck;
    std::uint64_t runs = 0;
    for (ActionKind kind :
         {ActionKind::kCrashBeforeStore, ActionKind::kCrashAfterStore}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SimConfig cfg = make_config(3, 10, 30'000 + seed);
        cfg.max_sim_ms = 8000;
        AdversaryAction crash;
        crash.kind = kind;
        crash.n = 3 + (seed % 22);
        RunResult run = run_simulation(cfg, {{crash}});
        std::string tag = std::string(action_kind_name(kind)) + " seed " +
                          std::to_string(seed) + ": ";
        ck.require(run.all_clients_done, tag + "stalled");
        ck.require(run.violations.empty(), tag + "false positive");

        // exactly-once: each client operation instance executes once
        std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t> execs;
        std::set<std::pair<std::uint32_t, std::uint64_t>> instances;
        for (const TraceEvent& e : run.trace.events) {
          if (e.kind == EventKind::kExec && !e.is_dummy) {
            ++execs[{e.client_id, e.t_c}];
          }
          if (e.kind == EventKind::kInvoke && !e.is_retry && !e.is_dummy) {
            instances.insert({e.client_id, e.t_c});
          }
        }
        for (const auto& inst : instances) {
          ck.require(execs[inst] == 1,
                     tag + "instance executed " + std::to_string(execs[inst]) +
                         " times");
        }
        ck.require(run.lineages.size() == 1, tag + "unexpected fork");
        ck.require(run.lineages[0].app_state == replay_lineage(run.trace, 1),
                   tag + "final state diverges from the replay oracle");
        ++runs;
      }
    }
    c.pass = ck.ok;
    c.detail = ck.ok ? std::to_string(runs) + " crash runs, exactly-once held"
                     : ck.why.str();
  });
}

// ---- A6 -------------------------------------------------------------------
Criterion a6_migration() {
  return run_criterion("A6 migration", [](Criterion& c) {
    Check ck;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SimConfig cfg = make_config(2, 10, 40'000 + seed);
      AdversaryAction migrate;
      migrate.kind = ActionKind::kMigrate;
      migrate.n = 5 + (seed % 10);
      RunResult run = run_simulation(cfg, {{migrate}});
      std::string tag = "seed " + std::to_string(seed) + ": ";
      ck.require(run.all_clients_done, tag + "stalled after migration");
      ck.require(run.violations.empty(), tag + "violation raised");

      Digest h = kDigestZero;
      std::uint64_t t = 0;
      for (const TraceEvent& e : run.trace.events) {
        if (e.kind == EventKind::kExec) {
          h = chain_hash(h, e.op, ++t, e.client_id);
          ck.require(e.h == h, tag + "chain mismatch at t=" + std::to_string(e.t));
        }
      }
      ck.require(run.lineages.size() == 1 && run.lineages[0].t == t &&
                     run.lineages[0].h == h,
                 tag + "final chain head mismatch");

      // replaying a pre-migration blob to the target platform fails
      PlatformIdentity source_platform =
          PlatformIdentity::random("a6-src-" + std::to_string(seed));
      PlatformIdentity target_platform =
          PlatformIdentity::random("a6-dst-" + std::to_string(seed));
      Bytes program = to_bytes("lcm-kvs");
      SymKey k_p = SymKey::random(), k_c = SymKey::random();
      TrustedContext source(source_platform, program,
                            std::make_unique<KvsApp>());
      source.init(std::nullopt);
      SealedBlobPair pre_migration = source.bootstrap(k_p, k_c, {1, 2});
      TrustedContext target(target_platform, program,
                            std::make_unique<KvsApp>());
      target.init(std::nullopt);
      source.migrate_out(target);
      TrustedContext replayed(target_platform, program,
                              std::make_unique<KvsApp>());
      bool rejected = false;
      try {
        replayed.init(pre_migration);
      } catch (const AuthenticationFailure&) {
        rejected = true;
      }
      ck.require(rejected, tag + "pre-migration blob unsealed on the target");
    }
    c.pass = ck.ok;
    c.detail = ck.ok ? "20/20 migrations consistent; stale blobs rejected"
                     : ck.why.str();
  });
}

// ---- A7 -------------------------------------------------------------------
Criterion a7_overhead() {
  return run_criterion("A7 constant-metadata-overhead", [](Criterion& c) {
    Check ck;
    SymKey k = SymKey::random();
    std::set<std::size_t> invoke_deltas, reply_deltas;
    for (std::size_t size : {std::size_t{100}, std::size_t{500},
                             std::size_t{1000}, std::size_t{1747},
                             std::size_t{2500}}) {
      Bytes value(size, 0x5a);
      KvsOperation put{KvsKind::kPut, to_bytes("user1"), value};
      Bytes op_bytes = put.encode();
      InvokeMessage m;
      m.client_id = 1;
      m.request.op_bytes = op_bytes;
      invoke_deltas.insert(auth_encrypt(m.encode(), k).wire_size() -
                           op_bytes.size());

      ReplyMessage r;
      r.t = 3;
      r.result = KvsResult{KvsStatus::kFound, value}.encode();
      reply_deltas.insert(auth_encrypt(r.encode(), k).wire_size() -
                          r.result.size());
    }
    ck.require(invoke_deltas.size() == 1, "invoke overhead varies with size");
    ck.require(reply_deltas.size() == 1, "reply overhead varies with size");
    c.pass = ck.ok;
    c.detail = ck.ok ? "invoke +" + std::to_string(*invoke_deltas.begin()) +
                           " B, reply +" + std::to_string(*reply_deltas.begin()) +
                           " B across 100..2500 B values"
                     : ck.why.str();
  });
}

// ---- A8 -------------------------------------------------------------------
Criterion a8_bench_ordering() {
  return run_criterion("A8 throughput-ordering", [](Criterion& c) {
    Check ck;
    std::ostringstream seen;
    for (int round = 1; round <= 5; ++round) {
      BenchOptions opt;
      opt.clients = 16;
      opt.ops = 600;
      opt.value_size = 100;
      opt.object_count = 200;
      opt.batch_size = 16;
      opt.seed = 80 + round;

      BenchOptions baseline_opt = opt;
      baseline_opt.ops = 4000;
      BenchResult baseline =
          run_bench_mode(BenchMode::kBaselineNoLcm, baseline_opt);

      BenchResult lcm_async = run_bench_mode(BenchMode::kLcm, opt);

      BenchOptions sync_opt = opt;
      sync_opt.sync_store = true;
      sync_opt.ops = 300;
      BenchResult lcm_sync = run_bench_mode(BenchMode::kLcm, sync_opt);

      BenchOptions batch_sync_opt = sync_opt;
      batch_sync_opt.ops = 600;
      BenchResult batch_sync =
          run_bench_mode(BenchMode::kLcmBatch, batch_sync_opt);

      BenchResult batch_async = run_bench_mode(BenchMode::kLcmBatch, opt);

      BenchOptions tmc_opt = opt;
      tmc_opt.ops = 20;
      BenchResult tmc = run_bench_mode(BenchMode::kTmcEmulated, tmc_opt);

      std::string tag = "round " + std::to_string(round) + ": ";
      ck.require(baseline.ops_per_sec >= lcm_async.ops_per_sec,
                 tag + "baseline slower than lcm");
      ck.require(lcm_async.ops_per_sec >= lcm_sync.ops_per_sec,
                 tag + "async lcm slower than sync-store lcm");
      ck.require(batch_sync.ops_per_sec > lcm_sync.ops_per_sec,
                 tag + "batching does not help in sync-store mode");
      ck.require(batch_async.ops_per_sec >= lcm_async.ops_per_sec,
                 tag + "batching slower than unbatched");
      ck.require(tmc.ops_per_sec <= 1000.0 / 60.0,
                 tag + "tmc mode exceeds the 60ms bound");
      if (round == 1) {
        seen << std::fixed << std::setprecision(0) << "ops/s: baseline "
             << baseline.ops_per_sec << ", lcm " << lcm_async.ops_per_sec
             << ", lcm-sync " << lcm_sync.ops_per_sec << ", batch-sync "
             << batch_sync.ops_per_sec << ", tmc " << std::setprecision(1)
             << tmc.ops_per_sec;
      }
    }
    c.pass = ck.ok;
    c.detail = ck.ok ? "ordering held on 5 consecutive rounds (" + seen.str() + ")"
                     : ck.why.str();
  });
}

// ---- A9 -------------------------------------------------------------------
Criterion a9_property_suites() {
  return run_criterion("A9 crypto-and-wire-properties", [](Criterion& c) {
    Check ck;
    Rng rng(90);
    SymKey k = SymKey::random();

    // 10k round trips
    for (int i = 0; i < 10'000 && ck.ok; ++i) {
      Bytes m(rng.below(i % 100 == 0 ? 4096 : 256));
      for (auto& b : m) b = static_cast<std::uint8_t>(rng.below(256));
      Envelope env = auth_encrypt(m, k);
      ck.require(auth_decrypt(env, k) == m, "round-trip failed");
    }
    // 10k tamper cases
    for (int i = 0; i < 10'000 && ck.ok; ++i) {
      Bytes m(1 + rng.below(128));
      for (auto& b : m) b = static_cast<std::uint8_t>(rng.below(256));
      Bytes wire = auth_encrypt(m, k).to_bytes();
      std::size_t bit = rng.below(wire.size() * 8);
      wire[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      bool caught = false;
      try {
        auth_decrypt(Envelope::from_bytes(wire), k);
      } catch (const AuthenticationFailure&) {
        caught = true;
      }
      ck.require(caught, "tampered envelope decrypted");
    }
    // 10k wire round trips with canonicality
    std::set<Bytes> encodings;
    for (int i = 0; i < 10'000 && ck.ok; ++i) {
      InvokeMessage m;
      m.t_c = rng.next();
      for (auto& b : m.h_c.value) b = static_cast<std::uint8_t>(rng.below(256));
      m.client_id = static_cast<std::uint32_t>(rng.range(1, 1 << 30));
      m.request.op_bytes.assign(rng.range(1, 64), 0);
      for (auto& b : m.request.op_bytes) {
        b = static_cast<std::uint8_t>(rng.below(256));
      }
      m.request.is_retry = rng.below(2);
      Bytes enc = m.encode();
      ck.require(InvokeMessage::decode(enc) == m, "invoke round-trip failed");
      encodings.insert(std::move(enc));

      ReplyMessage r;
      r.t = rng.range(1, 1 << 30);
      r.q = rng.below(r.t + 1);
      for (auto& b : r.h.value) b = static_cast<std::uint8_t>(rng.below(256));
      for (auto& b : r.h_c_echo.value) {
        b = static_cast<std::uint8_t>(rng.below(256));
      }
      r.result.assign(rng.below(64), 0);
      for (auto& b : r.result) b = static_cast<std::uint8_t>(rng.below(256));
      ck.require(ReplyMessage::decode(r.encode()) == r,
                 "reply round-trip failed");
    }
    // 10k chain-hash injectivity probes
    std::set<std::string> digests;
    for (int i = 0; i < 10'000 && ck.ok; ++i) {
      Digest prev;
      for (auto& b : prev.value) b = static_cast<std::uint8_t>(rng.below(256));
      Bytes op(rng.below(24));
      for (auto& b : op) b = static_cast<std::uint8_t>(rng.below(256));
      std::uint64_t t = rng.range(1, 1 << 30);
      std::uint32_t cid = static_cast<std::uint32_t>(rng.range(1, 1 << 16));
      ck.require(digests.insert(chain_hash(prev, op, t, cid).hex()).second,
                 "chain hash collision");
    }
    c.pass = ck.ok;
    c.detail = ck.ok ? "4 x 10000 randomized cases passed" : ck.why.str();
  });
}

}  // namespace

int main(int argc, char** argv) {
  std::string only = argc > 1 ? argv[1] : "";
  std::vector<std::pair<std::string, std::function<Criterion()>>> criteria = {
      {"A1", a1_rollback},  {"A2", a2_forks},
      {"A3", a3_fuzz},      {"A4", a4_stability},
      {"A5", a5_crash_exactly_once},
      {"A6", a6_migration}, {"A7", a7_overhead},
      {"A8", a8_bench_ordering},
      {"A9", a9_property_suites},
  };

  bool all_pass = true;
  for (auto& [key, fn] : criteria) {
    if (!only.empty() && key != only) continue;
    Criterion c = fn();
    all_pass = all_pass && c.pass;
    std::printf("%-34s %s  (%s) [%.1fs]\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.detail.c_str(), c.secs);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
