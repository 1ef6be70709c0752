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

#include "lcm/fuzz.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "lcm/checker.hpp"

namespace lcm {

AdversaryScript random_script(std::uint64_t seed, std::uint32_t budget,
                              std::uint32_t n_clients,
                              std::uint64_t approx_ops) {
  Rng rng(seed ^ 0xadbeef);
  AdversaryScript script;
  if (budget == 0) return script;
  std::uint32_t count = static_cast<std::uint32_t>(rng.below(budget + 1));
  for (std::uint32_t i = 0; i < count; ++i) {
    AdversaryAction a;
    switch (rng.below(10)) {
      case 0:
        a.kind = ActionKind::kDropInvoke;
        a.n = rng.range(1, approx_ops);
        break;
      case 1:
        a.kind = ActionKind::kReplayInvoke;
        a.n = rng.range(1, approx_ops);
        a.delay_ms = rng.range(5, 200);
        break;
      case 2:
        a.kind = ActionKind::kDropReply;
        a.n = rng.range(1, approx_ops);
        break;
      case 3:
        a.kind = ActionKind::kReplayReply;
        a.n = rng.range(1, approx_ops);
        a.delay_ms = rng.range(5, 200);
        break;
      case 4:
        a.kind = ActionKind::kReorderInvokes;
        a.n = rng.range(1, approx_ops);
        a.window = static_cast<std::uint32_t>(rng.range(2, 4));
        break;
      case 5:
        a.kind = ActionKind::kRestartFrom;
        a.n = rng.range(1, approx_ops);
        a.version = rng.below(approx_ops);
        break;
      case 6: {
        a.kind = ActionKind::kFork;
        a.n = rng.range(1, approx_ops);
        // random split of clients into two non-empty partitions
        std::vector<std::uint32_t> left, right;
        for (std::uint32_t c = 1; c <= n_clients; ++c) {
          (rng.below(2) ? left : right).push_back(c);
        }
        if (left.empty()) {
          left.push_back(right.back());
          right.pop_back();
        }
        if (right.empty()) {
          right.push_back(left.back());
          left.pop_back();
        }
        a.partitions = {left, right};
        a.versions = {rng.below(approx_ops), rng.below(approx_ops)};
        break;
      }
      case 7:
        a.kind = ActionKind::kRouteClient;
        a.n = rng.range(1, approx_ops);
        a.client = static_cast<std::uint32_t>(rng.range(1, n_clients));
        a.target_slot = static_cast<std::uint32_t>(rng.below(4));
        break;
      case 8:
        a.kind = rng.below(2) ? ActionKind::kCrashBeforeStore
                              : ActionKind::kCrashAfterStore;
        a.n = rng.range(1, approx_ops);
        break;
      case 9:
        a.kind = ActionKind::kSubstituteBlob;
        a.n = rng.range(1, approx_ops);
        a.version = rng.below(approx_ops);
        break;
    }
    script.actions.push_back(std::move(a));
  }
  return script;
}

namespace {

void fuzz_one(const FuzzOptions& opt, std::uint64_t seed, FuzzSummary& out,
              std::mutex& mu) {
  SimConfig cfg;
  cfg.name = "fuzz-" + std::to_string(seed);
  cfg.n_clients = opt.n_clients;
  cfg.workload.ops_per_client = opt.ops_per_client;
  cfg.batch_size = opt.batch_size;
  cfg.seed = seed;
  cfg.max_sim_ms = 5000;

  std::uint64_t approx_ops =
      static_cast<std::uint64_t>(opt.n_clients) * opt.ops_per_client;
  AdversaryScript script =
      random_script(seed, opt.attack_budget, opt.n_clients, approx_ops);

  RunResult run = run_simulation(cfg, script);
  TraceVerdict verdict = evaluate_trace(run.trace);

  std::lock_guard<std::mutex> lock(mu);
  ++out.runs;
  out.violations_total += run.violations.size();
  if (!run.violations.empty()) ++out.runs_with_detection;
  if (!run.all_clients_done) ++out.incomplete_runs;
  if (verdict.undetected_inconsistency) {
    ++out.undetected_inconsistencies;
    out.failing_seeds.push_back(seed);
  }
}

}  // namespace

FuzzSummary run_fuzz(const FuzzOptions& opt) {
  FuzzSummary out;
  std::mutex mu;
  std::uint32_t workers = std::max(1u, opt.threads);
  if (workers == 1) {
    for (std::uint64_t i = 0; i < opt.runs; ++i) {
      fuzz_one(opt, opt.first_seed + i, out, mu);
    }
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (std::uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= opt.runs) return;
        fuzz_one(opt, opt.first_seed + i, out, mu);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace lcm
