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

#include "lcm/bench.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include "lcm/client.hpp"
#include "lcm/context.hpp"
#include "lcm/errors.hpp"
#include "lcm/workload.hpp"

namespace lcm {

const char* bench_mode_name(BenchMode m) {
  switch (m) {
    case BenchMode::kBaselineNoLcm: return "baseline-no-lcm";
    case BenchMode::kLcm: return "lcm";
    case BenchMode::kLcmBatch: return "lcm-batch";
    case BenchMode::kTmcEmulated: return "tmc-emulated";
  }
  return "?";
}

BenchMode bench_mode_from_name(const std::string& s) {
  for (BenchMode m : {BenchMode::kBaselineNoLcm, BenchMode::kLcm,
                      BenchMode::kLcmBatch, BenchMode::kTmcEmulated}) {
    if (s == bench_mode_name(m)) return m;
  }
  throw ConfigError("unknown bench mode: " + s);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct OpStream {
  std::vector<std::vector<KvsOperation>> scripts;
  std::vector<std::size_t> next;

  explicit OpStream(const BenchOptions& opt) {
    WorkloadSpec spec;
    spec.value_size = opt.value_size;
    spec.object_count = opt.object_count;
    spec.ops_per_client =
        static_cast<std::uint32_t>(opt.ops / opt.clients + opt.batch_size + 1);
    scripts = generate_scripts(spec, opt.clients, opt.seed);
    next.assign(opt.clients, 0);
  }

  KvsOperation take(std::uint32_t client_index) {
    return scripts[client_index][next[client_index]++ % scripts[client_index].size()];
  }
};

}  // namespace

BenchResult run_bench_mode(BenchMode mode, const BenchOptions& opt) {
  BenchResult out;
  out.mode = mode;
  out.sync_store = opt.sync_store;
  out.ops = opt.ops;

  OpStream stream(opt);
  const bool protocol = mode == BenchMode::kLcm || mode == BenchMode::kLcmBatch;
  const std::uint32_t batch =
      mode == BenchMode::kLcmBatch ? std::min(opt.batch_size, opt.clients) : 1;

  if (opt.collect_timing) out.op_latency_us.reserve(opt.ops);

  if (!protocol) {
    KvsApp app;
    std::uint64_t tmc_counter = 0;
    auto start = Clock::now();
    for (std::uint64_t i = 0; i < opt.ops; ++i) {
      auto op_start = Clock::now();
      Bytes op = stream.take(i % opt.clients).encode();
      Bytes result = app.exec(op);
      (void)result;
      if (mode == BenchMode::kTmcEmulated) {
        ++tmc_counter;
        std::this_thread::sleep_for(std::chrono::milliseconds(opt.tmc_delay_ms));
      }
      if (opt.collect_timing) {
        out.op_latency_us.push_back(
            std::chrono::duration<double, std::micro>(Clock::now() - op_start)
                .count());
      }
    }
    out.seconds = seconds_since(start);
    out.ops_per_sec = opt.ops / out.seconds;
    return out;
  }

  // Protocol modes drive real clients against a real context; the host
  // role is played inline (store = append, plus the injected fsync delay
  // in sync mode).
  PlatformIdentity platform = PlatformIdentity::random("bench-platform");
  SymKey k_p = SymKey::random();
  SymKey k_c = SymKey::random();
  TrustedContext ctx(platform, to_bytes("lcm-kvs"), std::make_unique<KvsApp>());
  ctx.init(std::nullopt);

  std::vector<std::uint32_t> group;
  std::vector<LcmClient> clients;
  for (std::uint32_t c = 1; c <= opt.clients; ++c) {
    group.push_back(c);
    clients.emplace_back(c, k_c);
  }
  std::vector<Bytes> store;
  std::uint64_t stored_bytes = 0;
  store.push_back(ctx.bootstrap(k_p, k_c, group).encode());

  out.trace.name = std::string("bench-") + bench_mode_name(mode);
  out.trace.n_clients = opt.clients;
  out.trace.seed = opt.seed;
  std::uint64_t ts = 0;

  auto start = Clock::now();
  std::uint64_t done = 0;
  std::uint32_t rr = 0;
  while (done < opt.ops) {
    std::uint32_t take = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(batch, opt.ops - done));
    auto op_start = Clock::now();

    std::vector<Envelope> invokes;
    std::vector<std::uint32_t> senders;
    for (std::uint32_t k = 0; k < take; ++k) {
      std::uint32_t idx = (rr + k) % opt.clients;
      LcmClient& cl = clients[idx];
      OperationRequest req;
      req.op_bytes = stream.take(idx).encode();
      TraceEvent ev;
      ev.kind = EventKind::kInvoke;
      ev.ts = ++ts;
      ev.client_id = cl.id();
      ev.t_c = cl.t_c();
      ev.op = req.op_bytes;
      invokes.push_back(cl.invoke(req));
      out.trace.events.push_back(std::move(ev));
      senders.push_back(idx);
    }
    rr = (rr + take) % opt.clients;

    BatchResult res = ctx.handle_batch(invokes);
    if (res.halted) throw LcmError("bench batch halted unexpectedly");

    store.push_back(res.blob.encode());
    stored_bytes += store.back().size();
    if (opt.sync_store) {
      std::this_thread::sleep_for(std::chrono::microseconds(opt.fsync_delay_us));
    }

    for (std::size_t k = 0; k < res.ops.size(); ++k) {
      const ProcessedOp& op = res.ops[k];
      TraceEvent ex;
      ex.kind = EventKind::kExec;
      ex.ts = ++ts;
      ex.lineage = 1;
      ex.epoch = 1;
      ex.client_id = op.client_id;
      ex.t = op.t;
      ex.q = op.q;
      ex.t_c = op.t_c;
      ex.h = op.h;
      ex.op = op.op_bytes;
      ex.result = op.result;
      out.trace.events.push_back(std::move(ex));

      CompletedOp completed = clients[senders[k]].handle_reply(op.reply);
      TraceEvent rsp;
      rsp.kind = EventKind::kResponse;
      rsp.ts = ++ts;
      rsp.client_id = op.client_id;
      rsp.t = completed.t;
      rsp.q = completed.q;
      rsp.h = clients[senders[k]].h_c();
      rsp.result = completed.result;
      rsp.lineage = 1;
      out.trace.events.push_back(std::move(rsp));
    }

    done += take;
    if (opt.collect_timing) {
      out.op_latency_us.push_back(
          std::chrono::duration<double, std::micro>(Clock::now() - op_start)
              .count());
    }
  }
  out.seconds = seconds_since(start);
  out.ops_per_sec = opt.ops / out.seconds;
  (void)stored_bytes;
  return out;
}

std::string bench_table(const std::vector<BenchResult>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "mode" << std::setw(8) << "store"
     << std::right << std::setw(10) << "ops" << std::setw(12) << "seconds"
     << std::setw(14) << "ops/sec" << '\n';
  for (const BenchResult& r : rows) {
    os << std::left << std::setw(18) << bench_mode_name(r.mode) << std::setw(8)
       << (r.sync_store ? "sync" : "async") << std::right << std::setw(10)
       << r.ops << std::setw(12) << std::fixed << std::setprecision(3)
       << r.seconds << std::setw(14) << std::setprecision(1) << r.ops_per_sec
       << '\n';
  }
  return os.str();
}

std::string bench_csv(const std::vector<BenchResult>& rows) {
  std::ostringstream os;
  os << "mode,store,ops,seconds,ops_per_sec\n";
  for (const BenchResult& r : rows) {
    os << bench_mode_name(r.mode) << ',' << (r.sync_store ? "sync" : "async")
       << ',' << r.ops << ',' << r.seconds << ',' << r.ops_per_sec << '\n';
  }
  return os.str();
}

}  // namespace lcm
