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

#ifndef LCM_BENCH_HPP_
#define LCM_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lcm/trace.hpp"

// Relative-throughput benchmark. Absolute numbers are hardware-dependent
// and only ordering claims are meaningful: the protocol modes do strictly
// more work per operation than the baseline, synchronous storing adds an
// injected per-store delay, and the emulated trusted monotonic counter
// adds a fixed sleep per operation.

namespace lcm {

enum class BenchMode {
  kBaselineNoLcm,  // plain KVS call path, no protocol
  kLcm,            // full protocol, one operation per batch
  kLcmBatch,       // full protocol, batched operations
  kTmcEmulated,    // baseline plus a trusted-counter increment per op
};

const char* bench_mode_name(BenchMode m);
BenchMode bench_mode_from_name(const std::string& s);  // throws ConfigError

struct BenchOptions {
  std::uint32_t clients = 16;
  std::uint32_t ops = 2000;  // total operations per mode
  std::uint32_t value_size = 100;
  std::uint32_t object_count = 1000;
  std::uint32_t batch_size = 16;
  bool sync_store = false;
  std::uint32_t fsync_delay_us = 1000;  // injected per store in sync mode
  std::uint32_t tmc_delay_ms = 60;      // injected per op in TMC mode
  std::uint64_t seed = 1;
  bool collect_timing = true;  // per-op latency capture; never alters behavior
};

struct BenchResult {
  BenchMode mode = BenchMode::kBaselineNoLcm;
  bool sync_store = false;
  std::uint64_t ops = 0;
  double seconds = 0;
  double ops_per_sec = 0;
  std::vector<double> op_latency_us;  // only when collect_timing
  Trace trace;                        // protocol modes only
};

BenchResult run_bench_mode(BenchMode mode, const BenchOptions& opt);

std::string bench_table(const std::vector<BenchResult>& rows);
std::string bench_csv(const std::vector<BenchResult>& rows);

}  // namespace lcm

#endif  // LCM_BENCH_HPP_
