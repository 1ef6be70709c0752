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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lcm/bench.hpp"
#include "lcm/checker.hpp"
#include "lcm/errors.hpp"
#include "lcm/fuzz.hpp"
#include "lcm/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("LCM_OUT_DIR");
  return env ? env : "out";
}

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> clients;
  std::optional<std::uint32_t> batch;
  std::optional<std::string> store_mode;
};

int cmd_run(const std::string& path, std::string out_dir,
            const RunOverrides& over) {
  lcm::Scenario sc = lcm::load_scenario(path);
  if (over.seed) sc.config.seed = *over.seed;
  if (over.clients) sc.config.n_clients = *over.clients;
  if (over.batch) sc.config.batch_size = *over.batch;
  if (over.store_mode) sc.config.sync_store = *over.store_mode == "sync";

  lcm::RunResult run = lcm::run_simulation(sc.config, sc.script);
  lcm::TraceVerdict verdict = lcm::evaluate_trace(run.trace);

  fs::create_directories(out_dir);
  fs::path trace_path = fs::path(out_dir) / (sc.config.name + ".trace.jsonl");
  run.trace.save(trace_path.string());

  std::cout << "scenario: " << sc.config.name << " (seed " << sc.config.seed
            << ")\n";
  std::cout << "operations executed: " << run.total_execs << "\n";
  for (const auto& [client, count] : run.completed_per_client) {
    std::cout << "  client " << client << ": " << count << " completed\n";
  }
  if (run.violations.empty()) {
    std::cout << "violations: none\n";
  } else {
    for (const auto& v : run.violations) {
      std::cout << "DETECTED " << v.kind << " at " << v.party << " (ts=" << v.ts
                << ")\n";
    }
  }
  std::cout << "checker: " << verdict.summary() << "\n";
  std::cout << "stable-subsequence: "
            << (verdict.stable_subsequence.ok
                    ? "linearizable"
                    : verdict.stable_subsequence.witness)
            << "\n";
  std::cout << "trace: " << trace_path.string() << "\n";
  return verdict.undetected_inconsistency || !verdict.stable_subsequence.ok ? 1
                                                                            : 0;
}

int cmd_fuzz(const lcm::FuzzOptions& opt) {
  lcm::FuzzSummary sum = lcm::run_fuzz(opt);
  std::cout << "fuzz: " << sum.runs << " runs, budget " << opt.attack_budget
            << "\n";
  std::cout << "  runs with detections: " << sum.runs_with_detection << "\n";
  std::cout << "  violations raised:    " << sum.violations_total << "\n";
  std::cout << "  incomplete runs:      " << sum.incomplete_runs << "\n";
  std::cout << "  undetected inconsistencies: "
            << sum.undetected_inconsistencies << "\n";
  for (std::uint64_t seed : sum.failing_seeds) {
    std::cout << "  FAILING SEED: " << seed << "\n";
  }
  bool expect_progress = opt.attack_budget == 0;
  bool ok = sum.sound(expect_progress);
  std::cout << (ok ? "OK" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_bench(std::vector<std::string> mode_names, lcm::BenchOptions opt,
              std::uint32_t tmc_ops, const std::string& out_dir) {
  std::vector<lcm::BenchResult> rows;
  for (const std::string& name : mode_names) {
    lcm::BenchMode mode = lcm::bench_mode_from_name(name);
    lcm::BenchOptions per = opt;
    if (mode == lcm::BenchMode::kTmcEmulated) per.ops = tmc_ops;
    rows.push_back(lcm::run_bench_mode(mode, per));
  }
  std::cout << lcm::bench_table(rows);
  fs::create_directories(out_dir);
  fs::path csv_path = fs::path(out_dir) / "bench.csv";
  std::ofstream csv(csv_path);
  csv << lcm::bench_csv(rows);
  std::cout << "csv: " << csv_path.string() << "\n";
  return 0;
}

int cmd_check(const std::string& path) {
  lcm::Trace trace = lcm::Trace::load(path);
  lcm::TraceVerdict verdict = lcm::evaluate_trace(trace);
  std::cout << verdict.summary() << "\n";
  lcm::QCrossCheck q = lcm::check_reported_stability(trace);
  if (q.checked) {
    std::cout << "stability cross-check: " << q.checked << " replies, "
              << q.mismatches << " mismatches, q "
              << (q.q_monotone ? "monotone" : "NOT MONOTONE") << "\n";
  }
  return verdict.undetected_inconsistency ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LCM protocol harness: scenario runner, fuzzer, benchmark"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = default_out_dir();
  RunOverrides over;
  CLI::App* run = app.add_subcommand("run", "run a scenario file and check it");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", over.seed, "override the scenario seed");
  run->add_option("--clients", over.clients, "override the client count");
  run->add_option("--batch", over.batch, "override the batch size");
  run->add_option("--store-mode", over.store_mode, "async or sync store")
      ->check(CLI::IsMember({"async", "sync"}));

  lcm::FuzzOptions fuzz;
  CLI::App* fz = app.add_subcommand("fuzz", "randomized adversary scripts");
  fz->add_option("--runs", fuzz.runs, "number of seeded runs");
  fz->add_option("--budget", fuzz.attack_budget, "max adversary actions");
  fz->add_option("--seed0", fuzz.first_seed, "first seed");
  fz->add_option("--clients", fuzz.n_clients, "client count");
  fz->add_option("--ops", fuzz.ops_per_client, "operations per client");
  fz->add_option("--batch", fuzz.batch_size, "batch size");
  fz->add_option("--threads", fuzz.threads, "worker threads");

  lcm::BenchOptions bench;
  std::vector<std::string> modes = {"baseline-no-lcm", "lcm", "lcm-batch",
                                    "tmc-emulated"};
  std::string store_mode = "async";
  std::uint32_t tmc_ops = 25;
  std::string bench_out = default_out_dir();
  CLI::App* bn = app.add_subcommand("bench", "relative throughput benchmark");
  bn->add_option("--modes", modes, "modes to run")->delimiter(',');
  bn->add_option("--clients", bench.clients, "client count");
  bn->add_option("--ops", bench.ops, "total operations per mode");
  bn->add_option("--value-size", bench.value_size, "object value size");
  bn->add_option("--objects", bench.object_count, "object count");
  bn->add_option("--batch", bench.batch_size, "batch size for lcm-batch");
  bn->add_option("--store-mode", store_mode, "async or sync-faithful store")
      ->check(CLI::IsMember({"async", "sync"}));
  bn->add_option("--fsync-delay-us", bench.fsync_delay_us,
                 "injected per-store delay in sync mode");
  bn->add_option("--tmc-ops", tmc_ops, "operations for the tmc mode");
  bn->add_option("--seed", bench.seed, "workload seed");
  bn->add_option("--out", bench_out, "output directory");

  std::string trace_path;
  CLI::App* ck = app.add_subcommand("check", "run the checker on a saved trace");
  ck->add_option("trace", trace_path, "trace file (jsonl)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_dir, over);
    if (fz->parsed()) return cmd_fuzz(fuzz);
    if (bn->parsed()) {
      bench.sync_store = store_mode == "sync";
      return cmd_bench(modes, bench, tmc_ops, bench_out);
    }
    if (ck->parsed()) return cmd_check(trace_path);
  } catch (const lcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lcm::LcmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
