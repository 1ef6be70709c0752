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

#ifndef LCM_CHECKER_HPP_
#define LCM_CHECKER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lcm/trace.hpp"

// Offline oracle over recorded traces. Everything here re-derives its
// verdicts from operation contents, observed results and timestamps; it
// never trusts the protocol's own hash chain or stability arithmetic.
//
// Scope: desk-scale traces (the checker is an oracle, not a production
// tool). Views are reconstructed as prefixes of executed branch histories,
// which is complete for traces produced by this harness: authenticated
// encryption guarantees every accepted reply originates from a real
// context execution on some branch.

namespace lcm {

struct CheckerVerdict {
  bool ok = true;
  std::string witness;           // first counterexample, human-readable
  std::uint64_t witness_ts = 0;  // response timestamp exposing it
};

struct StabilityEntry {
  std::uint32_t client = 0;
  std::uint64_t t = 0;       // sequence number of the completed operation
  std::uint32_t lineage = 0;
  std::uint64_t resp_ts = 0;
  bool dummy = false;
  bool stable = false;        // ever stable among a majority
  std::uint64_t stable_ts = 0;  // earliest point, when stable
};

struct StabilityReport {
  std::vector<StabilityEntry> ops;
};

struct QCrossCheck {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  bool q_monotone = true;
  std::vector<std::string> details;  // first few mismatches, if any
  bool ok() const { return mismatches == 0 && q_monotone; }
};

struct TraceVerdict {
  CheckerVerdict fork_linearizable;
  CheckerVerdict stable_subsequence;
  bool any_party_violation = false;
  std::uint64_t first_violation_ts = 0;  // valid iff any_party_violation
  /// A fork-linearizability violation became observable before any party
  /// raised a violation: the outcome LCM promises never happens.
  bool undetected_inconsistency = false;

  std::string summary() const;
};

/// Verifies that every client's completions embed into a branch-prefix
/// view (legal for the KVS functionality and consistent with real-time
/// order) and that any operation shared by two views carries the same
/// prefix in both.
CheckerVerdict check_fork_linearizable(const Trace& trace);

/// Literal brute-force evaluation of operation stability over completed
/// operations: an op of C_i with sequence number t is stable w.r.t. C_j
/// once C_j completes an operation with a bigger sequence number whose
/// view includes the op; stable among a majority once that holds for
/// more than n/2 clients (the owner counts for free).
StabilityReport stability_oracle(const Trace& trace);

/// The subsequence of majority-stable operations must be linearizable.
CheckerVerdict check_stable_subsequence_linearizable(const Trace& trace);

/// Replays the context's acknowledgment knowledge along the execution
/// order and recomputes, from the definitions alone, the majority-stable
/// watermark each reply should have carried; compares against the
/// reported q and checks monotonicity.
QCrossCheck check_reported_stability(const Trace& trace);

/// The one-stop verdict used by the scenario runner and the fuzzer.
TraceVerdict evaluate_trace(const Trace& trace);

}  // namespace lcm

#endif  // LCM_CHECKER_HPP_
