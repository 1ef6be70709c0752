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

#ifndef LCM_TRACE_HPP_
#define LCM_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lcm/bytes.hpp"
#include "lcm/crypto.hpp"

namespace lcm {

/// Trace record kinds. invoke/response delimit client operations;
/// exec records one operation executed inside a context instance (the
/// per-op detail that store events lose under batching); the remaining
/// kinds track persistence and lifecycle.
enum class EventKind {
  kInvoke,
  kResponse,
  kExec,
  kStore,
  kLoad,
  kViolation,
  kContextRestart,
  kFork,
};

const char* event_kind_name(EventKind k);
EventKind event_kind_from_name(const std::string& s);  // throws MalformedTrace

struct TraceEvent {
  EventKind kind = EventKind::kInvoke;
  std::uint64_t ts = 0;  // logical timestamp; totally ordered within a run

  std::uint32_t client_id = 0;  // invoke/response/exec
  std::uint64_t t = 0;          // sequence number (response/exec/store/load)
  std::uint64_t q = 0;          // response/exec
  std::uint64_t t_c = 0;        // invoke/exec: ack carried; with client_id it
                                // identifies the operation instance
  Digest h;                     // response/exec
  Bytes op;                     // invoke/exec
  Bytes result;                 // response/exec
  bool is_dummy = false;
  bool is_retry = false;  // invoke

  std::uint32_t lineage = 0;         // context history branch
  std::uint32_t parent_lineage = 0;  // fork
  std::uint64_t branch_t = 0;        // fork: sequence number branched at
  std::uint32_t epoch = 0;           // exec/load/context-restart
  std::uint64_t version = 0;         // store/load version index

  std::string party;   // violation: "client:3" or "context:1"
  std::string reason;  // violation kind / restart reason

  bool operator==(const TraceEvent&) const = default;
};

struct Trace {
  std::string name;
  std::uint32_t n_clients = 0;
  std::uint64_t seed = 0;
  std::vector<TraceEvent> events;

  /// Line-delimited JSON: one meta line, then one line per event.
  std::string to_jsonl() const;
  static Trace from_jsonl(std::istream& in);  // throws MalformedTrace
  static Trace from_jsonl_string(const std::string& s);

  void save(const std::string& path) const;
  static Trace load(const std::string& path);

  bool operator==(const Trace&) const = default;
};

}  // namespace lcm

#endif  // LCM_TRACE_HPP_
