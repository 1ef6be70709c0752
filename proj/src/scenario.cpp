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

#include "lcm/scenario.hpp"

#include <fstream>
#include <sstream>

#include "lcm/errors.hpp"

namespace lcm {

namespace {

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& source, int line,
                        const std::string& v) {
  try {
    std::size_t pos = 0;
    std::uint64_t out = std::stoull(v, &pos);
    if (pos != v.size()) fail(source, line, "not a number: " + v);
    return out;
  } catch (const std::logic_error&) {
    fail(source, line, "not a number: " + v);
  }
}

/// Parses `fork` partition syntax: [1|2 3] => {{1},{2,3}}.
std::vector<std::vector<std::uint32_t>> parse_partitions(
    const std::string& source, int line, const std::string& v) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    fail(source, line, "partitions must look like [1|2 3]");
  }
  std::vector<std::vector<std::uint32_t>> parts;
  std::string body = v.substr(1, v.size() - 2);
  std::istringstream groups(body);
  std::string group;
  while (std::getline(groups, group, '|')) {
    std::istringstream ids(group);
    std::vector<std::uint32_t> part;
    std::string id;
    while (ids >> id) {
      part.push_back(static_cast<std::uint32_t>(parse_u64(source, line, id)));
    }
    if (part.empty()) fail(source, line, "empty partition");
    parts.push_back(std::move(part));
  }
  if (parts.size() < 2) fail(source, line, "fork needs at least 2 partitions");
  return parts;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& source, int line,
                                          const std::string& v) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    fail(source, line, "list must look like [1 2 3]");
  }
  std::istringstream ids(v.substr(1, v.size() - 2));
  std::vector<std::uint64_t> out;
  std::string id;
  while (ids >> id) out.push_back(parse_u64(source, line, id));
  return out;
}

AdversaryAction parse_action(const std::string& source, int line,
                             const std::string& text) {
  std::istringstream in(text);
  std::string kind_word;
  in >> kind_word;

  AdversaryAction a;
  if (kind_word == "drop_invoke") a.kind = ActionKind::kDropInvoke;
  else if (kind_word == "replay_invoke") a.kind = ActionKind::kReplayInvoke;
  else if (kind_word == "drop_reply") a.kind = ActionKind::kDropReply;
  else if (kind_word == "replay_reply") a.kind = ActionKind::kReplayReply;
  else if (kind_word == "reorder_invokes") a.kind = ActionKind::kReorderInvokes;
  else if (kind_word == "restart_from") a.kind = ActionKind::kRestartFrom;
  else if (kind_word == "fork") a.kind = ActionKind::kFork;
  else if (kind_word == "route_client") a.kind = ActionKind::kRouteClient;
  else if (kind_word == "crash_before_store") a.kind = ActionKind::kCrashBeforeStore;
  else if (kind_word == "crash_after_store") a.kind = ActionKind::kCrashAfterStore;
  else if (kind_word == "substitute_blob") a.kind = ActionKind::kSubstituteBlob;
  else if (kind_word == "migrate") a.kind = ActionKind::kMigrate;
  else if (kind_word == "drop_replies_to") a.kind = ActionKind::kDropRepliesTo;
  else fail(source, line, "unknown action: " + kind_word);

  std::string kv;
  while (in >> kv) {
    // bracketed lists may contain spaces: keep consuming tokens until the
    // closing bracket
    if (kv.find('[') != std::string::npos) {
      std::string more;
      while (kv.find(']') == std::string::npos && in >> more) {
        kv += ' ' + more;
      }
    }
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos) fail(source, line, "expected key=value: " + kv);
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    if (key == "n") a.n = parse_u64(source, line, val);
    else if (key == "version") a.version = parse_u64(source, line, val);
    else if (key == "delay") a.delay_ms = parse_u64(source, line, val);
    else if (key == "window") a.window = static_cast<std::uint32_t>(parse_u64(source, line, val));
    else if (key == "client") a.client = static_cast<std::uint32_t>(parse_u64(source, line, val));
    else if (key == "slot") a.target_slot = static_cast<std::uint32_t>(parse_u64(source, line, val));
    else if (key == "parts") a.partitions = parse_partitions(source, line, val);
    else if (key == "versions") a.versions = parse_u64_list(source, line, val);
    else fail(source, line, "unknown action parameter: " + key);
  }
  if (a.kind == ActionKind::kFork && a.partitions.empty()) {
    fail(source, line, "fork requires parts=[..|..]");
  }
  return a;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& source) {
  Scenario sc;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(source, lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail(source, lineno, "empty key or value");

    if (key == "name") sc.config.name = val;
    else if (key == "clients") sc.config.n_clients = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "ops_per_client") sc.config.workload.ops_per_client = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "seed") sc.config.seed = parse_u64(source, lineno, val);
    else if (key == "object_count") sc.config.workload.object_count = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "value_size") sc.config.workload.value_size = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "mix_put") sc.config.workload.mix_put_pct = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "mix_get") sc.config.workload.mix_get_pct = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "mix_del") sc.config.workload.mix_del_pct = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "batch_size") sc.config.batch_size = static_cast<std::uint32_t>(parse_u64(source, lineno, val));
    else if (key == "store_mode") {
      if (val == "async") sc.config.sync_store = false;
      else if (val == "sync") sc.config.sync_store = true;
      else fail(source, lineno, "store_mode must be async or sync");
    }
    else if (key == "retry_timeout_ms") sc.config.retry_timeout_ms = parse_u64(source, lineno, val);
    else if (key == "dummy_period_ms") sc.config.dummy_period_ms = parse_u64(source, lineno, val);
    else if (key == "max_sim_ms") sc.config.max_sim_ms = parse_u64(source, lineno, val);
    else if (key == "action") sc.script.actions.push_back(parse_action(source, lineno, val));
    else fail(source, lineno, "unknown key: " + key);
  }
  try {
    sc.config.workload.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  return parse_scenario(in, path);
}

}  // namespace lcm
