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

#include "lcm/trace.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lcm/errors.hpp"

namespace lcm {

using nlohmann::json;

namespace {

constexpr const char* kKindNames[] = {
    "invoke", "response", "exec", "store",
    "load",   "violation", "context_restart", "fork",
};

const Digest kNoDigest{};

}  // namespace

const char* event_kind_name(EventKind k) {
  return kKindNames[static_cast<int>(k)];
}

EventKind event_kind_from_name(const std::string& s) {
  for (int i = 0; i < 8; ++i) {
    if (s == kKindNames[i]) return static_cast<EventKind>(i);
  }
  throw MalformedTrace("unknown event kind: " + s);
}

std::string Trace::to_jsonl() const {
  std::ostringstream out;
  {
    json meta;
    meta["kind"] = "meta";
    meta["name"] = name;
    meta["n"] = n_clients;
    meta["seed"] = seed;
    out << meta.dump() << '\n';
  }
  for (const TraceEvent& e : events) {
    json j;
    j["kind"] = event_kind_name(e.kind);
    j["ts"] = e.ts;
    if (e.client_id) j["client"] = e.client_id;
    if (e.t) j["t"] = e.t;
    if (e.q) j["q"] = e.q;
    if (e.t_c) j["tc"] = e.t_c;
    if (e.h != kNoDigest) j["h"] = e.h.hex();
    if (!e.op.empty()) j["op"] = hex_encode(e.op);
    if (!e.result.empty()) j["res"] = hex_encode(e.result);
    if (e.is_dummy) j["dummy"] = true;
    if (e.is_retry) j["retry"] = true;
    if (e.lineage) j["lin"] = e.lineage;
    if (e.parent_lineage) j["plin"] = e.parent_lineage;
    if (e.branch_t) j["bt"] = e.branch_t;
    if (e.epoch) j["epoch"] = e.epoch;
    if (e.version) j["ver"] = e.version;
    if (!e.party.empty()) j["party"] = e.party;
    if (!e.reason.empty()) j["reason"] = e.reason;
    out << j.dump() << '\n';
  }
  return out.str();
}

Trace Trace::from_jsonl(std::istream& in) {
  Trace trace;
  std::string line;
  bool saw_meta = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedTrace(std::string("bad trace line: ") + e.what());
    }
    try {
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "meta") {
        trace.name = j.value("name", std::string());
        trace.n_clients = j.value("n", 0u);
        trace.seed = j.value("seed", std::uint64_t{0});
        saw_meta = true;
        continue;
      }
      TraceEvent e;
      e.kind = event_kind_from_name(kind);
      e.ts = j.at("ts").get<std::uint64_t>();
      e.client_id = j.value("client", 0u);
      e.t = j.value("t", std::uint64_t{0});
      e.q = j.value("q", std::uint64_t{0});
      e.t_c = j.value("tc", std::uint64_t{0});
      if (j.contains("h")) e.h = Digest::from_hex(j["h"].get<std::string>());
      if (j.contains("op")) e.op = hex_decode(j["op"].get<std::string>());
      if (j.contains("res")) e.result = hex_decode(j["res"].get<std::string>());
      e.is_dummy = j.value("dummy", false);
      e.is_retry = j.value("retry", false);
      e.lineage = j.value("lin", 0u);
      e.parent_lineage = j.value("plin", 0u);
      e.branch_t = j.value("bt", std::uint64_t{0});
      e.epoch = j.value("epoch", 0u);
      e.version = j.value("ver", std::uint64_t{0});
      e.party = j.value("party", std::string());
      e.reason = j.value("reason", std::string());
      trace.events.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw MalformedTrace(std::string("bad trace field: ") + e.what());
    }
  }
  if (!saw_meta) throw MalformedTrace("trace missing meta line");
  return trace;
}

Trace Trace::from_jsonl_string(const std::string& s) {
  std::istringstream in(s);
  return from_jsonl(in);
}

void Trace::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LcmError("cannot open trace file for writing: " + path);
  out << to_jsonl();
}

Trace Trace::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LcmError("cannot open trace file: " + path);
  return from_jsonl(in);
}

}  // namespace lcm
