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

#include "lcm/checker.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "lcm/errors.hpp"
#include "lcm/kvs.hpp"

namespace lcm {

namespace {

constexpr std::size_t kMaxClients = 8;
constexpr std::size_t kMaxExecs = 5000;
constexpr std::size_t kSearchBudget = 200'000;

struct OpInstance {
  std::uint32_t lineage = 0;
  std::uint64_t t = 0;
  std::uint32_t client = 0;
  std::uint64_t t_c = 0;
  Bytes op;
  Bytes result;  // as recorded by the context
  bool dummy = false;
  std::uint64_t exec_ts = 0;
  std::uint64_t q = 0;
};

struct LineageInfo {
  std::uint32_t id = 0;
  std::uint32_t parent = 0;
  std::uint64_t branch_t = 0;
  std::vector<OpInstance*> own;      // this branch's segment, seq order
  std::vector<OpInstance*> history;  // full root-to-here prefix
  std::vector<Bytes> replay;         // replayed result per history position
};

struct Completion {
  std::uint32_t client = 0;
  std::uint64_t t = 0;
  std::uint64_t q = 0;
  Bytes op;
  Bytes result;
  bool dummy = false;
  std::uint64_t invoke_ts = 0;
  std::uint64_t resp_ts = 0;
  std::uint32_t lineage = 0;       // which instance produced the reply (hint)
  std::size_t order = 0;           // global completion index, by resp_ts
  const OpInstance* exec = nullptr;  // matched execution on the hint branch
};

struct Model {
  std::uint32_t n = 0;
  std::deque<OpInstance> instances;
  std::map<std::uint32_t, LineageInfo> lineages;
  std::map<std::uint32_t, std::vector<Completion>> completions;
  std::vector<const Completion*> by_order;
  std::vector<std::pair<std::string, std::uint64_t>> party_violations;
};

std::uint64_t invoke_ts_of(
    const std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t>& m,
    const OpInstance* inst) {
  auto it = m.find({inst->client, inst->t_c});
  return it != m.end() ? it->second : inst->exec_ts;
}

struct InvokeIndex {
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t> first_ts;
};

Model build_model(const Trace& trace, InvokeIndex& invokes) {
  Model m;
  m.n = trace.n_clients;
  if (m.n == 0) throw MalformedTrace("trace meta lacks client count");
  if (m.n > kMaxClients) throw MalformedTrace("trace exceeds checker scale");

  // open invocation per client: (t_c, op, dummy)
  struct Open {
    std::uint64_t t_c = 0;
    Bytes op;
    bool dummy = false;
    bool active = false;
  };
  std::map<std::uint32_t, Open> open;

  m.lineages[1] = LineageInfo{1, 0, 0, {}, {}, {}};

  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case EventKind::kFork: {
        if (m.lineages.count(e.lineage)) {
          throw MalformedTrace("fork re-declares a lineage");
        }
        if (!m.lineages.count(e.parent_lineage)) {
          throw MalformedTrace("fork from unknown lineage");
        }
        m.lineages[e.lineage] =
            LineageInfo{e.lineage, e.parent_lineage, e.branch_t, {}, {}, {}};
        break;
      }
      case EventKind::kExec: {
        auto it = m.lineages.find(e.lineage);
        if (it == m.lineages.end()) {
          throw MalformedTrace("exec on unknown lineage");
        }
        if (m.instances.size() >= kMaxExecs) {
          throw MalformedTrace("trace exceeds checker scale");
        }
        LineageInfo& lin = it->second;
        std::uint64_t expected = lin.branch_t + lin.own.size() + 1;
        if (e.t != expected) {
          throw MalformedTrace("exec sequence numbers not contiguous");
        }
        m.instances.push_back(OpInstance{e.lineage, e.t, e.client_id, e.t_c,
                                         e.op, e.result, e.is_dummy, e.ts,
                                         e.q});
        lin.own.push_back(&m.instances.back());
        break;
      }
      case EventKind::kInvoke: {
        Open& o = open[e.client_id];
        if (!e.is_retry) {
          if (o.active) {
            throw MalformedTrace("client invoked while an op was outstanding");
          }
          o = Open{e.t_c, e.op, e.is_dummy, true};
          invokes.first_ts.try_emplace({e.client_id, e.t_c}, e.ts);
        } else if (!o.active || o.t_c != e.t_c) {
          throw MalformedTrace("retry without matching open invocation");
        }
        break;
      }
      case EventKind::kResponse: {
        auto it = open.find(e.client_id);
        if (it == open.end() || !it->second.active) {
          throw MalformedTrace("response without open invocation");
        }
        Completion c;
        c.client = e.client_id;
        c.t = e.t;
        c.q = e.q;
        c.op = it->second.op;
        c.result = e.result;
        c.dummy = it->second.dummy;
        c.invoke_ts = invokes.first_ts.at({e.client_id, it->second.t_c});
        c.resp_ts = e.ts;
        c.lineage = e.lineage;
        m.completions[e.client_id].push_back(std::move(c));
        it->second.active = false;
        break;
      }
      case EventKind::kViolation:
        m.party_violations.emplace_back(e.party, e.ts);
        break;
      default:
        break;
    }
  }

  // Materialize branch histories (parents first: lineage ids increase).
  for (auto& [id, lin] : m.lineages) {
    if (lin.parent != 0) {
      const LineageInfo& parent = m.lineages.at(lin.parent);
      if (parent.history.size() < lin.branch_t) {
        throw MalformedTrace("fork beyond parent history");
      }
      lin.history.assign(parent.history.begin(),
                         parent.history.begin() + lin.branch_t);
    }
    lin.history.insert(lin.history.end(), lin.own.begin(), lin.own.end());

    KvsApp app;
    lin.replay.reserve(lin.history.size());
    for (const OpInstance* inst : lin.history) {
      lin.replay.push_back(inst->dummy ? Bytes{} : app.exec(inst->op));
    }
  }

  // Match completions to executions on the hinted branch, and order them.
  std::vector<Completion*> all;
  for (auto& [client, comps] : m.completions) {
    for (Completion& c : comps) {
      auto it = m.lineages.find(c.lineage);
      if (it != m.lineages.end() && c.t >= 1 &&
          c.t <= it->second.history.size()) {
        c.exec = it->second.history[c.t - 1];
      }
      all.push_back(&c);
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Completion* a, const Completion* b) {
                     return a->resp_ts < b->resp_ts;
                   });
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i]->order = i;
    m.by_order.push_back(all[i]);
  }
  return m;
}

// ---- fork-linearizability ------------------------------------------------

struct ViewRef {
  const LineageInfo* lin = nullptr;
  std::uint64_t t = 0;  // prefix length
};

/// Checks that `view` is a legal, real-time-consistent history containing
/// all of `client`'s completions (restricted to completions with
/// order < limit). Returns a failure description or nullopt.
std::optional<std::string> validate_view(const Model& m,
                                         const InvokeIndex& invokes,
                                         std::uint32_t client,
                                         const ViewRef& view,
                                         std::size_t limit) {
  const auto& history = view.lin->history;
  if (view.t > history.size()) return "view exceeds branch history";

  // Own completions embed at their sequence numbers, in invocation order.
  std::uint64_t prev_t = 0;
  auto cit = m.completions.find(client);
  if (cit != m.completions.end()) {
    for (const Completion& c : cit->second) {
      if (c.order >= limit) break;
      if (c.t < 1 || c.t > view.t) {
        return "own operation misses the view prefix";
      }
      if (c.t <= prev_t) return "sequence numbers not increasing at client";
      prev_t = c.t;
      const OpInstance* inst = history[c.t - 1];
      if (inst->client != client || inst->dummy != c.dummy ||
          inst->op != c.op) {
        return "view position does not hold the client's operation";
      }
      if (!c.dummy && view.lin->replay[c.t - 1] != c.result) {
        return "observed result disagrees with replayed history";
      }
    }
  }

  // Every other client's completion whose execution lies in this prefix
  // must agree with the replay as well (legality of the full view).
  for (const Completion* other : m.by_order) {
    if (other->order >= limit || other->client == client) continue;
    if (!other->exec || other->dummy) continue;
    std::uint64_t pos = other->exec->t;
    if (pos <= view.t && history[pos - 1] == other->exec &&
        view.lin->replay[pos - 1] != other->result) {
      return "another client's observed result disagrees with this view";
    }
  }

  // Real-time order: a completed operation may not be ordered after an
  // operation that was invoked only after its response.
  std::vector<std::uint64_t> inv(view.t), rsp(view.t, 0);
  std::map<const OpInstance*, std::uint64_t> resp_of;
  for (const Completion* c : m.by_order) {
    if (c->order >= limit || !c->exec) continue;
    auto [it, fresh] = resp_of.try_emplace(c->exec, c->resp_ts);
    if (!fresh) it->second = std::min(it->second, c->resp_ts);
  }
  for (std::uint64_t i = 0; i < view.t; ++i) {
    inv[i] = invoke_ts_of(invokes.first_ts, history[i]);
    auto it = resp_of.find(history[i]);
    if (it != resp_of.end()) rsp[i] = it->second;
  }
  for (std::uint64_t j = 0; j < view.t; ++j) {
    if (rsp[j] == 0) continue;
    for (std::uint64_t i = 0; i < j; ++i) {
      if (rsp[j] < inv[i]) {
        return "view order contradicts real-time order";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_pairwise(const ViewRef& a, const ViewRef& b) {
  const auto& ha = a.lin->history;
  const auto& hb = b.lin->history;
  std::uint64_t upto = std::min(a.t, b.t);
  std::uint64_t common = 0;
  while (common < upto && ha[common] == hb[common]) ++common;
  // Any operation shared beyond the common prefix has two different
  // pasts: the join fork-linearizability forbids.
  std::set<const OpInstance*> beyond_a(ha.begin() + common, ha.begin() + a.t);
  for (std::uint64_t i = common; i < b.t; ++i) {
    if (beyond_a.count(hb[i])) {
      std::ostringstream os;
      os << "operation (client " << hb[i]->client << ", t=" << hb[i]->t
         << ") is shared by two views with divergent prefixes";
      return os.str();
    }
  }
  return std::nullopt;
}

CheckerVerdict run_fork_linearizable(const Model& m, const InvokeIndex& invokes,
                                     std::size_t limit) {
  CheckerVerdict verdict;

  // Candidate views per client: branch prefixes ending at its last
  // completed operation. The reply lineage is a hint; on failure every
  // branch is tried.
  std::vector<std::uint32_t> active_clients;
  std::vector<std::vector<ViewRef>> candidates;

  for (const auto& [client, comps] : m.completions) {
    const Completion* last = nullptr;
    for (const Completion& c : comps) {
      if (c.order < limit) last = &c;
    }
    if (!last) continue;
    active_clients.push_back(client);

    std::vector<ViewRef> cands;
    std::string fail_msg = "no execution history matches";
    auto hint = m.lineages.find(last->lineage);
    if (hint != m.lineages.end()) {
      ViewRef v{&hint->second, last->t};
      auto fail = validate_view(m, invokes, client, v, limit);
      if (!fail) {
        cands.push_back(v);
      } else {
        fail_msg = *fail;
      }
    }
    if (cands.empty()) {
      for (const auto& [lid, lin] : m.lineages) {
        if (hint != m.lineages.end() && &lin == &hint->second) continue;
        ViewRef v{&lin, last->t};
        if (!validate_view(m, invokes, client, v, limit)) cands.push_back(v);
      }
    }
    if (cands.empty()) {
      verdict.ok = false;
      verdict.witness = "no legal view explains client " +
                        std::to_string(client) + " (" + fail_msg + ")";
      return verdict;
    }
    candidates.push_back(std::move(cands));
  }

  // Choose one candidate per client such that all pairs are consistent.
  std::size_t n_active = active_clients.size();
  std::vector<std::size_t> pick(n_active, 0);
  std::size_t budget = kSearchBudget;
  std::string pairwise_witness;
  while (true) {
    if (budget-- == 0) {
      verdict.ok = false;
      verdict.witness = "view search budget exceeded";
      return verdict;
    }
    bool consistent = true;
    for (std::size_t i = 0; i < n_active && consistent; ++i) {
      for (std::size_t j = i + 1; j < n_active && consistent; ++j) {
        auto fail = check_pairwise(candidates[i][pick[i]], candidates[j][pick[j]]);
        if (fail) {
          consistent = false;
          pairwise_witness = *fail;
        }
      }
    }
    if (consistent) return verdict;  // ok

    // advance the assignment (odometer)
    std::size_t k = 0;
    while (k < n_active) {
      if (++pick[k] < candidates[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == n_active) break;  // exhausted
  }

  verdict.ok = false;
  verdict.witness = pairwise_witness.empty()
                        ? "no consistent view assignment exists"
                        : pairwise_witness;
  return verdict;
}

// ---- stability -----------------------------------------------------------

bool history_contains(const LineageInfo& lin, const OpInstance* inst) {
  return lin.history.size() >= inst->t && lin.history[inst->t - 1] == inst;
}

/// Earliest point at which `c` is stable among a majority, or nullopt.
std::optional<std::uint64_t> stable_point(const Model& m, const Completion& c) {
  if (!c.exec) return std::nullopt;
  const std::size_t need = m.n / 2 + 1;  // strict majority
  std::vector<std::uint64_t> times;
  times.push_back(c.resp_ts);  // always stable w.r.t. the owner
  for (const auto& [other, other_comps] : m.completions) {
    if (other == c.client) continue;
    std::uint64_t best = 0;
    bool found = false;
    for (const Completion& p : other_comps) {
      if (!p.exec || p.t <= c.t) continue;
      const LineageInfo& plin = m.lineages.at(p.exec->lineage);
      if (!history_contains(plin, c.exec)) continue;
      if (!found || p.resp_ts < best) {
        best = p.resp_ts;
        found = true;
      }
    }
    if (found) times.push_back(best);
  }
  if (times.size() < need) return std::nullopt;
  std::nth_element(times.begin(), times.begin() + (need - 1), times.end());
  return times[need - 1];
}

bool completion_is_stable(const Model& m, const Completion& c) {
  return stable_point(m, c).has_value();
}

StabilityReport run_stability(const Model& m) {
  StabilityReport report;
  for (const auto& [client, comps] : m.completions) {
    for (const Completion& c : comps) {
      StabilityEntry entry;
      entry.client = client;
      entry.t = c.t;
      entry.lineage = c.lineage;
      entry.resp_ts = c.resp_ts;
      entry.dummy = c.dummy;
      if (auto at = stable_point(m, c)) {
        entry.stable = true;
        entry.stable_ts = *at;
      }
      report.ops.push_back(entry);
    }
  }
  std::sort(report.ops.begin(), report.ops.end(),
            [](const StabilityEntry& a, const StabilityEntry& b) {
              return a.resp_ts < b.resp_ts;
            });
  return report;
}

}  // namespace

CheckerVerdict check_fork_linearizable(const Trace& trace) {
  InvokeIndex invokes;
  Model m = build_model(trace, invokes);
  return run_fork_linearizable(m, invokes, m.by_order.size());
}

StabilityReport stability_oracle(const Trace& trace) {
  InvokeIndex invokes;
  Model m = build_model(trace, invokes);
  return run_stability(m);
}

CheckerVerdict check_stable_subsequence_linearizable(const Trace& trace) {
  InvokeIndex invokes;
  Model m = build_model(trace, invokes);

  CheckerVerdict verdict;
  // Collect stable completions with their instances.
  struct StableOp {
    const Completion* c;
    const OpInstance* inst;
  };
  std::vector<StableOp> stable;
  for (const auto& [client, comps] : m.completions) {
    for (const Completion& c : comps) {
      if (c.exec && completion_is_stable(m, c)) stable.push_back({&c, c.exec});
    }
  }
  if (stable.empty()) return verdict;

  // All stable operations must lie on one branch prefix.
  const StableOp* deepest = &stable.front();
  for (const StableOp& s : stable) {
    if (s.inst->t > deepest->inst->t) deepest = &s;
  }
  const LineageInfo& lin = m.lineages.at(deepest->inst->lineage);
  for (const StableOp& s : stable) {
    if (!history_contains(lin, s.inst)) {
      std::ostringstream os;
      os << "stable operations span divergent branches: (client "
         << s.c->client << ", t=" << s.inst->t << ")";
      verdict.ok = false;
      verdict.witness = os.str();
      verdict.witness_ts = s.c->resp_ts;
      return verdict;
    }
    // Legality against the replayed prefix.
    if (!s.c->dummy && lin.replay[s.inst->t - 1] != s.c->result) {
      verdict.ok = false;
      verdict.witness = "stable operation's result disagrees with replay";
      verdict.witness_ts = s.c->resp_ts;
      return verdict;
    }
  }
  // Real-time order among stable operations follows sequence order.
  for (const StableOp& a : stable) {
    for (const StableOp& b : stable) {
      if (a.c->resp_ts < b.c->invoke_ts && a.inst->t > b.inst->t) {
        verdict.ok = false;
        verdict.witness = "stable subsequence contradicts real-time order";
        verdict.witness_ts = b.c->resp_ts;
        return verdict;
      }
    }
  }
  return verdict;
}

QCrossCheck check_reported_stability(const Trace& trace) {
  InvokeIndex invokes;
  Model m = build_model(trace, invokes);
  QCrossCheck out;

  // Stable sequence numbers never decrease at any single client.
  for (const auto& [client, comps] : m.completions) {
    std::uint64_t prev = 0;
    for (const Completion& c : comps) {
      if (c.q < prev) out.q_monotone = false;
      prev = c.q;
    }
  }

  if (m.lineages.size() != 1) {
    out.details.push_back("exec cross-check skipped: trace has forked lineages");
    return out;
  }
  const LineageInfo& lin = m.lineages.at(1);

  std::map<std::uint32_t, std::uint64_t> acked;  // client -> last acked seq
  std::uint64_t prev_q = 0;
  for (const OpInstance* inst : lin.history) {
    acked[inst->client] = inst->t_c;

    // Literal evaluation: an acknowledged operation s of client j is
    // majority-stable once the owner (free) plus the clients whose
    // acknowledgments strictly exceed s form a strict majority.
    std::uint64_t expect = 0;
    for (const auto& [j, s] : acked) {
      if (s == 0 || s <= expect) continue;
      std::size_t count = 1;  // owner
      for (const auto& [k, a] : acked) {
        if (k != j && a > s) ++count;
      }
      if (count * 2 > m.n) expect = s;
    }

    ++out.checked;
    if (inst->q != expect) {
      ++out.mismatches;
      if (out.details.size() < 8) {
        std::ostringstream os;
        os << "t=" << inst->t << " reported q=" << inst->q
           << " definition gives " << expect;
        out.details.push_back(os.str());
      }
    }
    if (inst->q < prev_q) out.q_monotone = false;
    prev_q = inst->q;
  }
  return out;
}

std::string TraceVerdict::summary() const {
  std::ostringstream os;
  if (fork_linearizable.ok) {
    os << "fork-linearizable";
  } else {
    os << "fork-linearizability violated (" << fork_linearizable.witness << ")";
  }
  if (any_party_violation) {
    os << "; violation raised at ts=" << first_violation_ts;
  } else {
    os << "; no violations raised";
  }
  if (undetected_inconsistency) os << "; UNDETECTED INCONSISTENCY";
  return os.str();
}

TraceVerdict evaluate_trace(const Trace& trace) {
  InvokeIndex invokes;
  Model m = build_model(trace, invokes);
  TraceVerdict v;

  v.fork_linearizable = run_fork_linearizable(m, invokes, m.by_order.size());
  if (!v.fork_linearizable.ok && !m.by_order.empty()) {
    // Earliest completion prefix at which the violation appears; the
    // property is monotone, so binary search applies.
    std::size_t lo = 1, hi = m.by_order.size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (run_fork_linearizable(m, invokes, mid).ok) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    v.fork_linearizable.witness_ts = m.by_order[lo - 1]->resp_ts;
  }

  v.stable_subsequence = check_stable_subsequence_linearizable(trace);

  if (!m.party_violations.empty()) {
    v.any_party_violation = true;
    v.first_violation_ts = m.party_violations.front().second;
    for (const auto& [party, ts] : m.party_violations) {
      v.first_violation_ts = std::min(v.first_violation_ts, ts);
    }
  }
  if (!v.fork_linearizable.ok) {
    v.undetected_inconsistency =
        !v.any_party_violation ||
        v.first_violation_ts > v.fork_linearizable.witness_ts;
  }
  return v;
}

}  // namespace lcm
