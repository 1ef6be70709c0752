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

#include "lcm/workload.hpp"

#include <string>

#include "lcm/errors.hpp"

namespace lcm {

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw LcmError("Rng::below(0)");
  return next() % bound;
}

std::uint64_t Rng::range(std::uint64_t lo, std::uint64_t hi) {
  return lo + below(hi - lo + 1);
}

bool Rng::chance_pct(std::uint32_t pct) {
  return below(100) < pct;
}

void WorkloadSpec::validate() const {
  if (mix_put_pct + mix_get_pct + mix_del_pct != 100) {
    throw ConfigError("operation mix must sum to 100%");
  }
  if (object_count == 0) throw ConfigError("object_count must be >= 1");
}

namespace {

Bytes object_key(std::uint64_t index) {
  return to_bytes("user" + std::to_string(index));
}

Bytes client_key(std::uint32_t client, std::uint64_t index) {
  return to_bytes("c" + std::to_string(client) + "-user" + std::to_string(index));
}

Bytes random_value(Rng& rng, std::uint32_t size) {
  Bytes v(size);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.below(256));
  return v;
}

}  // namespace

std::vector<std::vector<KvsOperation>> generate_scripts(
    const WorkloadSpec& spec, std::uint32_t n_clients, std::uint64_t seed) {
  spec.validate();
  std::vector<std::vector<KvsOperation>> scripts(n_clients);
  for (std::uint32_t c = 0; c < n_clients; ++c) {
    Rng rng(seed * 0x10001ull + c + 1);
    auto& script = scripts[c];
    script.reserve(spec.ops_per_client);
    for (std::uint32_t i = 0; i < spec.ops_per_client; ++i) {
      std::uint64_t roll = rng.below(100);
      Bytes key = spec.disjoint_keys
                      ? client_key(c + 1, rng.below(spec.object_count))
                      : object_key(rng.below(spec.object_count));
      KvsOperation op;
      if (roll < spec.mix_put_pct) {
        op = KvsOperation{KvsKind::kPut, key, random_value(rng, spec.value_size)};
      } else if (roll < spec.mix_put_pct + spec.mix_get_pct) {
        op = KvsOperation{KvsKind::kGet, key, {}};
      } else {
        op = KvsOperation{KvsKind::kDel, key, {}};
      }
      script.push_back(std::move(op));
    }
  }
  return scripts;
}

}  // namespace lcm
