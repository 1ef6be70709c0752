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

#ifndef LCM_WORKLOAD_HPP_
#define LCM_WORKLOAD_HPP_

#include <cstdint>
#include <vector>

#include "lcm/kvs.hpp"

namespace lcm {

/// Deterministic splitmix64 generator. Simulation reproducibility depends
/// on this being fully specified, unlike <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next();
  /// Uniform in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);
  bool chance_pct(std::uint32_t pct);

 private:
  std::uint64_t state_;
};

/// Benchmark-style workload: a put/get(/del) mix over a fixed object
/// universe. The default mirrors a 50/50 read-update mix.
struct WorkloadSpec {
  std::uint32_t mix_put_pct = 50;
  std::uint32_t mix_get_pct = 50;
  std::uint32_t mix_del_pct = 0;
  std::uint32_t object_count = 100;
  std::uint32_t value_size = 64;
  std::uint32_t ops_per_client = 20;
  /// Give each client its own key namespace; cross-client operation order
  /// then cannot affect the final state (used by equivalence tests).
  bool disjoint_keys = false;

  void validate() const;  // throws ConfigError unless mix sums to 100
};

/// Pre-generates each client's operation script so a run is a pure
/// function of (spec, seed).
std::vector<std::vector<KvsOperation>> generate_scripts(
    const WorkloadSpec& spec, std::uint32_t n_clients, std::uint64_t seed);

}  // namespace lcm

#endif  // LCM_WORKLOAD_HPP_
