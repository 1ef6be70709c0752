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

#ifndef LCM_FUZZ_HPP_
#define LCM_FUZZ_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lcm/sim.hpp"

namespace lcm {

struct FuzzOptions {
  std::uint64_t first_seed = 1;
  std::uint64_t runs = 1000;
  std::uint32_t attack_budget = 8;  // 0 = correct-server control
  std::uint32_t n_clients = 3;
  std::uint32_t ops_per_client = 33;
  std::uint32_t batch_size = 1;
  std::uint32_t threads = 1;
};

struct FuzzSummary {
  std::uint64_t runs = 0;
  std::uint64_t runs_with_detection = 0;   // >= 1 violation raised
  std::uint64_t violations_total = 0;
  std::uint64_t undetected_inconsistencies = 0;
  std::uint64_t incomplete_runs = 0;  // some client never finished
  std::vector<std::uint64_t> failing_seeds;

  bool sound(bool expect_progress) const {
    if (undetected_inconsistencies != 0) return false;
    if (expect_progress && (violations_total != 0 || incomplete_runs != 0)) {
      return false;
    }
    return true;
  }
};

/// Derives a deterministic adversary script from a seed within the given
/// action budget.
AdversaryScript random_script(std::uint64_t seed, std::uint32_t budget,
                              std::uint32_t n_clients,
                              std::uint64_t approx_ops);

/// Runs `runs` seeded simulations, checks every trace and tallies the
/// results. With attack_budget == 0 this is the correct-server control.
FuzzSummary run_fuzz(const FuzzOptions& opt);

}  // namespace lcm

#endif  // LCM_FUZZ_HPP_
