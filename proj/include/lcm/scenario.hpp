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

#ifndef LCM_SCENARIO_HPP_
#define LCM_SCENARIO_HPP_

#include <iosfwd>
#include <string>

#include "lcm/sim.hpp"

namespace lcm {

/// A parsed scenario file: simulation configuration plus the adversary
/// script. The format is line-oriented `key = value` pairs with `action`
/// lines for the script; see docs/scenario_format.md.
struct Scenario {
  SimConfig config;
  AdversaryScript script;
};

Scenario parse_scenario(std::istream& in,
                        const std::string& source_name = "<stream>");
Scenario load_scenario(const std::string& path);

}  // namespace lcm

#endif  // LCM_SCENARIO_HPP_
