// Copyright 2026 The sase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SASE_RUNTIME_HPP
#define SASE_RUNTIME_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sase/engine.hpp"
#include "sase/scenario.hpp"

namespace sase {

/// Everything observed and decided at one tick of the mediator loop.
struct TickRecord {
    std::int64_t tick = 0;
    SystemState observed;
    ValueMap derived_values;
    double utility_value = 0.0;
    double expected_utility_value = 0.0;
    UtilityClass classification = UtilityClass::Ok;
    bool triggered = false;
    std::optional<AdaptationResponse> response;
    std::size_t kb_size = 0;
};

/// The adaptation mediator: per tick it observes the simulated system,
/// computes utility and uncertainty-aware expected utility, and calls the
/// engine when the expected utility breaches or approaches the threshold.
///
/// A response issued at tick t takes effect at tick t+1 (one-tick actuation
/// latency); the provenance case is then revised with tick t+1's realized
/// expected utility. Deterministic end to end under fixed seeds.
std::vector<TickRecord> run_loop(const Scenario& scenario, KnowledgeBase& kb, std::int64_t ticks);

inline constexpr std::string_view kMetricsCsvHeader =
    "tick,utility,expected_utility,classification,triggered,provenance,case_id,"
    "threshold_met,eval_count,elapsed_us,kb_size";

/// CSV rendering of the records: fixed column order, shortest-round-trip
/// reals, LF line endings, response columns empty on non-triggered ticks.
std::string metrics_csv(std::span<const TickRecord> records);

}  // namespace sase

#endif  // SASE_RUNTIME_HPP
