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

#ifndef SASE_TESTS_FIXTURES_HPP
#define SASE_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sase/case.hpp"
#include "sase/knowledge_base.hpp"
#include "sase/quality.hpp"
#include "sase/rng.hpp"
#include "sase/scenario.hpp"
#include "sase/schema.hpp"
#include "sase/uncertainty.hpp"

namespace fixtures {

/// The reference web-service tuning scenario, embedded so unit tests do not
/// depend on repository paths. Matches scenarios/webservice-v1.json.
inline const char* webservice_json() {
    return R"json({
  "name": "webservice-v1",
  "attributes": [
    {"name": "threads", "kind": "numeric", "min": 1, "max": 64,
     "integer_valued": true, "unit": "threads", "controllable": true},
    {"name": "cache_mb", "kind": "numeric", "min": 0, "max": 1024,
     "unit": "MiB", "controllable": true},
    {"name": "arrival_rate", "kind": "numeric", "min": 0, "max": 1000,
     "unit": "req/s", "controllable": false}
  ],
  "derived": [
    {"name": "resp_time",
     "expression": "(arrival_rate / (threads * 20)) * (1.5 - min(1.0, cache_mb / 1024))"},
    {"name": "cost", "expression": "(threads / 64) * 0.5 + (cache_mb / 1024) * 0.5"}
  ],
  "utility": {
    "terms": [
      {"attribute": "resp_time", "curve": {"kind": "linear_dec", "lo": 0.5, "hi": 5.0},
       "weight": 0.7},
      {"attribute": "cost", "curve": {"kind": "linear_dec", "lo": 0, "hi": 1}, "weight": 0.3}
    ],
    "threshold": 0.7,
    "approach_margin": 0.05
  },
  "uncertainty": {
    "descriptors": [
      {"attribute": "arrival_rate", "location": "environment", "level": 0.05,
       "nature": "variability"}
    ],
    "sample_count": 64,
    "lok_grid_points": 3,
    "seed": 7
  },
  "environment": [
    {"from_tick": 0, "assignments": {"arrival_rate": 100}},
    {"from_tick": 50, "assignments": {"arrival_rate": 800}}
  ],
  "initial_controllables": {"threads": 8, "cache_mb": 256},
  "engine": {"beta": 0.8, "alpha": 0.5, "gamma": 0.98, "grid_points_per_numeric": 17,
             "max_passes": 10, "satisficing": true, "exclude_failed": true},
  "seed": 42
})json";
}

inline sase::Scenario webservice_scenario() { return sase::load_scenario(webservice_json()); }

/// Same scenario without an uncertainty model, for tests where expected
/// utility must equal plain utility.
inline sase::Scenario webservice_scenario_certain() {
    sase::Scenario s = webservice_scenario();
    s.uncertainty = sase::UncertaintyModel{};
    return s;
}

inline sase::SystemState webservice_state(double threads, double cache_mb, double arrival_rate) {
    sase::SystemState state;
    state.values["threads"] = threads;
    state.values["cache_mb"] = cache_mb;
    state.values["arrival_rate"] = arrival_rate;
    return state;
}

/// Hand-arithmetic recomputation of the web-service derived metrics,
/// independent of the expression evaluator.
inline sase::ExtendedState webservice_metrics_by_hand(const sase::SystemState& state) {
    const double threads = sase::as_number(state.values.at("threads"));
    const double cache_mb = sase::as_number(state.values.at("cache_mb"));
    const double rate = sase::as_number(state.values.at("arrival_rate"));
    sase::ExtendedState extended = state.values;
    extended["resp_time"] = (rate / (threads * 20.0)) * (1.5 - std::min(1.0, cache_mb / 1024.0));
    extended["cost"] = (threads / 64.0) * 0.5 + (cache_mb / 1024.0) * 0.5;
    return extended;
}

/// Uniformly random valid state over a schema, integer-rounded where the
/// schema demands it.
inline sase::SystemState random_state(const sase::SchemaSet& schema, sase::SplitMix64& rng) {
    sase::SystemState state;
    for (const auto& attr : schema.attributes()) {
        if (attr.is_numeric()) {
            double x = attr.min + rng.next_double() * (attr.max - attr.min);
            if (attr.integer_valued) x = std::round(x);
            state.values[attr.name] = std::clamp(x, attr.min, attr.max);
        } else {
            const auto index = rng.next_u64() % attr.allowed.size();
            state.values[attr.name] = attr.allowed[index];
        }
    }
    return state;
}

inline sase::Solution random_solution(const sase::SchemaSet& schema, sase::SplitMix64& rng) {
    sase::Solution solution;
    const sase::SystemState state = random_state(schema, rng);
    for (const auto& attr : schema.attributes())
        if (attr.controllable) solution.emplace(attr.name, state.values.at(attr.name));
    return solution;
}

/// Random KB over the schema: mixed sources, outcomes and use counts.
inline sase::KnowledgeBase random_kb(const sase::SchemaSet& schema, std::size_t cases,
                                     sase::SplitMix64& rng) {
    sase::KnowledgeBase kb(schema);
    for (std::size_t i = 0; i < cases; ++i) {
        sase::Case draft;
        draft.problem = random_state(schema, rng);
        draft.solution = random_solution(schema, rng);
        draft.predicted_utility = rng.next_double();
        const auto outcome_pick = rng.next_u64() % 4;
        if (outcome_pick == 1) {
            draft.outcome.status = sase::OutcomeStatus::Confirmed;
            draft.outcome.realized_utility = rng.next_double();
        } else if (outcome_pick == 2) {
            draft.outcome.status = sase::OutcomeStatus::Failed;
            draft.outcome.realized_utility = rng.next_double();
        }
        draft.source =
            (rng.next_u64() % 3 == 0) ? sase::CaseSource::Seeded : sase::CaseSource::Constructed;
        draft.use_count = static_cast<std::int64_t>(rng.next_u64() % 5);
        kb.insert(std::move(draft));
    }
    return kb;
}

}  // namespace fixtures

#endif  // SASE_TESTS_FIXTURES_HPP
