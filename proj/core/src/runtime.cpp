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

#include "sase/runtime.hpp"

#include "sase/errors.hpp"

namespace sase {

std::vector<TickRecord> run_loop(const Scenario& scenario, KnowledgeBase& kb, std::int64_t ticks) {
    if (kb.schema_fingerprint() != scenario.schema.fingerprint())
        throw CompatError("knowledge base does not match the scenario schema");

    const EngineContext ctx = scenario.engine_context();
    const double ut = scenario.utility_spec.threshold;
    const double margin = scenario.utility_spec.approach_margin;

    std::vector<TickRecord> records;
    records.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, ticks)));

    Solution controllables = scenario.initial_controllables;
    std::optional<CaseId> pending_revision;

    for (std::int64_t tick = 0; tick < ticks; ++tick) {
        TickRecord record;
        record.tick = tick;
        try {
            record.observed = sim_step(scenario, tick, controllables);
            const ExtendedState extended = compute_metrics(scenario, record.observed);
            for (const auto& metric : scenario.derived)
                record.derived_values.emplace(metric.name, extended.at(metric.name));

            record.utility_value = utility(scenario.utility_spec, extended);
            record.expected_utility_value =
                expected_utility(scenario.utility_spec, ctx.metrics, record.observed,
                                 scenario.uncertainty, scenario.schema);

            // The case acted on last tick is judged by what it realized now.
            if (pending_revision) {
                engine::revise(kb, *pending_revision, record.expected_utility_value, ut);
                pending_revision.reset();
            }

            record.classification = threshold_check(record.expected_utility_value, ut, margin);
            record.triggered = record.classification != UtilityClass::Ok;

            if (record.triggered) {
                AdaptationRequest request;
                request.state = record.observed;
                request.trigger_utility = record.expected_utility_value;
                request.tick = tick;

                AdaptationResponse response = engine::adapt(kb, request, ctx);
                // Actuation lands on the next observation, never this one.
                const SystemState next =
                    merge_solution(scenario.schema, record.observed, response.solution);
                controllables.clear();
                for (const auto& attr : scenario.schema.attributes())
                    if (attr.controllable)
                        controllables.emplace(attr.name, next.values.at(attr.name));
                pending_revision = response.case_id;
                record.response = std::move(response);
            }
        } catch (const Error& e) {
            throw Error("tick " + std::to_string(tick) + ": " + e.what());
        }
        record.kb_size = kb.size();
        records.push_back(std::move(record));
    }
    return records;
}

std::string metrics_csv(std::span<const TickRecord> records) {
    std::string out(kMetricsCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.tick);
        out += ',';
        out += format_double(r.utility_value);
        out += ',';
        out += format_double(r.expected_utility_value);
        out += ',';
        out += to_string(r.classification);
        out += ',';
        out += r.triggered ? "true" : "false";
        out += ',';
        if (r.response) {
            const auto& resp = *r.response;
            out += to_string(resp.provenance);
            out += ',';
            out += std::to_string(resp.case_id);
            out += ',';
            out += resp.threshold_met ? "true" : "false";
            out += ',';
            out += std::to_string(resp.eval_count);
            out += ',';
            out += std::to_string(resp.elapsed.count());
            out += ',';
        } else {
            out += ",,,,,";
        }
        out += std::to_string(r.kb_size);
        out += '\n';
    }
    return out;
}

}  // namespace sase
