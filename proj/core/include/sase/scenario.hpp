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

#ifndef SASE_SCENARIO_HPP
#define SASE_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sase/engine.hpp"
#include "sase/errors.hpp"
#include "sase/expression.hpp"
#include "sase/quality.hpp"
#include "sase/schema.hpp"
#include "sase/uncertainty.hpp"

namespace sase {

/// A named metric computed from raw attributes and earlier derived metrics.
struct DerivedMetric {
    std::string name;
    Expression expression;
};

struct NoiseSpec {
    std::string attribute;
    double amplitude = 0.0;
};

/// Environment attribute values from `from_tick` onward, optionally with
/// uniform noise on one attribute.
struct EnvironmentSegment {
    std::int64_t from_tick = 0;
    ValueMap assignments;
    std::optional<NoiseSpec> noise;
};

/// A scenario-driven stand-in for the managed system plus everything the
/// engine needs to adapt it.
struct Scenario {
    std::string name;
    SchemaSet schema;
    std::vector<DerivedMetric> derived;
    UtilitySpec utility_spec;
    SimilarityConfig similarity;
    UncertaintyModel uncertainty;
    std::vector<EnvironmentSegment> environment;
    Solution initial_controllables;
    EngineConfig engine_config;
    std::uint64_t seed = 0;

    /// Metric function over this scenario; the scenario must outlive it.
    MetricFn metric_fn() const;

    /// Engine context over this scenario; the scenario must outlive it.
    EngineContext engine_context() const;
};

/// Scenario problems found while loading; carries every violation.
class ScenarioError : public Error {
public:
    explicit ScenarioError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Parses and fully validates a scenario document. Throws ScenarioError
/// listing every violation; unknown keys are rejected.
Scenario load_scenario(std::string_view json_text);

/// Reads and loads a scenario file. Throws FormatError when the file
/// cannot be read.
Scenario load_scenario_file(const std::filesystem::path& path);

/// Raw state extended with the derived metrics, evaluated in declaration
/// order so earlier metrics are visible to later ones.
ExtendedState compute_metrics(const Scenario& scenario, const SystemState& state);

/// One observation of the managed system: active-segment environment
/// values (plus configured noise, clamped to range) and the controllables
/// passed through. Deterministic in (scenario seed, tick).
SystemState sim_step(const Scenario& scenario, std::int64_t tick, const Solution& controllables);

}  // namespace sase

#endif  // SASE_SCENARIO_HPP
