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

#include "sase/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sase/errors.hpp"
#include "sase/rng.hpp"

namespace sase {

std::string_view to_string(UncertaintyLocation l) {
    switch (l) {
        case UncertaintyLocation::Monitoring: return "monitoring";
        case UncertaintyLocation::Environment: return "environment";
        case UncertaintyLocation::InternalModel: return "internal_model";
    }
    return "environment";
}

std::string_view to_string(UncertaintyNature n) {
    return n == UncertaintyNature::Variability ? "variability" : "lack_of_knowledge";
}

std::optional<UncertaintyLocation> uncertainty_location_from_string(std::string_view s) {
    if (s == "monitoring") return UncertaintyLocation::Monitoring;
    if (s == "environment") return UncertaintyLocation::Environment;
    if (s == "internal_model") return UncertaintyLocation::InternalModel;
    return std::nullopt;
}

std::optional<UncertaintyNature> uncertainty_nature_from_string(std::string_view s) {
    if (s == "variability") return UncertaintyNature::Variability;
    if (s == "lack_of_knowledge") return UncertaintyNature::LackOfKnowledge;
    return std::nullopt;
}

Interval perturbation_interval(const UncertaintyDescriptor& descriptor,
                               const AttributeSchema& attr, double value) {
    if (!attr.is_numeric())
        throw UnsupportedError("uncertainty on categorical attribute '" + attr.name +
                               "' is not supported");
    const double half_width = descriptor.level * (attr.max - attr.min) / 2.0;
    Interval iv;
    iv.lo = std::max(attr.min, value - half_width);
    iv.hi = std::min(attr.max, value + half_width);
    return iv;
}

namespace {

struct ActiveDescriptor {
    const UncertaintyDescriptor* descriptor;
    const AttributeSchema* attr;
    Interval interval;
};

}  // namespace

double expected_utility(const UtilitySpec& spec, const MetricFn& metric_fn,
                        const SystemState& state, const UncertaintyModel& model,
                        const SchemaSet& schema, std::uint64_t* utility_evals) {
    auto eval = [&](const SystemState& s) {
        if (utility_evals) ++*utility_evals;
        return utility(spec, metric_fn(s));
    };

    if (model.empty()) return eval(state);

    // Map order keeps the grid enumeration and sampling order fixed.
    // Degenerate (level 0 or fully clipped) intervals are pinned up front,
    // which keeps the level-zero case bit-exact against utility().
    std::vector<ActiveDescriptor> lok;
    std::vector<ActiveDescriptor> var;
    for (const auto& [name, descriptor] : model.descriptors) {
        const AttributeSchema* attr = schema.find(name);
        if (!attr) throw ConfigError("uncertainty descriptor on unknown attribute '" + name + "'");
        auto it = state.values.find(name);
        if (it == state.values.end() || !is_number(it->second))
            throw ContractError("state misses numeric attribute '" + name + "'");
        ActiveDescriptor a{&descriptor, attr,
                           perturbation_interval(descriptor, *attr, as_number(it->second))};
        if (a.interval.lo == a.interval.hi) continue;
        (descriptor.nature == UncertaintyNature::LackOfKnowledge ? lok : var)
            .push_back(std::move(a));
    }
    if (lok.empty() && var.empty()) return eval(state);

    const int grid_points = std::max(2, model.lok_grid_points);
    std::uint64_t grid_size = 1;
    for (std::size_t i = 0; i < lok.size(); ++i) grid_size *= static_cast<std::uint64_t>(grid_points);

    const int samples = std::max(1, model.sample_count);

    double worst = 2.0;  // above any utility
    for (std::uint64_t grid_index = 0; grid_index < grid_size; ++grid_index) {
        SystemState base = state;
        std::uint64_t rest = grid_index;
        for (const auto& a : lok) {
            const auto step = rest % static_cast<std::uint64_t>(grid_points);
            rest /= static_cast<std::uint64_t>(grid_points);
            const double t = static_cast<double>(step) / static_cast<double>(grid_points - 1);
            base.values[a.descriptor->attribute] =
                a.interval.lo + t * (a.interval.hi - a.interval.lo);
        }

        double average;
        if (var.empty()) {
            average = eval(base);
        } else {
            SplitMix64 rng(derive_seed(model.seed, grid_index));
            double sum = 0.0;
            for (int n = 0; n < samples; ++n) {
                SystemState sample = base;
                for (const auto& a : var)
                    sample.values[a.descriptor->attribute] =
                        rng.next_in(a.interval.lo, a.interval.hi);
                sum += eval(sample);
            }
            average = sum / static_cast<double>(samples);
        }
        worst = std::min(worst, average);
    }
    return worst;
}

double quantify_level_from_trace(std::span<const double> window, const AttributeSchema& attr) {
    if (!attr.is_numeric())
        throw UnsupportedError("uncertainty level for categorical attribute '" + attr.name + "'");
    if (window.size() < 2)
        throw InsufficientDataError("uncertainty level needs a window of at least 2 observations");
    double mean = 0.0;
    for (double x : window) mean += x;
    mean /= static_cast<double>(window.size());
    double variance = 0.0;
    for (double x : window) variance += (x - mean) * (x - mean);
    variance /= static_cast<double>(window.size());
    const double level = 4.0 * std::sqrt(variance) / (attr.max - attr.min);
    return std::clamp(level, 0.0, 1.0);
}

}  // namespace sase
