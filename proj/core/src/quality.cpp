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

#include "sase/quality.hpp"

#include <algorithm>
#include <cmath>

#include "sase/errors.hpp"

namespace sase {

UtilityCurve UtilityCurve::linear_inc(double lo, double hi) {
    UtilityCurve c;
    c.kind = Kind::LinearInc;
    c.lo = lo;
    c.hi = hi;
    return c;
}

UtilityCurve UtilityCurve::linear_dec(double lo, double hi) {
    UtilityCurve c;
    c.kind = Kind::LinearDec;
    c.lo = lo;
    c.hi = hi;
    return c;
}

UtilityCurve UtilityCurve::target(double peak, double tolerance) {
    UtilityCurve c;
    c.kind = Kind::Target;
    c.peak = peak;
    c.tolerance = tolerance;
    return c;
}

UtilityCurve UtilityCurve::step(double threshold, StepSide high_side) {
    UtilityCurve c;
    c.kind = Kind::Step;
    c.threshold = threshold;
    c.high_side = high_side;
    return c;
}

double curve_eval(const UtilityCurve& curve, double x) {
    switch (curve.kind) {
        case UtilityCurve::Kind::LinearInc:
            if (x <= curve.lo) return 0.0;
            if (x >= curve.hi) return 1.0;
            return (x - curve.lo) / (curve.hi - curve.lo);
        case UtilityCurve::Kind::LinearDec:
            if (x <= curve.lo) return 1.0;
            if (x >= curve.hi) return 0.0;
            return (curve.hi - x) / (curve.hi - curve.lo);
        case UtilityCurve::Kind::Target:
            return std::max(0.0, 1.0 - std::abs(x - curve.peak) / curve.tolerance);
        case UtilityCurve::Kind::Step:
            // Ties sit on the high side.
            if (curve.high_side == UtilityCurve::StepSide::Above)
                return x >= curve.threshold ? 1.0 : 0.0;
            return x <= curve.threshold ? 1.0 : 0.0;
    }
    return 0.0;
}

double utility(const UtilitySpec& spec, const ExtendedState& extended) {
    if (spec.terms.empty()) throw ConfigError("utility spec has no terms");
    double weight_sum = 0.0;
    for (const auto& term : spec.terms) {
        if (!(term.weight > 0.0))
            throw ConfigError("utility term '" + term.attribute + "' requires a positive weight");
        weight_sum += term.weight;
    }
    double u = 0.0;
    for (const auto& term : spec.terms) {
        auto it = extended.find(term.attribute);
        if (it == extended.end())
            throw ContractError("utility term references missing name '" + term.attribute + "'");
        if (!is_number(it->second))
            throw ContractError("utility term '" + term.attribute + "' is not numeric");
        u += (term.weight / weight_sum) * curve_eval(term.curve, as_number(it->second));
    }
    return u;
}

SimilarityConfig SimilarityConfig::from_schema(const SchemaSet& schema) {
    double sum = 0.0;
    for (const auto& attr : schema.attributes()) sum += attr.similarity_weight;
    if (!(sum > 0.0))
        throw ConfigError("no attribute has a positive similarity weight");
    SimilarityConfig config;
    for (const auto& attr : schema.attributes())
        if (attr.similarity_weight > 0.0)
            config.weights.emplace(attr.name, attr.similarity_weight / sum);
    return config;
}

double local_similarity(const AttributeSchema& attr, const Value& a, const Value& b) {
    auto ra = check_value(attr, a);
    auto rb = check_value(attr, b);
    if (!ra.ok() || !rb.ok())
        throw ContractError("local_similarity on nonconforming value for '" + attr.name + "'");
    if (attr.is_numeric())
        return 1.0 - std::abs(as_number(a) - as_number(b)) / (attr.max - attr.min);
    return as_label(a) == as_label(b) ? 1.0 : 0.0;
}

double similarity(const SimilarityConfig& config, const SchemaSet& schema, const SystemState& a,
                  const SystemState& b) {
    if (config.weights.empty()) throw ConfigError("similarity config has no weighted attribute");
    double sim = 0.0;
    for (const auto& [name, weight] : config.weights) {
        const AttributeSchema* attr = schema.find(name);
        if (!attr) throw ConfigError("similarity weight on unknown attribute '" + name + "'");
        auto ia = a.values.find(name);
        auto ib = b.values.find(name);
        if (ia == a.values.end() || ib == b.values.end())
            throw ContractError("state misses weighted attribute '" + name + "'");
        sim += weight * local_similarity(*attr, ia->second, ib->second);
    }
    return sim;
}

std::string_view to_string(UtilityClass c) {
    switch (c) {
        case UtilityClass::Ok: return "ok";
        case UtilityClass::Approaching: return "approaching";
        case UtilityClass::Breached: return "breached";
    }
    return "ok";
}

UtilityClass threshold_check(double u, double ut, double margin) {
    if (u < ut) return UtilityClass::Breached;
    if (u < ut + margin) return UtilityClass::Approaching;
    return UtilityClass::Ok;
}

}  // namespace sase
