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

#include "sase/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sase/errors.hpp"
#include "sase/rng.hpp"

namespace sase {

namespace {

using Json = nlohmann::json;

/// Collects violations while walking the document; loading aborts with all
/// of them at the end, so a broken scenario reports everything at once.
struct Violations {
    std::vector<std::string> list;

    void add(std::string v) { list.push_back(std::move(v)); }
    bool empty() const { return list.empty(); }
};

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where,
                Violations& issues) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) issues.add(where + ": unknown key '" + key + "'");
}

bool get_double(const Json& obj, const std::string& key, const std::string& where, double& out,
                Violations& issues) {
    if (!obj.contains(key)) {
        issues.add(where + ": missing '" + key + "'");
        return false;
    }
    if (!obj[key].is_number()) {
        issues.add(where + ": '" + key + "' must be a number");
        return false;
    }
    out = obj[key].get<double>();
    return true;
}

std::optional<Value> json_to_value(const Json& j) {
    if (j.is_number()) return Value(j.get<double>());
    if (j.is_string()) return Value(j.get<std::string>());
    return std::nullopt;
}

std::vector<AttributeSchema> parse_attributes(const Json& doc, Violations& issues) {
    std::vector<AttributeSchema> attrs;
    if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
        issues.add("scenario: missing 'attributes' array");
        return attrs;
    }
    std::size_t index = 0;
    for (const auto& aj : doc["attributes"]) {
        const std::string where = "attributes[" + std::to_string(index++) + "]";
        if (!aj.is_object()) {
            issues.add(where + ": expected an object");
            continue;
        }
        AttributeSchema a;
        if (!aj.contains("name") || !aj["name"].is_string()) {
            issues.add(where + ": missing string 'name'");
            continue;
        }
        a.name = aj["name"].get<std::string>();
        const std::string kind =
            aj.contains("kind") && aj["kind"].is_string() ? aj["kind"].get<std::string>() : "";
        if (kind == "numeric") {
            a.kind = AttributeKind::Numeric;
            check_keys(aj,
                       {"name", "kind", "min", "max", "integer_valued", "unit", "controllable",
                        "similarity_weight"},
                       where, issues);
            get_double(aj, "min", where, a.min, issues);
            get_double(aj, "max", where, a.max, issues);
            if (aj.contains("integer_valued")) {
                if (aj["integer_valued"].is_boolean())
                    a.integer_valued = aj["integer_valued"].get<bool>();
                else
                    issues.add(where + ": 'integer_valued' must be a boolean");
            }
            if (aj.contains("unit")) {
                if (aj["unit"].is_string())
                    a.unit = aj["unit"].get<std::string>();
                else
                    issues.add(where + ": 'unit' must be a string");
            }
        } else if (kind == "categorical") {
            a.kind = AttributeKind::Categorical;
            check_keys(aj, {"name", "kind", "allowed", "controllable", "similarity_weight"},
                       where, issues);
            if (!aj.contains("allowed") || !aj["allowed"].is_array()) {
                issues.add(where + ": categorical attribute needs an 'allowed' array");
            } else {
                for (const auto& label : aj["allowed"]) {
                    if (label.is_string())
                        a.allowed.push_back(label.get<std::string>());
                    else
                        issues.add(where + ": allowed labels must be strings");
                }
            }
        } else {
            issues.add(where + ": 'kind' must be \"numeric\" or \"categorical\"");
            continue;
        }
        if (aj.contains("controllable")) {
            if (aj["controllable"].is_boolean())
                a.controllable = aj["controllable"].get<bool>();
            else
                issues.add(where + ": 'controllable' must be a boolean");
        }
        if (aj.contains("similarity_weight")) {
            if (aj["similarity_weight"].is_number())
                a.similarity_weight = aj["similarity_weight"].get<double>();
            else
                issues.add(where + ": 'similarity_weight' must be a number");
        } else {
            // Retrieval matches the problem context by default: knobs get
            // no weight, observed attributes share it uniformly.
            a.similarity_weight = a.controllable ? 0.0 : 1.0;
        }
        attrs.push_back(std::move(a));
    }
    return attrs;
}

std::optional<UtilityCurve> parse_curve(const Json& cj, const std::string& where,
                                        Violations& issues) {
    if (!cj.is_object()) {
        issues.add(where + ": expected a curve object");
        return std::nullopt;
    }
    if (!cj.contains("kind") || !cj["kind"].is_string()) {
        issues.add(where + ": missing curve 'kind'");
        return std::nullopt;
    }
    const std::string kind = cj["kind"].get<std::string>();
    if (kind == "linear_inc" || kind == "linear_dec") {
        check_keys(cj, {"kind", "lo", "hi"}, where, issues);
        double lo = 0, hi = 1;
        if (!get_double(cj, "lo", where, lo, issues) || !get_double(cj, "hi", where, hi, issues))
            return std::nullopt;
        if (!(lo < hi)) {
            issues.add(where + ": curve requires lo < hi");
            return std::nullopt;
        }
        return kind == "linear_inc" ? UtilityCurve::linear_inc(lo, hi)
                                    : UtilityCurve::linear_dec(lo, hi);
    }
    if (kind == "target") {
        check_keys(cj, {"kind", "peak", "tolerance"}, where, issues);
        double peak = 0, tolerance = 1;
        if (!get_double(cj, "peak", where, peak, issues) ||
            !get_double(cj, "tolerance", where, tolerance, issues))
            return std::nullopt;
        if (!(tolerance > 0)) {
            issues.add(where + ": curve requires tolerance > 0");
            return std::nullopt;
        }
        return UtilityCurve::target(peak, tolerance);
    }
    if (kind == "step") {
        check_keys(cj, {"kind", "threshold", "high_side"}, where, issues);
        double threshold = 0;
        if (!get_double(cj, "threshold", where, threshold, issues)) return std::nullopt;
        if (!cj.contains("high_side") || !cj["high_side"].is_string()) {
            issues.add(where + ": step curve needs 'high_side'");
            return std::nullopt;
        }
        const std::string side = cj["high_side"].get<std::string>();
        if (side != "above" && side != "below") {
            issues.add(where + ": 'high_side' must be \"above\" or \"below\"");
            return std::nullopt;
        }
        return UtilityCurve::step(threshold, side == "above" ? UtilityCurve::StepSide::Above
                                                             : UtilityCurve::StepSide::Below);
    }
    issues.add(where + ": unknown curve kind '" + kind + "'");
    return std::nullopt;
}

UtilitySpec parse_utility(const Json& doc, Violations& issues) {
    UtilitySpec spec;
    if (!doc.contains("utility") || !doc["utility"].is_object()) {
        issues.add("scenario: missing 'utility' object");
        return spec;
    }
    const Json& uj = doc["utility"];
    check_keys(uj, {"terms", "threshold", "approach_margin"}, "utility", issues);
    if (!uj.contains("terms") || !uj["terms"].is_array() || uj["terms"].empty()) {
        issues.add("utility: needs a nonempty 'terms' array");
    } else {
        std::size_t index = 0;
        for (const auto& tj : uj["terms"]) {
            const std::string where = "utility.terms[" + std::to_string(index++) + "]";
            if (!tj.is_object()) {
                issues.add(where + ": expected an object");
                continue;
            }
            check_keys(tj, {"attribute", "curve", "weight"}, where, issues);
            UtilityTerm term;
            if (!tj.contains("attribute") || !tj["attribute"].is_string()) {
                issues.add(where + ": missing string 'attribute'");
                continue;
            }
            term.attribute = tj["attribute"].get<std::string>();
            if (!get_double(tj, "weight", where, term.weight, issues)) continue;
            if (!(term.weight > 0)) {
                issues.add(where + ": weight must be positive");
                continue;
            }
            auto curve = parse_curve(tj.contains("curve") ? tj["curve"] : Json(), where, issues);
            if (!curve) continue;
            term.curve = *curve;
            spec.terms.push_back(std::move(term));
        }
    }
    if (get_double(uj, "threshold", "utility", spec.threshold, issues)) {
        if (!(spec.threshold > 0.0 && spec.threshold < 1.0))
            issues.add("utility: threshold must lie strictly inside (0, 1)");
    }
    if (uj.contains("approach_margin")) {
        if (get_double(uj, "approach_margin", "utility", spec.approach_margin, issues)) {
            if (spec.approach_margin < 0.0)
                issues.add("utility: approach_margin must be nonnegative");
        }
    }
    // Normalize up front; utility() renormalizes anyway, but this keeps the
    // stored spec in the documented shape.
    double sum = 0.0;
    for (const auto& t : spec.terms) sum += t.weight;
    if (sum > 0.0)
        for (auto& t : spec.terms) t.weight /= sum;
    return spec;
}

UncertaintyModel parse_uncertainty(const Json& doc, Violations& issues) {
    UncertaintyModel model;
    if (!doc.contains("uncertainty")) return model;
    const Json& mj = doc["uncertainty"];
    if (!mj.is_object()) {
        issues.add("uncertainty: expected an object");
        return model;
    }
    check_keys(mj, {"descriptors", "sample_count", "lok_grid_points", "seed"}, "uncertainty",
               issues);
    if (mj.contains("descriptors")) {
        if (!mj["descriptors"].is_array()) {
            issues.add("uncertainty: 'descriptors' must be an array");
        } else {
            std::size_t index = 0;
            for (const auto& dj : mj["descriptors"]) {
                const std::string where = "uncertainty.descriptors[" + std::to_string(index++) + "]";
                if (!dj.is_object()) {
                    issues.add(where + ": expected an object");
                    continue;
                }
                check_keys(dj, {"attribute", "location", "level", "nature"}, where, issues);
                UncertaintyDescriptor d;
                if (!dj.contains("attribute") || !dj["attribute"].is_string()) {
                    issues.add(where + ": missing string 'attribute'");
                    continue;
                }
                d.attribute = dj["attribute"].get<std::string>();
                if (!dj.contains("location") || !dj["location"].is_string()) {
                    issues.add(where + ": missing string 'location'");
                    continue;
                }
                auto location = uncertainty_location_from_string(dj["location"].get<std::string>());
                if (!location) {
                    issues.add(where + ": unknown location");
                    continue;
                }
                d.location = *location;
                if (!get_double(dj, "level", where, d.level, issues)) continue;
                if (!(d.level >= 0.0 && d.level <= 1.0)) {
                    issues.add(where + ": level must lie in [0, 1]");
                    continue;
                }
                if (!dj.contains("nature") || !dj["nature"].is_string()) {
                    issues.add(where + ": missing string 'nature'");
                    continue;
                }
                auto nature = uncertainty_nature_from_string(dj["nature"].get<std::string>());
                if (!nature) {
                    issues.add(where + ": unknown nature");
                    continue;
                }
                d.nature = *nature;
                if (model.descriptors.count(d.attribute)) {
                    issues.add(where + ": duplicate descriptor for '" + d.attribute + "'");
                    continue;
                }
                model.descriptors.emplace(d.attribute, std::move(d));
            }
        }
    }
    if (mj.contains("sample_count")) {
        if (mj["sample_count"].is_number_integer() && mj["sample_count"].get<int>() >= 1)
            model.sample_count = mj["sample_count"].get<int>();
        else
            issues.add("uncertainty: 'sample_count' must be an integer >= 1");
    }
    if (mj.contains("lok_grid_points")) {
        if (mj["lok_grid_points"].is_number_integer() && mj["lok_grid_points"].get<int>() >= 2)
            model.lok_grid_points = mj["lok_grid_points"].get<int>();
        else
            issues.add("uncertainty: 'lok_grid_points' must be an integer >= 2");
    }
    if (mj.contains("seed")) {
        if (mj["seed"].is_number_integer())
            model.seed = mj["seed"].get<std::uint64_t>();
        else
            issues.add("uncertainty: 'seed' must be an integer");
    }
    return model;
}

std::vector<EnvironmentSegment> parse_environment(const Json& doc, Violations& issues) {
    std::vector<EnvironmentSegment> segments;
    if (!doc.contains("environment") || !doc["environment"].is_array()) {
        issues.add("scenario: missing 'environment' array");
        return segments;
    }
    std::size_t index = 0;
    for (const auto& sj : doc["environment"]) {
        const std::string where = "environment[" + std::to_string(index++) + "]";
        if (!sj.is_object()) {
            issues.add(where + ": expected an object");
            continue;
        }
        check_keys(sj, {"from_tick", "assignments", "noise"}, where, issues);
        EnvironmentSegment segment;
        if (!sj.contains("from_tick") || !sj["from_tick"].is_number_integer()) {
            issues.add(where + ": missing integer 'from_tick'");
            continue;
        }
        segment.from_tick = sj["from_tick"].get<std::int64_t>();
        if (!sj.contains("assignments") || !sj["assignments"].is_object()) {
            issues.add(where + ": missing 'assignments' object");
            continue;
        }
        for (const auto& [key, vj] : sj["assignments"].items()) {
            auto value = json_to_value(vj);
            if (!value) {
                issues.add(where + ": assignment '" + key + "' must be a number or a string");
                continue;
            }
            segment.assignments.emplace(key, std::move(*value));
        }
        if (sj.contains("noise")) {
            const Json& nj = sj["noise"];
            if (!nj.is_object()) {
                issues.add(where + ": 'noise' must be an object");
            } else {
                check_keys(nj, {"attribute", "amplitude"}, where + ".noise", issues);
                NoiseSpec noise;
                if (!nj.contains("attribute") || !nj["attribute"].is_string()) {
                    issues.add(where + ".noise: missing string 'attribute'");
                } else {
                    noise.attribute = nj["attribute"].get<std::string>();
                    if (get_double(nj, "amplitude", where + ".noise", noise.amplitude, issues)) {
                        if (noise.amplitude < 0.0)
                            issues.add(where + ".noise: amplitude must be nonnegative");
                        else
                            segment.noise = std::move(noise);
                    }
                }
            }
        }
        segments.push_back(std::move(segment));
    }
    return segments;
}

EngineConfig parse_engine(const Json& doc, Violations& issues) {
    EngineConfig config;
    if (!doc.contains("engine")) return config;
    const Json& ej = doc["engine"];
    if (!ej.is_object()) {
        issues.add("engine: expected an object");
        return config;
    }
    check_keys(ej,
               {"beta", "alpha", "gamma", "grid_points_per_numeric", "max_passes", "satisficing",
                "exclude_failed"},
               "engine", issues);
    auto unit_interval = [&](const char* key, double& out) {
        if (!ej.contains(key)) return;
        double v = 0;
        if (get_double(ej, key, "engine", v, issues)) {
            if (v >= 0.0 && v <= 1.0)
                out = v;
            else
                issues.add(std::string("engine: '") + key + "' must lie in [0, 1]");
        }
    };
    unit_interval("beta", config.beta);
    unit_interval("alpha", config.alpha);
    unit_interval("gamma", config.gamma);
    auto positive_int = [&](const char* key, int& out) {
        if (!ej.contains(key)) return;
        if (ej[key].is_number_integer() && ej[key].get<int>() >= 1)
            out = ej[key].get<int>();
        else
            issues.add(std::string("engine: '") + key + "' must be an integer >= 1");
    };
    positive_int("grid_points_per_numeric", config.grid_points_per_numeric);
    positive_int("max_passes", config.max_passes);
    auto boolean = [&](const char* key, bool& out) {
        if (!ej.contains(key)) return;
        if (ej[key].is_boolean())
            out = ej[key].get<bool>();
        else
            issues.add(std::string("engine: '") + key + "' must be a boolean");
    };
    boolean("satisficing", config.satisficing);
    boolean("exclude_failed", config.exclude_failed);
    return config;
}

void cross_validate(Scenario& scenario, Violations& issues) {
    const SchemaSet& schema = scenario.schema;

    if (!schema.has_controllable())
        issues.add("attributes: at least one attribute must be controllable");

    // Derived metrics: distinct names, no clash with attributes, references
    // resolve to numeric attributes or earlier derived metrics.
    std::set<std::string> visible_numeric;
    for (const auto& attr : schema.attributes())
        if (attr.is_numeric()) visible_numeric.insert(attr.name);
    std::set<std::string> derived_names;
    for (const auto& d : scenario.derived) {
        if (!is_valid_identifier(d.name))
            issues.add("derived metric name '" + d.name + "' is not a valid identifier");
        if (schema.find(d.name))
            issues.add("derived metric '" + d.name + "' clashes with an attribute name");
        if (!derived_names.insert(d.name).second)
            issues.add("duplicate derived metric '" + d.name + "'");
        for (const auto& ref : d.expression.references()) {
            if (!visible_numeric.count(ref)) {
                if (schema.find(ref) && !schema.find(ref)->is_numeric())
                    issues.add("derived metric '" + d.name + "' references categorical attribute '" +
                               ref + "'");
                else
                    issues.add("derived metric '" + d.name + "' references unknown name '" + ref +
                               "' (forward references are not allowed)");
            }
        }
        visible_numeric.insert(d.name);
    }

    for (const auto& term : scenario.utility_spec.terms) {
        if (!visible_numeric.count(term.attribute))
            issues.add("utility term references unknown or non-numeric name '" + term.attribute +
                       "'");
    }

    for (const auto& [name, d] : scenario.uncertainty.descriptors) {
        const AttributeSchema* attr = schema.find(name);
        if (!attr)
            issues.add("uncertainty descriptor on unknown attribute '" + name + "'");
        else if (!attr->is_numeric())
            issues.add("uncertainty descriptor on categorical attribute '" + name + "'");
    }

    // Environment program: ascending, covers tick 0, complete assignment of
    // the non-controllable attributes, conforming values, numeric noise.
    std::set<std::string> environment_attrs;
    for (const auto& attr : schema.attributes())
        if (!attr.controllable) environment_attrs.insert(attr.name);
    std::int64_t previous_tick = -1;
    bool covers_zero = false;
    std::size_t index = 0;
    for (const auto& segment : scenario.environment) {
        const std::string where = "environment[" + std::to_string(index++) + "]";
        if (segment.from_tick == 0) covers_zero = true;
        if (segment.from_tick <= previous_tick)
            issues.add(where + ": from_tick must be strictly increasing");
        previous_tick = segment.from_tick;
        for (const auto& [name, value] : segment.assignments) {
            const AttributeSchema* attr = schema.find(name);
            if (!attr) {
                issues.add(where + ": assigns unknown attribute '" + name + "'");
                continue;
            }
            if (attr->controllable) {
                issues.add(where + ": assigns controllable attribute '" + name + "'");
                continue;
            }
            auto vr = check_value(*attr, value);
            for (const auto& v : vr.violations) issues.add(where + ": " + v);
        }
        for (const auto& name : environment_attrs)
            if (!segment.assignments.count(name))
                issues.add(where + ": misses environment attribute '" + name + "'");
        if (segment.noise) {
            const AttributeSchema* attr = schema.find(segment.noise->attribute);
            if (!attr)
                issues.add(where + ": noise on unknown attribute '" + segment.noise->attribute +
                           "'");
            else if (!attr->is_numeric())
                issues.add(where + ": noise on categorical attribute '" +
                           segment.noise->attribute + "'");
            else if (attr->controllable)
                issues.add(where + ": noise on controllable attribute '" +
                           segment.noise->attribute + "'");
        }
    }
    if (!covers_zero) issues.add("environment: a segment with from_tick 0 is required");

    auto sr = validate_solution(schema, scenario.initial_controllables);
    for (const auto& v : sr.violations) issues.add("initial_controllables: " + v);
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> violations)
    : Error([&violations] {
          std::string msg = "invalid scenario:";
          for (const auto& v : violations) msg += "\n  - " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

MetricFn Scenario::metric_fn() const {
    return [this](const SystemState& state) { return compute_metrics(*this, state); };
}

EngineContext Scenario::engine_context() const {
    EngineContext ctx;
    ctx.schema = &schema;
    ctx.similarity = &similarity;
    ctx.utility_spec = &utility_spec;
    ctx.metrics = metric_fn();
    ctx.uncertainty = &uncertainty;
    ctx.config = engine_config;
    return ctx;
}

Scenario load_scenario(std::string_view json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ScenarioError({std::string("not a valid JSON document: ") + e.what()});
    }
    if (!doc.is_object()) throw ScenarioError({"scenario document must be an object"});

    Violations issues;
    check_keys(doc,
               {"name", "attributes", "derived", "utility", "uncertainty", "environment",
                "initial_controllables", "engine", "seed"},
               "scenario", issues);

    Scenario scenario;
    if (doc.contains("name") && doc["name"].is_string())
        scenario.name = doc["name"].get<std::string>();
    else
        issues.add("scenario: missing string 'name'");

    auto attrs = parse_attributes(doc, issues);
    auto schema_issues = SchemaSet::check(attrs);
    for (const auto& v : schema_issues) issues.add("attributes: " + v);

    if (doc.contains("derived")) {
        if (!doc["derived"].is_array()) {
            issues.add("derived: expected an array");
        } else {
            std::size_t index = 0;
            for (const auto& dj : doc["derived"]) {
                const std::string where = "derived[" + std::to_string(index++) + "]";
                if (!dj.is_object()) {
                    issues.add(where + ": expected an object");
                    continue;
                }
                check_keys(dj, {"name", "expression"}, where, issues);
                if (!dj.contains("name") || !dj["name"].is_string() ||
                    !dj.contains("expression") || !dj["expression"].is_string()) {
                    issues.add(where + ": needs string 'name' and 'expression'");
                    continue;
                }
                DerivedMetric metric;
                metric.name = dj["name"].get<std::string>();
                try {
                    metric.expression = Expression::parse(dj["expression"].get<std::string>());
                } catch (const ExprParseError& e) {
                    issues.add(where + ": " + e.what());
                    continue;
                }
                scenario.derived.push_back(std::move(metric));
            }
        }
    }

    scenario.utility_spec = parse_utility(doc, issues);
    scenario.uncertainty = parse_uncertainty(doc, issues);
    scenario.environment = parse_environment(doc, issues);
    scenario.engine_config = parse_engine(doc, issues);

    if (doc.contains("initial_controllables") && doc["initial_controllables"].is_object()) {
        for (const auto& [key, vj] : doc["initial_controllables"].items()) {
            auto value = json_to_value(vj);
            if (!value)
                issues.add("initial_controllables: '" + key + "' must be a number or a string");
            else
                scenario.initial_controllables.emplace(key, std::move(*value));
        }
    } else {
        issues.add("scenario: missing 'initial_controllables' object");
    }

    if (doc.contains("seed")) {
        if (doc["seed"].is_number_integer())
            scenario.seed = doc["seed"].get<std::uint64_t>();
        else
            issues.add("scenario: 'seed' must be an integer");
    }

    // Cross checks need a structurally sound schema.
    if (schema_issues.empty() && !attrs.empty()) {
        scenario.schema = SchemaSet::create(std::move(attrs));
        try {
            scenario.similarity = SimilarityConfig::from_schema(scenario.schema);
        } catch (const ConfigError& e) {
            issues.add(std::string("attributes: ") + e.what());
        }
        cross_validate(scenario, issues);
    }

    if (!issues.empty()) throw ScenarioError(std::move(issues.list));
    return scenario;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_scenario(buffer.str());
}

ExtendedState compute_metrics(const Scenario& scenario, const SystemState& state) {
    ExtendedState extended = state.values;
    for (const auto& metric : scenario.derived)
        extended[metric.name] = metric.expression.evaluate(extended);
    return extended;
}

SystemState sim_step(const Scenario& scenario, std::int64_t tick, const Solution& controllables) {
    const EnvironmentSegment* active = nullptr;
    for (const auto& segment : scenario.environment) {
        if (segment.from_tick <= tick &&
            (!active || segment.from_tick > active->from_tick))
            active = &segment;
    }
    if (!active)
        throw ConfigError("no environment segment covers tick " + std::to_string(tick));

    SystemState state;
    for (const auto& [name, value] : active->assignments) state.values[name] = value;
    if (active->noise && active->noise->amplitude > 0.0) {
        const AttributeSchema* attr = scenario.schema.find(active->noise->attribute);
        auto it = state.values.find(active->noise->attribute);
        if (attr && it != state.values.end() && is_number(it->second)) {
            SplitMix64 rng(derive_seed(scenario.seed, static_cast<std::uint64_t>(tick)));
            const double offset = (2.0 * rng.next_double() - 1.0) * active->noise->amplitude;
            double noisy = as_number(it->second) + offset;
            noisy = std::clamp(noisy, attr->min, attr->max);
            if (attr->integer_valued) noisy = std::round(noisy);
            it->second = noisy;
        }
    }
    for (const auto& [name, value] : controllables) state.values[name] = value;
    return state;
}

}  // namespace sase
