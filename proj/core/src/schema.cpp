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

#include "sase/schema.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

#include "sase/errors.hpp"

namespace sase {

namespace {

// FNV-1a over the canonical serialization; 64 bits is plenty for telling
// scenarios apart.
std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

std::string canonical_attribute(const AttributeSchema& a) {
    std::ostringstream os;
    os << "name=" << a.name << ";controllable=" << (a.controllable ? 1 : 0)
       << ";similarity_weight=" << format_double(a.similarity_weight);
    if (a.is_numeric()) {
        os << ";kind=numeric;min=" << format_double(a.min) << ";max=" << format_double(a.max)
           << ";integer_valued=" << (a.integer_valued ? 1 : 0) << ";unit=" << a.unit;
    } else {
        os << ";kind=categorical;allowed=";
        for (std::size_t i = 0; i < a.allowed.size(); ++i) {
            if (i) os << ',';
            os << a.allowed[i];
        }
    }
    return os.str();
}

std::string compute_fingerprint(const std::vector<AttributeSchema>& attrs) {
    std::vector<std::string> lines;
    lines.reserve(attrs.size());
    for (const auto& a : attrs) lines.push_back(canonical_attribute(a));
    std::sort(lines.begin(), lines.end());
    std::string joined;
    for (const auto& l : lines) {
        joined += l;
        joined += '\n';
    }
    return to_hex(fnv1a(joined));
}

}  // namespace

AttributeSchema AttributeSchema::numeric(std::string name, double min, double max,
                                         bool integer_valued, std::string unit) {
    AttributeSchema a;
    a.name = std::move(name);
    a.kind = AttributeKind::Numeric;
    a.min = min;
    a.max = max;
    a.integer_valued = integer_valued;
    a.unit = std::move(unit);
    return a;
}

AttributeSchema AttributeSchema::categorical(std::string name, std::vector<std::string> allowed) {
    AttributeSchema a;
    a.name = std::move(name);
    a.kind = AttributeKind::Categorical;
    a.allowed = std::move(allowed);
    return a;
}

bool is_valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    if (name[0] < 'a' || name[0] > 'z') return false;
    for (char c : name.substr(1)) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

std::vector<std::string> SchemaSet::check(const std::vector<AttributeSchema>& attrs) {
    std::vector<std::string> violations;
    std::set<std::string> seen;
    for (const auto& a : attrs) {
        if (!is_valid_identifier(a.name))
            violations.push_back("attribute name '" + a.name + "' is not a valid identifier");
        if (!seen.insert(a.name).second)
            violations.push_back("duplicate attribute name '" + a.name + "'");
        if (a.similarity_weight < 0.0)
            violations.push_back("attribute '" + a.name + "' has negative similarity_weight");
        if (a.is_numeric()) {
            if (!(a.min < a.max))
                violations.push_back("attribute '" + a.name + "' requires min < max");
        } else {
            if (a.allowed.empty())
                violations.push_back("categorical attribute '" + a.name + "' has no allowed labels");
            std::set<std::string> labels(a.allowed.begin(), a.allowed.end());
            if (labels.size() != a.allowed.size())
                violations.push_back("categorical attribute '" + a.name + "' has duplicate labels");
        }
    }
    return violations;
}

SchemaSet SchemaSet::create(std::vector<AttributeSchema> attrs) {
    auto violations = check(attrs);
    if (!violations.empty()) {
        std::string msg = "invalid schema set:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw SchemaError(msg);
    }
    SchemaSet s;
    s.attrs_ = std::move(attrs);
    for (std::size_t i = 0; i < s.attrs_.size(); ++i) s.index_.emplace(s.attrs_[i].name, i);
    s.fingerprint_ = compute_fingerprint(s.attrs_);
    return s;
}

const AttributeSchema* SchemaSet::find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &attrs_[it->second];
}

bool SchemaSet::has_controllable() const {
    return std::any_of(attrs_.begin(), attrs_.end(),
                       [](const AttributeSchema& a) { return a.controllable; });
}

std::vector<const AttributeSchema*> SchemaSet::controllables() const {
    std::vector<const AttributeSchema*> out;
    for (const auto& a : attrs_)
        if (a.controllable) out.push_back(&a);
    return out;
}

ValidationResult check_value(const AttributeSchema& attr, const Value& value) {
    ValidationResult r;
    if (attr.is_numeric()) {
        if (!is_number(value)) {
            r.violations.push_back("attribute '" + attr.name + "' expects a number");
            return r;
        }
        const double x = as_number(value);
        if (!(x >= attr.min && x <= attr.max))
            r.violations.push_back("attribute '" + attr.name + "' value " + format_double(x) +
                                   " out of range [" + format_double(attr.min) + ", " +
                                   format_double(attr.max) + "]");
        if (attr.integer_valued && x != std::floor(x))
            r.violations.push_back("attribute '" + attr.name + "' value " + format_double(x) +
                                   " is not an integer");
    } else {
        if (!is_label(value)) {
            r.violations.push_back("attribute '" + attr.name + "' expects a label");
            return r;
        }
        const auto& label = as_label(value);
        if (std::find(attr.allowed.begin(), attr.allowed.end(), label) == attr.allowed.end())
            r.violations.push_back("attribute '" + attr.name + "' label '" + label +
                                   "' is not allowed");
    }
    return r;
}

ValidationResult validate_state(const SchemaSet& schema, const SystemState& state) {
    ValidationResult r;
    for (const auto& [name, value] : state.values) {
        const AttributeSchema* attr = schema.find(name);
        if (!attr) {
            r.violations.push_back("unknown attribute '" + name + "'");
            continue;
        }
        auto vr = check_value(*attr, value);
        r.violations.insert(r.violations.end(), vr.violations.begin(), vr.violations.end());
    }
    for (const auto& attr : schema.attributes()) {
        if (!state.values.count(attr.name))
            r.violations.push_back("missing attribute '" + attr.name + "'");
    }
    return r;
}

SystemState merge_solution(const SchemaSet& schema, const SystemState& request_state,
                           const Solution& solution) {
    SystemState out = request_state;
    for (const auto& [name, value] : solution) {
        const AttributeSchema* attr = schema.find(name);
        if (!attr) throw ContractError("solution assigns unknown attribute '" + name + "'");
        if (!attr->controllable)
            throw ContractError("solution assigns non-controllable attribute '" + name + "'");
        out.values[name] = value;
    }
    return out;
}

ValidationResult validate_solution(const SchemaSet& schema, const Solution& solution) {
    ValidationResult r;
    for (const auto& [name, value] : solution) {
        const AttributeSchema* attr = schema.find(name);
        if (!attr) {
            r.violations.push_back("solution assigns unknown attribute '" + name + "'");
            continue;
        }
        if (!attr->controllable) {
            r.violations.push_back("solution assigns non-controllable attribute '" + name + "'");
            continue;
        }
        auto vr = check_value(*attr, value);
        r.violations.insert(r.violations.end(), vr.violations.begin(), vr.violations.end());
    }
    for (const auto& attr : schema.attributes()) {
        if (attr.controllable && !solution.count(attr.name))
            r.violations.push_back("solution misses controllable attribute '" + attr.name + "'");
    }
    return r;
}

}  // namespace sase
