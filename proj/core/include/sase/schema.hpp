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

#ifndef SASE_SCHEMA_HPP
#define SASE_SCHEMA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sase/value.hpp"

namespace sase {

enum class AttributeKind { Numeric, Categorical };

/// Declaration of one managed-system attribute.
///
/// `controllable` marks the knobs an adaptation may alter; everything else
/// is observed context. `similarity_weight` feeds retrieval: by default the
/// scenario loader weights context attributes uniformly and knobs at zero.
struct AttributeSchema {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;

    // Numeric payload.
    double min = 0.0;
    double max = 1.0;
    bool integer_valued = false;
    std::string unit;

    // Categorical payload.
    std::vector<std::string> allowed;

    bool controllable = false;
    double similarity_weight = 0.0;

    bool is_numeric() const { return kind == AttributeKind::Numeric; }

    static AttributeSchema numeric(std::string name, double min, double max,
                                   bool integer_valued = false, std::string unit = {});
    static AttributeSchema categorical(std::string name, std::vector<std::string> allowed);
};

/// True iff `name` matches `[a-z][a-z0-9_]*`.
bool is_valid_identifier(std::string_view name);

/// An ordered, validated set of attribute schemas. Declaration order is
/// meaningful: constructive search walks controllables in this order.
class SchemaSet {
public:
    SchemaSet() = default;

    /// Validates and wraps `attrs`; throws SchemaError listing every
    /// violation when the set is invalid.
    static SchemaSet create(std::vector<AttributeSchema> attrs);

    /// All violations of the schema invariants, empty when valid.
    static std::vector<std::string> check(const std::vector<AttributeSchema>& attrs);

    const std::vector<AttributeSchema>& attributes() const { return attrs_; }
    std::size_t size() const { return attrs_.size(); }

    const AttributeSchema* find(std::string_view name) const;
    bool has_controllable() const;
    std::vector<const AttributeSchema*> controllables() const;

    /// Order-independent hex digest of the canonical schema serialization.
    /// Two schema sets that declare the same attributes (in any order)
    /// share a fingerprint; anything else does not.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    std::vector<AttributeSchema> attrs_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::string fingerprint_;
};

/// A full snapshot of the managed system's attribute values.
struct SystemState {
    ValueMap values;

    bool operator==(const SystemState&) const = default;
};

/// A partial assignment over controllable attributes.
using Solution = ValueMap;

/// Raw attributes plus derived metrics, the domain utility terms and
/// expressions are evaluated over.
using ExtendedState = ValueMap;

struct ValidationResult {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks a single value against one attribute schema.
ValidationResult check_value(const AttributeSchema& attr, const Value& value);

/// Checks a state against the schema set: every value conforms and the
/// state covers exactly the schema's attribute names. Violations are data,
/// not faults.
ValidationResult validate_state(const SchemaSet& schema, const SystemState& state);

/// Returns `request_state` with controllable values replaced by `solution`.
/// Throws ContractError when the solution assigns an unknown or
/// non-controllable attribute.
SystemState merge_solution(const SchemaSet& schema, const SystemState& request_state,
                           const Solution& solution);

/// Checks that `solution` assigns every controllable attribute, no
/// non-controllable one, and only conforming values.
ValidationResult validate_solution(const SchemaSet& schema, const Solution& solution);

}  // namespace sase

#endif  // SASE_SCHEMA_HPP
