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

#ifndef SASE_QUALITY_HPP
#define SASE_QUALITY_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sase/schema.hpp"

namespace sase {

/// Piecewise utility shapes. All evaluate into [0, 1].
struct UtilityCurve {
    enum class Kind { LinearInc, LinearDec, Target, Step };
    enum class StepSide { Above, Below };

    Kind kind = Kind::LinearInc;
    double lo = 0.0;         // linear_inc / linear_dec
    double hi = 1.0;         // linear_inc / linear_dec
    double peak = 0.0;       // target
    double tolerance = 1.0;  // target
    double threshold = 0.0;  // step
    StepSide high_side = StepSide::Above;

    static UtilityCurve linear_inc(double lo, double hi);
    static UtilityCurve linear_dec(double lo, double hi);
    static UtilityCurve target(double peak, double tolerance);
    static UtilityCurve step(double threshold, StepSide high_side);

    bool operator==(const UtilityCurve&) const = default;
};

double curve_eval(const UtilityCurve& curve, double x);

struct UtilityTerm {
    std::string attribute;  // raw attribute or derived metric name
    UtilityCurve curve;
    double weight = 1.0;
};

/// Weighted per-attribute utility curves realizing the overall utility U,
/// the threshold UT, and the approach margin.
struct UtilitySpec {
    std::vector<UtilityTerm> terms;
    double threshold = 0.7;        // UT
    double approach_margin = 0.05;
};

/// Overall utility: normalized weighted sum of the term curves evaluated on
/// the extended state. Throws ContractError when a referenced name is
/// missing or not numeric, ConfigError when there is no usable term weight.
double utility(const UtilitySpec& spec, const ExtendedState& extended);

/// Per-attribute retrieval weights, normalized over the positive entries.
struct SimilarityConfig {
    std::map<std::string, double, std::less<>> weights;

    /// Normalized weights from the schema's similarity_weight fields.
    /// Throws ConfigError when no attribute has a positive weight.
    static SimilarityConfig from_schema(const SchemaSet& schema);
};

/// Similarity of two values of one attribute. Numeric: 1 - |a-b| / range.
/// Categorical: exact match. Throws ContractError on nonconforming values.
double local_similarity(const AttributeSchema& attr, const Value& a, const Value& b);

/// Weighted sum of local similarities over the positively weighted
/// attributes. Symmetric; 1 exactly iff all weighted attributes agree.
double similarity(const SimilarityConfig& config, const SchemaSet& schema, const SystemState& a,
                  const SystemState& b);

enum class UtilityClass { Ok, Approaching, Breached };

std::string_view to_string(UtilityClass c);

/// Breached when u < ut, approaching when ut <= u < ut + margin, ok above.
/// Adaptation is triggered for breached and approaching.
UtilityClass threshold_check(double u, double ut, double margin);

}  // namespace sase

#endif  // SASE_QUALITY_HPP
