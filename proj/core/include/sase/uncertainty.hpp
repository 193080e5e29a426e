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

#ifndef SASE_UNCERTAINTY_HPP
#define SASE_UNCERTAINTY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sase/quality.hpp"
#include "sase/schema.hpp"

namespace sase {

/// Where the uncertainty manifests. Recorded metadata; it does not alter
/// the computation.
enum class UncertaintyLocation { Monitoring, Environment, InternalModel };

/// Variability is aleatory scatter, averaged out; lack of knowledge is
/// epistemic and treated worst-case.
enum class UncertaintyNature { Variability, LackOfKnowledge };

std::string_view to_string(UncertaintyLocation l);
std::string_view to_string(UncertaintyNature n);
std::optional<UncertaintyLocation> uncertainty_location_from_string(std::string_view s);
std::optional<UncertaintyNature> uncertainty_nature_from_string(std::string_view s);

/// Run-time uncertainty of one numeric attribute: where it manifests, how
/// strong it is (0 deterministic .. 1 total ignorance), and what causes it.
struct UncertaintyDescriptor {
    std::string attribute;
    UncertaintyLocation location = UncertaintyLocation::Environment;
    double level = 0.0;
    UncertaintyNature nature = UncertaintyNature::Variability;
};

struct UncertaintyModel {
    std::map<std::string, UncertaintyDescriptor, std::less<>> descriptors;
    int sample_count = 64;    // joint samples per grid assignment
    int lok_grid_points = 3;  // grid resolution per lack-of-knowledge attribute
    std::uint64_t seed = 0;

    bool empty() const { return descriptors.empty(); }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// The value band a monitored reading may actually lie in: half-width
/// level * (max - min) / 2, clipped to the attribute range. Level 0 yields
/// the degenerate [value, value]. Throws UnsupportedError for categorical
/// attributes.
Interval perturbation_interval(const UncertaintyDescriptor& descriptor,
                               const AttributeSchema& attr, double value);

using MetricFn = std::function<ExtendedState(const SystemState&)>;

/// Utility under the uncertainty model.
///
/// Lack-of-knowledge attributes span a tensor grid of `lok_grid_points`
/// equally spaced values over their perturbation intervals; for each grid
/// assignment the utility is averaged over `sample_count` joint draws from
/// the variability attributes' intervals (deterministic generator seeded
/// from the model seed and the grid index); the result is the minimum of
/// those averages. Without uncertain attributes this equals utility()
/// exactly. `utility_evals`, when given, is incremented once per raw
/// utility evaluation.
double expected_utility(const UtilitySpec& spec, const MetricFn& metric_fn,
                        const SystemState& state, const UncertaintyModel& model,
                        const SchemaSet& schema, std::uint64_t* utility_evals = nullptr);

/// Level estimate from a recent observation window: 4 standard deviations
/// (population) relative to the attribute range, clamped to [0, 1]. Throws
/// InsufficientDataError for windows shorter than 2.
double quantify_level_from_trace(std::span<const double> window, const AttributeSchema& attr);

}  // namespace sase

#endif  // SASE_UNCERTAINTY_HPP
