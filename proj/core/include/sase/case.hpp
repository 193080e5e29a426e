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

#ifndef SASE_CASE_HPP
#define SASE_CASE_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

#include "sase/schema.hpp"

namespace sase {

using CaseId = std::int64_t;

enum class OutcomeStatus { Untested, Confirmed, Failed };
enum class CaseSource { Constructed, Seeded };

std::string_view to_string(OutcomeStatus s);
std::string_view to_string(CaseSource s);
std::optional<OutcomeStatus> outcome_status_from_string(std::string_view s);
std::optional<CaseSource> case_source_from_string(std::string_view s);

struct Outcome {
    OutcomeStatus status = OutcomeStatus::Untested;
    std::optional<double> realized_utility;

    bool operator==(const Outcome&) const = default;
};

/// One remembered adaptation: the observed problem context, the knob
/// assignment that answered it, and what became of it.
struct Case {
    CaseId id = -1;
    SystemState problem;
    Solution solution;
    double predicted_utility = 0.0;
    Outcome outcome;
    CaseSource source = CaseSource::Constructed;
    std::int64_t use_count = 0;

    bool operator==(const Case&) const = default;
};

/// Snapshot sent to the engine when utility breaches or approaches the
/// threshold.
struct AdaptationRequest {
    SystemState state;
    double trigger_utility = 0.0;
    std::int64_t tick = 0;
};

enum class Provenance { Reused, Constructed };

std::string_view to_string(Provenance p);

/// The engine's answer: a complete controllable assignment plus how it was
/// obtained and what it is predicted to achieve.
///
/// `threshold_met` records whether the predicted utility clears the
/// threshold strictly; a false value is a flagged best effort, not a
/// failure. `elapsed` is modelled latency (one microsecond per raw utility
/// evaluation), kept deterministic so metric traces are reproducible.
struct AdaptationResponse {
    Solution solution;
    double predicted_utility = 0.0;
    Provenance provenance = Provenance::Constructed;
    CaseId case_id = -1;
    bool threshold_met = false;
    std::int64_t eval_count = 0;
    std::chrono::microseconds elapsed{0};
};

}  // namespace sase

#endif  // SASE_CASE_HPP
