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

#ifndef SASE_ENGINE_HPP
#define SASE_ENGINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sase/case.hpp"
#include "sase/knowledge_base.hpp"
#include "sase/quality.hpp"
#include "sase/uncertainty.hpp"

namespace sase {

/// Tuning knobs of the adaptation engine.
struct EngineConfig {
    double beta = 0.8;    // minimum similarity to enter the qualified frame
    double alpha = 0.5;   // expediency blend between similarity and utility
    double gamma = 0.98;  // problem-similarity gate for retain deduplication
    int grid_points_per_numeric = 17;
    int max_passes = 10;
    bool satisficing = true;     // stop search once utility clears UT + margin
    bool exclude_failed = true;  // hide failed cases from retrieval
};

/// A knowledge-base case annotated with its problem-part similarity to the
/// current request.
struct RankedCase {
    CaseId id = -1;
    double sim = 0.0;
};

/// Everything the engine needs besides the KB and the request. The
/// referenced objects must outlive the call.
struct EngineContext {
    const SchemaSet* schema = nullptr;
    const SimilarityConfig* similarity = nullptr;
    const UtilitySpec* utility_spec = nullptr;
    MetricFn metrics;
    const UncertaintyModel* uncertainty = nullptr;
    EngineConfig config;
};

namespace engine {

/// All reusable cases ranked by similarity to the request state, descending,
/// ties broken by ascending id. Failed cases are omitted when the config
/// says so. Throws CompatError on a schema fingerprint mismatch.
std::vector<RankedCase> retrieve(const KnowledgeBase& kb, const AdaptationRequest& request,
                                 const EngineContext& ctx);

/// The qualified adaptation frame: exactly the cases with sim in [beta, 1],
/// boundary included, order preserved.
std::vector<RankedCase> build_qaf(std::span<const RankedCase> ranked, double beta);

/// Case expediency: alpha * sim + (1 - alpha) * expected utility of the
/// case's solution applied to the current request state.
double case_expediency(const RankedCase& ranked_case, const KnowledgeBase& kb,
                       const AdaptationRequest& request, const EngineContext& ctx,
                       std::uint64_t* utility_evals = nullptr);

/// Picks the argmax-expediency case from a nonempty frame (ties to the
/// lowest id), bumps its use count, and answers with its solution evaluated
/// against the current request. Throws ContractError on an empty frame.
AdaptationResponse select_response(KnowledgeBase& kb, std::span<const RankedCase> qaf,
                                   const AdaptationRequest& request, const EngineContext& ctx);

struct ConstructiveResult {
    Solution solution;
    double predicted_utility = 0.0;
    std::int64_t eval_count = 0;       // expected-utility evaluations spent
    std::uint64_t utility_evals = 0;   // raw utility evaluations underneath
};

/// Utility-guided construction of a fresh solution: deterministic
/// coordinate ascent over the controllable grid, seeded from the
/// top-ranked case when one exists. Throws ConfigError when the schema has
/// no controllable attribute.
ConstructiveResult constructive_adapt(const KnowledgeBase& kb,
                                      std::span<const RankedCase> ranked,
                                      const AdaptationRequest& request,
                                      const EngineContext& ctx);

struct RetainResult {
    enum class Kind { Retained, Merged };
    Kind kind = Kind::Retained;
    CaseId id = -1;
};

/// Stores a constructed solution, or merges into the nearest existing case
/// when its problem similarity reaches gamma and the solution is identical.
RetainResult retain(KnowledgeBase& kb, const AdaptationRequest& request,
                    const Solution& solution, double predicted_utility,
                    const EngineContext& ctx);

/// Records the realized utility of a case: confirmed above UT (strictly),
/// failed otherwise. Throws NotFoundError for an unknown id.
void revise(KnowledgeBase& kb, CaseId id, double realized_utility, double ut);

/// The full adaptation process: retrieve, gate into the qualified frame,
/// reuse the most expedient case when the frame is nonempty, otherwise
/// construct a new solution and retain it. A response that misses the
/// threshold is flagged via threshold_met, never an error.
AdaptationResponse adapt(KnowledgeBase& kb, const AdaptationRequest& request,
                         const EngineContext& ctx);

}  // namespace engine

}  // namespace sase

#endif  // SASE_ENGINE_HPP
