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

#include "sase/engine.hpp"

#include <algorithm>
#include <cmath>

#include "sase/errors.hpp"

namespace sase::engine {

namespace {

void require_valid_request(const AdaptationRequest& request, const EngineContext& ctx) {
    auto vr = validate_state(*ctx.schema, request.state);
    if (!vr.ok()) {
        std::string msg = "adaptation request state is invalid:";
        for (const auto& v : vr.violations) msg += "\n  - " + v;
        throw ContractError(msg);
    }
}

double evaluate_candidate(const AdaptationRequest& request, const Solution& solution,
                          const EngineContext& ctx, std::uint64_t* utility_evals) {
    const SystemState merged = merge_solution(*ctx.schema, request.state, solution);
    return expected_utility(*ctx.utility_spec, ctx.metrics, merged, *ctx.uncertainty,
                            *ctx.schema, utility_evals);
}

/// Candidate values for one controllable attribute: an evenly spaced grid
/// for numeric attributes (rounded and deduplicated when integer-valued),
/// every allowed label for categorical ones.
std::vector<Value> candidate_grid(const AttributeSchema& attr, int grid_points) {
    std::vector<Value> out;
    if (!attr.is_numeric()) {
        for (const auto& label : attr.allowed) out.emplace_back(label);
        return out;
    }
    const int points = std::max(2, grid_points);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        double x = attr.min + (attr.max - attr.min) * static_cast<double>(i) /
                                  static_cast<double>(points - 1);
        if (attr.integer_valued) x = std::round(x);
        xs.push_back(x);
    }
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) out.emplace_back(x);
    return out;
}

Solution controllables_of(const SchemaSet& schema, const SystemState& state) {
    Solution out;
    for (const auto& attr : schema.attributes()) {
        if (!attr.controllable) continue;
        auto it = state.values.find(attr.name);
        if (it != state.values.end()) out.emplace(attr.name, it->second);
    }
    return out;
}

}  // namespace

std::vector<RankedCase> retrieve(const KnowledgeBase& kb, const AdaptationRequest& request,
                                 const EngineContext& ctx) {
    if (kb.schema_fingerprint() != ctx.schema->fingerprint())
        throw CompatError("knowledge base fingerprint " + kb.schema_fingerprint() +
                          " does not match the engine schema (" + ctx.schema->fingerprint() + ")");
    require_valid_request(request, ctx);

    std::vector<RankedCase> ranked;
    ranked.reserve(kb.size());
    for (const auto& c : kb.cases()) {
        if (ctx.config.exclude_failed && c.outcome.status == OutcomeStatus::Failed) continue;
        ranked.push_back({c.id, similarity(*ctx.similarity, *ctx.schema, request.state, c.problem)});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedCase& a, const RankedCase& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        return a.id < b.id;
    });
    return ranked;
}

std::vector<RankedCase> build_qaf(std::span<const RankedCase> ranked, double beta) {
    std::vector<RankedCase> qaf;
    for (const auto& rc : ranked)
        if (rc.sim >= beta) qaf.push_back(rc);
    return qaf;
}

double case_expediency(const RankedCase& ranked_case, const KnowledgeBase& kb,
                       const AdaptationRequest& request, const EngineContext& ctx,
                       std::uint64_t* utility_evals) {
    const Case* c = kb.find(ranked_case.id);
    if (!c) throw NotFoundError("case " + std::to_string(ranked_case.id) + " is not in the KB");
    const double eu = evaluate_candidate(request, c->solution, ctx, utility_evals);
    const double alpha = ctx.config.alpha;
    return alpha * ranked_case.sim + (1.0 - alpha) * eu;
}

AdaptationResponse select_response(KnowledgeBase& kb, std::span<const RankedCase> qaf,
                                   const AdaptationRequest& request, const EngineContext& ctx) {
    if (qaf.empty())
        throw ContractError("select_response on an empty qualified adaptation frame");

    std::uint64_t utility_evals = 0;
    const double alpha = ctx.config.alpha;

    CaseId best_id = -1;
    double best_ce = -1.0;
    double best_eu = 0.0;
    std::int64_t evals = 0;
    for (const auto& rc : qaf) {
        const Case* c = kb.find(rc.id);
        if (!c) throw NotFoundError("case " + std::to_string(rc.id) + " is not in the KB");
        const double eu = evaluate_candidate(request, c->solution, ctx, &utility_evals);
        ++evals;
        const double ce = alpha * rc.sim + (1.0 - alpha) * eu;
        if (ce > best_ce || (ce == best_ce && rc.id < best_id)) {
            best_ce = ce;
            best_id = rc.id;
            best_eu = eu;
        }
    }

    Case* chosen = kb.find_mut(best_id);
    ++chosen->use_count;

    AdaptationResponse response;
    response.solution = chosen->solution;
    response.predicted_utility = best_eu;
    response.provenance = Provenance::Reused;
    response.case_id = best_id;
    response.threshold_met = best_eu > ctx.utility_spec->threshold;
    response.eval_count = evals;
    response.elapsed = std::chrono::microseconds(static_cast<std::int64_t>(utility_evals));
    return response;
}

ConstructiveResult constructive_adapt(const KnowledgeBase& kb,
                                      std::span<const RankedCase> ranked,
                                      const AdaptationRequest& request,
                                      const EngineContext& ctx) {
    const auto controllable_attrs = ctx.schema->controllables();
    if (controllable_attrs.empty())
        throw ConfigError("constructive adaptation needs at least one controllable attribute");

    // Seed from the best-known case even when it fell below the frame gate;
    // otherwise start from the knobs as they currently are.
    Solution solution;
    if (!ranked.empty()) {
        const Case* top = kb.find(ranked.front().id);
        if (!top)
            throw NotFoundError("case " + std::to_string(ranked.front().id) + " is not in the KB");
        solution = top->solution;
    } else {
        solution = controllables_of(*ctx.schema, request.state);
    }

    ConstructiveResult result;
    const double satisficing_bar = ctx.utility_spec->threshold + ctx.utility_spec->approach_margin;

    double current = evaluate_candidate(request, solution, ctx, &result.utility_evals);
    ++result.eval_count;
    if (ctx.config.satisficing && current > satisficing_bar) {
        result.solution = std::move(solution);
        result.predicted_utility = current;
        return result;
    }

    for (int pass = 0; pass < std::max(1, ctx.config.max_passes); ++pass) {
        bool changed = false;
        for (const AttributeSchema* attr : controllable_attrs) {
            const auto grid = candidate_grid(*attr, ctx.config.grid_points_per_numeric);
            Value best_value = solution.at(attr->name);
            double best = current;
            for (const Value& v : grid) {
                if (v == solution.at(attr->name)) continue;
                Solution candidate = solution;
                candidate[attr->name] = v;
                const double eu = evaluate_candidate(request, candidate, ctx, &result.utility_evals);
                ++result.eval_count;
                if (ctx.config.satisficing && eu > satisficing_bar) {
                    result.solution = std::move(candidate);
                    result.predicted_utility = eu;
                    return result;
                }
                if (eu > best) {
                    best = eu;
                    best_value = v;
                }
            }
            if (!(best_value == solution.at(attr->name))) {
                solution[attr->name] = best_value;
                current = best;
                changed = true;
            }
        }
        if (!changed) break;
    }

    result.solution = std::move(solution);
    result.predicted_utility = current;
    return result;
}

RetainResult retain(KnowledgeBase& kb, const AdaptationRequest& request, const Solution& solution,
                    double predicted_utility, const EngineContext& ctx) {
    if (kb.schema_fingerprint() != ctx.schema->fingerprint())
        throw CompatError("knowledge base fingerprint does not match the engine schema");
    auto sr = validate_solution(*ctx.schema, solution);
    if (!sr.ok()) {
        std::string msg = "retained solution is invalid:";
        for (const auto& v : sr.violations) msg += "\n  - " + v;
        throw ContractError(msg);
    }

    // Nearest problem context, ties to the lowest id.
    const Case* nearest = nullptr;
    double nearest_sim = -1.0;
    for (const auto& c : kb.cases()) {
        const double sim = similarity(*ctx.similarity, *ctx.schema, request.state, c.problem);
        if (sim > nearest_sim) {
            nearest_sim = sim;
            nearest = &c;
        }
    }

    if (nearest && nearest_sim >= ctx.config.gamma && nearest->solution == solution) {
        Case* existing = kb.find_mut(nearest->id);
        ++existing->use_count;
        return {RetainResult::Kind::Merged, existing->id};
    }

    Case draft;
    draft.problem = request.state;
    draft.solution = solution;
    draft.predicted_utility = predicted_utility;
    draft.outcome = {};
    draft.source = CaseSource::Constructed;
    draft.use_count = 0;
    const CaseId id = kb.insert(std::move(draft));
    return {RetainResult::Kind::Retained, id};
}

void revise(KnowledgeBase& kb, CaseId id, double realized_utility, double ut) {
    Case* c = kb.find_mut(id);
    if (!c) throw NotFoundError("cannot revise unknown case " + std::to_string(id));
    c->outcome.realized_utility = realized_utility;
    c->outcome.status =
        realized_utility > ut ? OutcomeStatus::Confirmed : OutcomeStatus::Failed;
}

AdaptationResponse adapt(KnowledgeBase& kb, const AdaptationRequest& request,
                         const EngineContext& ctx) {
    const auto ranked = retrieve(kb, request, ctx);
    const auto qaf = build_qaf(ranked, ctx.config.beta);

    if (!qaf.empty()) return select_response(kb, qaf, request, ctx);

    auto constructed = constructive_adapt(kb, ranked, request, ctx);
    const auto retained =
        retain(kb, request, constructed.solution, constructed.predicted_utility, ctx);

    AdaptationResponse response;
    response.solution = std::move(constructed.solution);
    response.predicted_utility = constructed.predicted_utility;
    response.provenance = Provenance::Constructed;
    response.case_id = retained.id;
    response.threshold_met = constructed.predicted_utility > ctx.utility_spec->threshold;
    response.eval_count = constructed.eval_count;
    response.elapsed =
        std::chrono::microseconds(static_cast<std::int64_t>(constructed.utility_evals));
    return response;
}

}  // namespace sase::engine
