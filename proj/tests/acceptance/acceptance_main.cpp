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

// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Every tolerance is pinned here, in code.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sase/documents.hpp"
#include "sase/engine.hpp"
#include "sase/knowledge_base.hpp"
#include "sase/runtime.hpp"
#include "sase/scenario.hpp"

#include "support/expr_oracle.hpp"
#include "support/fixtures.hpp"

using namespace sase;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    double limit_seconds;
    std::chrono::steady_clock::time_point start;
    bool failed = false;
    std::string detail;

    Criterion(std::string n, double limit) : name(std::move(n)), limit_seconds(limit) {
        start = std::chrono::steady_clock::now();
    }

    void require(bool condition, const std::string& what) {
        if (!condition && !failed) {
            failed = true;
            detail = what;
        }
    }

    void finish() {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > limit_seconds) {
            failed = true;
            detail = "runtime " + format_double(elapsed) + "s exceeds " +
                     format_double(limit_seconds) + "s";
        }
        if (failed) {
            ++g_failures;
            std::cout << "[FAIL] " << name << ": " << detail << "\n";
        } else {
            std::cout << "[PASS] " << name << " (" << format_double(elapsed) << "s)\n";
        }
    }
};

AdaptationRequest random_request(const SchemaSet& schema, SplitMix64& rng) {
    AdaptationRequest request;
    request.state = fixtures::random_state(schema, rng);
    return request;
}

double request_eu(const Scenario& scenario, const EngineContext& ctx,
                  const AdaptationRequest& request, const Solution& solution) {
    const SystemState merged = merge_solution(scenario.schema, request.state, solution);
    return expected_utility(scenario.utility_spec, ctx.metrics, merged, scenario.uncertainty,
                            scenario.schema);
}

// ---------------------------------------------------------------------------
// Criterion 1: the engine's branching agrees with a straight-line rendering
// of the adaptation algorithm on 200 randomized (KB, request) instances.
// ---------------------------------------------------------------------------
void criterion_algorithm_fidelity() {
    Criterion c("C1 algorithm fidelity (200 randomized instances)", 10.0);
    auto scenario = fixtures::webservice_scenario();
    SplitMix64 rng(20260801);

    constexpr double betas[] = {0.0, 0.5, 0.8, 0.95, 1.0};
    constexpr double alphas[] = {0.0, 0.5, 1.0};

    for (int instance = 0; instance < 200; ++instance) {
        scenario.engine_config.beta = betas[instance % 5];
        scenario.engine_config.alpha = alphas[instance % 3];
        scenario.engine_config.exclude_failed = (instance % 2) == 0;
        const EngineContext ctx = scenario.engine_context();

        const KnowledgeBase kb =
            fixtures::random_kb(scenario.schema, rng.next_u64() % 15, rng);
        const AdaptationRequest request = random_request(scenario.schema, rng);

        // Straight-line oracle. Similarity and expected utility are shared
        // primitives (checked by their own suites); the branching is not.
        struct Scored {
            CaseId id;
            double sim;
        };
        std::vector<Scored> scored;
        for (const auto& kb_case : kb.cases()) {
            if (ctx.config.exclude_failed && kb_case.outcome.status == OutcomeStatus::Failed)
                continue;
            scored.push_back({kb_case.id, similarity(scenario.similarity, scenario.schema,
                                                     request.state, kb_case.problem)});
        }
        std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
            if (a.sim != b.sim) return a.sim > b.sim;
            return a.id < b.id;
        });
        std::vector<Scored> qaf;
        for (const auto& s : scored)
            if (s.sim >= ctx.config.beta) qaf.push_back(s);

        KnowledgeBase expected_kb = kb;
        Provenance expected_provenance;
        CaseId expected_id = -1;
        if (!qaf.empty()) {
            double best_ce = -1.0;
            for (const auto& s : qaf) {
                const double eu =
                    request_eu(scenario, ctx, request, kb.find(s.id)->solution);
                const double ce = ctx.config.alpha * s.sim + (1.0 - ctx.config.alpha) * eu;
                if (ce > best_ce || (ce == best_ce && s.id < expected_id)) {
                    best_ce = ce;
                    expected_id = s.id;
                }
            }
            expected_provenance = Provenance::Reused;
            ++expected_kb.find_mut(expected_id)->use_count;  // reuse only bumps the counter
        } else {
            // The search itself is covered by criterion 2; here the oracle
            // reuses it and pins the retain-on-this-branch-only rule.
            std::vector<RankedCase> ranked;
            for (const auto& s : scored) ranked.push_back({s.id, s.sim});
            const auto constructed = engine::constructive_adapt(kb, ranked, request, ctx);
            expected_provenance = Provenance::Constructed;

            const Case* nearest = nullptr;
            double nearest_sim = -1.0;
            for (const auto& kb_case : expected_kb.cases()) {
                const double sim = similarity(scenario.similarity, scenario.schema,
                                              request.state, kb_case.problem);
                if (sim > nearest_sim) {
                    nearest_sim = sim;
                    nearest = &kb_case;
                }
            }
            if (nearest && nearest_sim >= ctx.config.gamma &&
                nearest->solution == constructed.solution) {
                expected_id = nearest->id;
                ++expected_kb.find_mut(expected_id)->use_count;
            } else {
                Case draft;
                draft.problem = request.state;
                draft.solution = constructed.solution;
                draft.predicted_utility = constructed.predicted_utility;
                draft.source = CaseSource::Constructed;
                expected_id = expected_kb.insert(std::move(draft));
            }
        }

        KnowledgeBase actual_kb = kb;
        const AdaptationResponse response = engine::adapt(actual_kb, request, ctx);

        c.require(response.provenance == expected_provenance,
                  "instance " + std::to_string(instance) + ": provenance mismatch");
        c.require(response.case_id == expected_id,
                  "instance " + std::to_string(instance) + ": case id mismatch");
        c.require(actual_kb == expected_kb,
                  "instance " + std::to_string(instance) + ": KB delta mismatch");
        if (c.failed) break;
    }
    c.finish();
}

// ---------------------------------------------------------------------------
// Criterion 2: whenever the exhaustive 17x17 grid oracle certifies that an
// expected utility above the threshold is reachable, adapt answers with
// threshold_met, satisficing on and off.
// ---------------------------------------------------------------------------
void criterion_ensure_clause() {
    Criterion c("C2 ensure clause vs 17x17 grid oracle (50 requests)", 30.0);
    auto scenario = fixtures::webservice_scenario();
    SplitMix64 rng(20260802);
    const double ut = scenario.utility_spec.threshold;

    int feasible = 0;
    for (int i = 0; i < 50; ++i) {
        const AdaptationRequest request = random_request(scenario.schema, rng);
        const EngineContext probe = scenario.engine_context();

        double oracle_best = -1.0;
        for (int ti = 0; ti < 17; ++ti) {
            const double threads = std::round(1.0 + 63.0 * ti / 16.0);
            for (int cj = 0; cj < 17; ++cj) {
                const double cache = 1024.0 * cj / 16.0;
                const Solution candidate{{"threads", threads}, {"cache_mb", cache}};
                oracle_best = std::max(oracle_best, request_eu(scenario, probe, request, candidate));
            }
        }
        if (!(oracle_best > ut)) continue;
        ++feasible;

        for (bool satisficing : {true, false}) {
            scenario.engine_config.satisficing = satisficing;
            const EngineContext ctx = scenario.engine_context();
            KnowledgeBase kb(scenario.schema);
            const AdaptationResponse response = engine::adapt(kb, request, ctx);
            c.require(response.threshold_met,
                      "request " + std::to_string(i) + " (satisficing " +
                          (satisficing ? "on" : "off") + "): oracle found " +
                          format_double(oracle_best) + " but adapt returned " +
                          format_double(response.predicted_utility));
        }
        if (c.failed) break;
    }
    c.require(feasible >= 25, "too few feasible instances to be meaningful");
    c.finish();
}

// ---------------------------------------------------------------------------
// Criterion 3: recalling a remembered adaptation costs at least 10x fewer
// utility evaluations than constructing it did.
// ---------------------------------------------------------------------------
void criterion_remembrance_economy() {
    Criterion c("C3 remembrance economy (reuse vs construction)", 10.0);
    const auto scenario = fixtures::webservice_scenario();
    KnowledgeBase kb(scenario.schema);

    const auto first = run_loop(scenario, kb, 60);
    const auto second = run_loop(scenario, kb, 60);

    const auto& constructed = first[50].response;
    const auto& reused = second[50].response;
    c.require(constructed.has_value() && reused.has_value(), "both runs must trigger at tick 50");
    if (constructed && reused) {
        c.require(constructed->provenance == Provenance::Constructed,
                  "first encounter should construct");
        c.require(reused->provenance == Provenance::Reused, "second encounter should reuse");
        c.require(reused->eval_count * 10 <= constructed->eval_count,
                  "eval counts " + std::to_string(constructed->eval_count) + " -> " +
                      std::to_string(reused->eval_count) + " miss the 10x economy");
    }
    c.finish();
}

// ---------------------------------------------------------------------------
// Criterion 4: end-to-end recovery on the arrival-rate step, exact.
// ---------------------------------------------------------------------------
void criterion_recovery() {
    Criterion c("C4 end-to-end recovery at the tick-50 load step", 5.0);
    const auto scenario = fixtures::webservice_scenario();
    KnowledgeBase kb(scenario.schema);
    const auto records = run_loop(scenario, kb, 101);

    c.require(records.size() == 101, "expected 101 ticks");
    for (std::int64_t t = 0; t < 50 && !c.failed; ++t)
        c.require(!records[t].triggered, "unexpected trigger at tick " + std::to_string(t));
    c.require(records[50].triggered, "the load step must trigger at tick 50");
    bool recovered = false;
    for (std::int64_t t = 51; t <= 53; ++t)
        if (records[t].expected_utility_value >= 0.7) recovered = true;
    c.require(recovered, "expected utility not restored to >= 0.7 within 3 ticks");
    for (std::int64_t t = 51; t <= 100 && !c.failed; ++t)
        c.require(!records[t].triggered, "extra trigger at tick " + std::to_string(t));
    c.finish();
}

// ---------------------------------------------------------------------------
// Criterion 5: uncertainty behavior.
// ---------------------------------------------------------------------------
void criterion_uncertainty() {
    Criterion c("C5 uncertainty suite (equivalence, Jensen, pessimism, analytic)", 10.0);
    const MetricFn identity = [](const SystemState& s) { return s.values; };

    auto x_attr = AttributeSchema::numeric("x", 0, 20);
    x_attr.similarity_weight = 1.0;
    const auto schema = SchemaSet::create({x_attr});
    UtilitySpec tent;
    tent.terms.push_back({"x", UtilityCurve::target(10.0, 5.0), 1.0});
    tent.threshold = 0.7;

    auto model_for = [](double level, UncertaintyNature nature, std::uint64_t seed) {
        UncertaintyModel m;
        m.seed = seed;
        UncertaintyDescriptor d;
        d.attribute = "x";
        d.level = level;
        d.nature = nature;
        m.descriptors.emplace("x", d);
        return m;
    };

    // (a) all-levels-zero equivalence, exact.
    {
        SystemState state;
        state.values["x"] = 7.25;
        const double exact = utility(tent, state.values);
        for (auto nature : {UncertaintyNature::Variability, UncertaintyNature::LackOfKnowledge}) {
            const auto model = model_for(0.0, nature, 5);
            c.require(expected_utility(tent, identity, state, model, schema) == exact,
                      "level-zero expected utility must equal utility exactly");
        }
        const UncertaintyModel empty;
        c.require(expected_utility(tent, identity, state, empty, schema) == exact,
                  "empty model must equal utility exactly");
    }

    // (b) Jensen on the tent fixture. The curve is concave on [5, 15] only,
    // so the interval stays inside that region and covers the peak; there
    // the Jensen gap dominates the Monte Carlo noise at N = 64.
    {
        SplitMix64 seeds(515);
        for (int i = 0; i < 20; ++i) {
            SystemState state;
            state.values["x"] = 9.5 + seeds.next_double();
            const auto model =
                model_for(0.15 + seeds.next_double() * 0.05, UncertaintyNature::Variability,
                          seeds.next_u64());
            const double eu = expected_utility(tent, identity, state, model, schema);
            c.require(eu <= utility(tent, state.values) + 0.02,
                      "Jensen violated: " + format_double(eu));
        }
    }

    // (c) nature pessimism on 50 random fixtures.
    {
        SplitMix64 seeds(616);
        for (int i = 0; i < 50; ++i) {
            SystemState state;
            state.values["x"] = seeds.next_double() * 20.0;
            const double level = seeds.next_double();
            const auto var = model_for(level, UncertaintyNature::Variability, seeds.next_u64());
            auto lok = var;
            lok.descriptors.at("x").nature = UncertaintyNature::LackOfKnowledge;
            const double eu_var = expected_utility(tent, identity, state, var, schema);
            const double eu_lok = expected_utility(tent, identity, state, lok, schema);
            c.require(eu_lok <= eu_var + 0.02,
                      "lack-of-knowledge " + format_double(eu_lok) +
                          " more optimistic than variability " + format_double(eu_var));
        }
    }

    // (d) analytic tent integral: value 10, interval [8, 12], mean 0.8.
    {
        SystemState state;
        state.values["x"] = 10.0;
        const auto model = model_for(0.2, UncertaintyNature::Variability, 42);
        c.require(model.sample_count == 64, "fixture must run at N = 64");
        const double estimate = expected_utility(tent, identity, state, model, schema);
        c.require(std::abs(estimate - 0.8) <= 0.02,
                  "estimate " + format_double(estimate) + " misses 0.8 +/- 0.02");
    }
    c.finish();
}

// ---------------------------------------------------------------------------
// Criterion 6: determinism and formats, through the real CLI binary.
// ---------------------------------------------------------------------------
void criterion_determinism_and_formats() {
    Criterion c("C6 determinism and formats (CLI byte-identity, KB round-trips)", 30.0);

    const fs::path dir = fs::temp_directory_path() /
                         ("sase-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    auto run_cli = [&](const std::string& args) {
        const std::string command = std::string(SASE_BIN) + " " + args + " >/dev/null 2>/dev/null";
        return WEXITSTATUS(std::system(command.c_str()));
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };

    const std::string m1 = (dir / "m1.csv").string();
    const std::string m2 = (dir / "m2.csv").string();
    const std::string k1 = (dir / "k1.json").string();
    const std::string k2 = (dir / "k2.json").string();
    const std::string scenario_arg = std::string(SASE_SCENARIO_FILE);

    c.require(run_cli("run --scenario " + scenario_arg + " --ticks 101 --metrics " + m1 +
                      " --kb-out " + k1) == 0,
              "first run must exit 0");
    c.require(run_cli("run --scenario " + scenario_arg + " --ticks 101 --metrics " + m2 +
                      " --kb-out " + k2) == 0,
              "second run must exit 0");
    c.require(!slurp(m1).empty() && slurp(m1) == slurp(m2), "metrics CSVs differ between runs");
    c.require(!slurp(k1).empty() && slurp(k1) == slurp(k2), "KB files differ between runs");

    const auto scenario = fixtures::webservice_scenario();
    SplitMix64 rng(20260806);
    for (int i = 0; i < 100 && !c.failed; ++i) {
        const auto kb = fixtures::random_kb(scenario.schema, rng.next_u64() % 10, rng);
        const auto bytes = kb_serialize(kb);
        const auto back = kb_deserialize(bytes, scenario.schema);
        c.require(back == kb, "round-trip changed KB " + std::to_string(i));
        c.require(kb_serialize(back) == bytes, "re-serialization differs for KB " +
                                                   std::to_string(i));
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    c.finish();
}

// ---------------------------------------------------------------------------
// Criterion 7: expression evaluator vs an independent oracle.
// ---------------------------------------------------------------------------
void criterion_expressions() {
    Criterion c("C7 expression evaluator vs recursive-descent oracle", 10.0);

    const ExtendedState bindings = {
        {"arrival_rate", 100.0}, {"threads", 10.0}, {"cache_mb", 256.0},
        {"a", 1.25},             {"b", 2.5},        {"x", 0.75},
    };
    const std::vector<std::string> variables = {"arrival_rate", "threads", "cache_mb",
                                                "a",            "b",       "x"};

    SplitMix64 rng(20260807);
    int verified = 0;
    while (verified < 100 && !c.failed) {
        const auto oracle = expr_oracle::random_expr(rng, 4, variables);
        const auto expected = oracle.value(bindings);
        if (!expected || !std::isfinite(*expected)) continue;
        const std::string text = oracle.render();
        const double got = Expression::parse(text).evaluate(bindings);
        c.require(std::abs(got - *expected) <= 1e-12 * std::max(1.0, std::abs(*expected)),
                  "mismatch on: " + text);
        ++verified;
    }

    auto eval = [&](const char* text) { return Expression::parse(text).evaluate(bindings); };
    c.require(eval("2 + 3 * 4") == 14.0, "precedence fixture");
    c.require(eval("(2 + 3) * 4") == 20.0, "parenthesis fixture");
    try {
        eval("1 / (threads - threads)");
        c.require(false, "division by zero must raise");
    } catch (const ExprEvalError&) {
    }
    try {
        Expression::parse("min(1)");
        c.require(false, "wrong arity must raise");
    } catch (const ExprParseError&) {
    }
    c.finish();
}

}  // namespace

int main() {
    criterion_algorithm_fidelity();
    criterion_ensure_clause();
    criterion_remembrance_economy();
    criterion_recovery();
    criterion_uncertainty();
    criterion_determinism_and_formats();
    criterion_expressions();

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
