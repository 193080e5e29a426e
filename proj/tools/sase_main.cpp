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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sase/documents.hpp"
#include "sase/engine.hpp"
#include "sase/errors.hpp"
#include "sase/knowledge_base.hpp"
#include "sase/runtime.hpp"
#include "sase/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;          // validation / IO problems
constexpr int kExitThresholdUnmet = 2; // ran, but the threshold was not met

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sase::FormatError("cannot read file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sase::FormatError("cannot write file '" + path.string() + "'");
    out << content;
    if (!out) throw sase::FormatError("failed writing file '" + path.string() + "'");
}

sase::KnowledgeBase load_or_create_kb(const std::optional<std::string>& path,
                                      const sase::SchemaSet& schema) {
    if (!path) return sase::KnowledgeBase(schema);
    return sase::kb_deserialize(read_file(*path), schema);
}

int cmd_run(const std::string& scenario_path, std::int64_t ticks,
            std::optional<std::uint64_t> seed_override, const std::optional<std::string>& kb_in,
            const std::optional<std::string>& kb_out, const std::string& metrics_path) {
    sase::Scenario scenario = sase::load_scenario_file(scenario_path);
    if (seed_override) scenario.seed = *seed_override;

    sase::KnowledgeBase kb = load_or_create_kb(kb_in, scenario.schema);
    const auto records = sase::run_loop(scenario, kb, ticks);

    write_file(metrics_path, sase::metrics_csv(records));
    if (kb_out) write_file(*kb_out, sase::kb_serialize(kb));

    std::size_t triggers = 0;
    bool any_unmet = false;
    for (const auto& r : records) {
        if (!r.triggered) continue;
        ++triggers;
        if (r.response && !r.response->threshold_met) any_unmet = true;
    }
    std::cout << "ran " << records.size() << " ticks, " << triggers
              << " adaptation(s), final KB size " << kb.size() << "\n";
    return any_unmet ? kExitThresholdUnmet : kExitOk;
}

int cmd_adapt(const std::string& scenario_path, const std::string& kb_path,
              const std::string& request_path, const std::string& out_path) {
    sase::Scenario scenario = sase::load_scenario_file(scenario_path);
    sase::KnowledgeBase kb = sase::kb_deserialize(read_file(kb_path), scenario.schema);
    const sase::AdaptationRequest request =
        sase::read_request(read_file(request_path), scenario.schema);

    const sase::EngineContext ctx = scenario.engine_context();
    const sase::AdaptationResponse response = sase::engine::adapt(kb, request, ctx);

    write_file(out_path, sase::write_response(response));
    write_file(kb_path, sase::kb_serialize(kb));
    return response.threshold_met ? kExitOk : kExitThresholdUnmet;
}

int cmd_kb(const std::string& kb_path) {
    const std::string bytes = read_file(kb_path);

    // Inspection works without the scenario: parse structurally, skipping
    // the schema conformance check a fingerprint-bound load would do.
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw sase::FormatError(std::string("malformed knowledge base document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array() ||
        !doc.contains("version") || !doc.contains("schema_fingerprint"))
        throw sase::FormatError("malformed knowledge base document");

    std::size_t constructed = 0, seeded = 0;
    std::size_t untested = 0, confirmed = 0, failed = 0;
    std::int64_t use_total = 0;
    const auto& cases = doc["cases"];
    for (const auto& c : cases) {
        if (!c.is_object() || !c.contains("source") || !c.contains("outcome") ||
            !c.contains("use_count"))
            throw sase::FormatError("malformed case in knowledge base document");
        const std::string source = c["source"].get<std::string>();
        if (source == "constructed")
            ++constructed;
        else if (source == "seeded")
            ++seeded;
        else
            throw sase::FormatError("malformed case source '" + source + "'");
        const std::string status = c["outcome"].at("status").get<std::string>();
        if (status == "untested")
            ++untested;
        else if (status == "confirmed")
            ++confirmed;
        else if (status == "failed")
            ++failed;
        else
            throw sase::FormatError("malformed outcome status '" + status + "'");
        use_total += c["use_count"].get<std::int64_t>();
    }

    std::cout << "size: " << cases.size() << "\n";
    std::cout << "schema_fingerprint: " << doc["schema_fingerprint"].get<std::string>() << "\n";
    std::cout << "source constructed: " << constructed << "\n";
    std::cout << "source seeded: " << seeded << "\n";
    std::cout << "status untested: " << untested << "\n";
    std::cout << "status confirmed: " << confirmed << "\n";
    std::cout << "status failed: " << failed << "\n";
    const double mean_use =
        cases.empty() ? 0.0 : static_cast<double>(use_total) / static_cast<double>(cases.size());
    std::cout << "mean use_count: " << sase::format_double(mean_use) << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    try {
        sase::Scenario scenario = sase::load_scenario_file(scenario_path);
        std::cout << "scenario '" << scenario.name << "' is valid\n";
        std::size_t controllables = 0;
        for (const auto& attr : scenario.schema.attributes())
            if (attr.controllable) ++controllables;
        std::cout << "attributes: " << scenario.schema.size() << " (" << controllables
                  << " controllable), derived metrics: " << scenario.derived.size() << "\n";
        for (const auto& [name, d] : scenario.uncertainty.descriptors)
            std::cout << "uncertainty on '" << name << "': location " << to_string(d.location)
                      << ", level " << sase::format_double(d.level) << ", nature "
                      << to_string(d.nature) << "\n";
        return kExitOk;
    } catch (const sase::ScenarioError& e) {
        for (const auto& v : e.violations()) std::cerr << "violation: " << v << "\n";
        return kExitError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Case-based self-adaptation engine with a scenario-driven simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run the adaptation loop over a scenario");
    std::string run_scenario;
    std::int64_t run_ticks = 0;
    std::optional<std::uint64_t> run_seed;
    std::optional<std::string> run_kb_in;
    std::optional<std::string> run_kb_out;
    std::string run_metrics;
    run->add_option("--scenario", run_scenario, "Scenario file")->required();
    run->add_option("--ticks", run_ticks, "Number of ticks to simulate")->required();
    run->add_option("--seed", run_seed, "Override the scenario seed");
    run->add_option("--kb", run_kb_in, "Initial knowledge base file");
    run->add_option("--kb-out", run_kb_out, "Where to write the final knowledge base");
    run->add_option("--metrics", run_metrics, "Metrics CSV output path")->required();

    // adapt
    auto* adapt = app.add_subcommand("adapt", "One-shot adaptation for a request document");
    std::string adapt_scenario, adapt_kb, adapt_request, adapt_out;
    adapt->add_option("--scenario", adapt_scenario, "Scenario file")->required();
    adapt->add_option("--kb", adapt_kb, "Knowledge base file (updated in place)")->required();
    adapt->add_option("--request", adapt_request, "Adaptation request document")->required();
    adapt->add_option("--out", adapt_out, "Adaptation response output path")->required();

    // kb
    auto* kb = app.add_subcommand("kb", "Summarize a knowledge base file");
    std::string kb_path;
    kb->add_option("--kb", kb_path, "Knowledge base file")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    std::string validate_scenario;
    validate->add_option("--scenario", validate_scenario, "Scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_scenario, run_ticks, run_seed, run_kb_in, run_kb_out, run_metrics);
        if (adapt->parsed()) return cmd_adapt(adapt_scenario, adapt_kb, adapt_request, adapt_out);
        if (kb->parsed()) return cmd_kb(kb_path);
        if (validate->parsed()) return cmd_validate(validate_scenario);
    } catch (const sase::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
