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

#include "sase/knowledge_base.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "sase/errors.hpp"

namespace sase {

namespace {

// nlohmann::json keeps object members in std::map order, which gives the
// sorted-key layout the KB document format requires.
using Json = nlohmann::json;

constexpr int kKbFormatVersion = 1;

Json value_to_json(const Value& v) {
    if (is_number(v)) return as_number(v);
    return as_label(v);
}

Value value_from_json(const Json& j, const std::string& context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw FormatError(context + ": expected a number or a string");
}

Json value_map_to_json(const ValueMap& m) {
    Json j = Json::object();
    for (const auto& [name, value] : m) j[name] = value_to_json(value);
    return j;
}

ValueMap value_map_from_json(const Json& j, const std::string& context) {
    if (!j.is_object()) throw FormatError(context + ": expected an object");
    ValueMap m;
    for (const auto& [key, val] : j.items()) m.emplace(key, value_from_json(val, context + "." + key));
    return m;
}

Json case_to_json(const Case& c) {
    Json j = Json::object();
    j["id"] = c.id;
    j["problem"] = value_map_to_json(c.problem.values);
    j["solution"] = value_map_to_json(c.solution);
    j["predicted_utility"] = c.predicted_utility;
    Json outcome = Json::object();
    outcome["status"] = std::string(to_string(c.outcome.status));
    if (c.outcome.realized_utility) outcome["realized_utility"] = *c.outcome.realized_utility;
    j["outcome"] = outcome;
    j["source"] = std::string(to_string(c.source));
    j["use_count"] = c.use_count;
    return j;
}

Case case_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("case: expected an object");
    for (const auto& [key, _] : j.items()) {
        static const std::set<std::string> allowed = {
            "id", "problem", "solution", "predicted_utility", "outcome", "source", "use_count"};
        if (!allowed.count(key)) throw FormatError("case: unknown key '" + key + "'");
    }
    Case c;
    try {
        c.id = j.at("id").get<CaseId>();
        c.problem.values = value_map_from_json(j.at("problem"), "case.problem");
        c.solution = value_map_from_json(j.at("solution"), "case.solution");
        c.predicted_utility = j.at("predicted_utility").get<double>();
        const Json& outcome = j.at("outcome");
        auto status = outcome_status_from_string(outcome.at("status").get<std::string>());
        if (!status) throw FormatError("case.outcome.status: unknown value");
        c.outcome.status = *status;
        if (outcome.contains("realized_utility"))
            c.outcome.realized_utility = outcome.at("realized_utility").get<double>();
        auto source = case_source_from_string(j.at("source").get<std::string>());
        if (!source) throw FormatError("case.source: unknown value");
        c.source = *source;
        c.use_count = j.at("use_count").get<std::int64_t>();
    } catch (const Json::exception& e) {
        throw FormatError(std::string("malformed case: ") + e.what());
    }
    return c;
}

void validate_case_against(const SchemaSet& schema, const Case& c) {
    auto pr = validate_state(schema, c.problem);
    auto sr = validate_solution(schema, c.solution);
    if (!pr.ok() || !sr.ok()) {
        std::string msg = "case does not conform to the knowledge base schema:";
        for (const auto& v : pr.violations) msg += "\n  - " + v;
        for (const auto& v : sr.violations) msg += "\n  - " + v;
        throw CompatError(msg);
    }
    if (!(c.predicted_utility >= 0.0 && c.predicted_utility <= 1.0))
        throw CompatError("case predicted_utility out of [0, 1]");
    if (c.outcome.realized_utility &&
        !(*c.outcome.realized_utility >= 0.0 && *c.outcome.realized_utility <= 1.0))
        throw CompatError("case realized_utility out of [0, 1]");
}

}  // namespace

std::string_view to_string(OutcomeStatus s) {
    switch (s) {
        case OutcomeStatus::Untested: return "untested";
        case OutcomeStatus::Confirmed: return "confirmed";
        case OutcomeStatus::Failed: return "failed";
    }
    return "untested";
}

std::string_view to_string(CaseSource s) {
    return s == CaseSource::Constructed ? "constructed" : "seeded";
}

std::string_view to_string(Provenance p) {
    return p == Provenance::Reused ? "reused" : "constructed";
}

std::optional<OutcomeStatus> outcome_status_from_string(std::string_view s) {
    if (s == "untested") return OutcomeStatus::Untested;
    if (s == "confirmed") return OutcomeStatus::Confirmed;
    if (s == "failed") return OutcomeStatus::Failed;
    return std::nullopt;
}

std::optional<CaseSource> case_source_from_string(std::string_view s) {
    if (s == "constructed") return CaseSource::Constructed;
    if (s == "seeded") return CaseSource::Seeded;
    return std::nullopt;
}

KnowledgeBase KnowledgeBase::restore(SchemaSet schema, std::vector<Case> cases, CaseId next_id) {
    if (next_id < 0) throw FormatError("knowledge base next_id must be nonnegative");
    CaseId previous = -1;
    for (const auto& c : cases) {
        if (c.id <= previous)
            throw FormatError("knowledge base cases must be strictly ascending by id");
        if (c.id >= next_id) throw FormatError("case id must be below next_id");
        previous = c.id;
        validate_case_against(schema, c);
    }
    KnowledgeBase kb(std::move(schema));
    kb.cases_ = std::move(cases);
    kb.next_id_ = next_id;
    return kb;
}

CaseId KnowledgeBase::insert(Case draft) {
    validate_case_against(schema_, draft);
    draft.id = next_id_++;
    cases_.push_back(std::move(draft));
    return cases_.back().id;
}

const Case* KnowledgeBase::find(CaseId id) const {
    auto it = std::lower_bound(cases_.begin(), cases_.end(), id,
                               [](const Case& c, CaseId v) { return c.id < v; });
    if (it == cases_.end() || it->id != id) return nullptr;
    return &*it;
}

Case* KnowledgeBase::find_mut(CaseId id) {
    return const_cast<Case*>(static_cast<const KnowledgeBase*>(this)->find(id));
}

std::string kb_serialize(const KnowledgeBase& kb) {
    Json doc = Json::object();
    doc["version"] = kKbFormatVersion;
    doc["schema_fingerprint"] = kb.schema_fingerprint();
    doc["next_id"] = kb.next_id();
    Json cases = Json::array();
    for (const auto& c : kb.cases()) cases.push_back(case_to_json(c));
    doc["cases"] = cases;
    return doc.dump(2) + "\n";
}

KnowledgeBase kb_deserialize(std::string_view bytes, const SchemaSet& schema) {
    Json doc;
    try {
        doc = Json::parse(bytes);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed knowledge base document: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("knowledge base document must be an object");
    for (const auto& [key, _] : doc.items()) {
        static const std::set<std::string> allowed = {"version", "schema_fingerprint", "next_id",
                                                      "cases"};
        if (!allowed.count(key))
            throw FormatError("knowledge base document: unknown key '" + key + "'");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw FormatError("knowledge base document: missing integer 'version'");
    const int version = doc["version"].get<int>();
    if (version != kKbFormatVersion)
        throw CompatError("knowledge base version mismatch: file has " + std::to_string(version) +
                          ", expected " + std::to_string(kKbFormatVersion));
    if (!doc.contains("schema_fingerprint") || !doc["schema_fingerprint"].is_string())
        throw FormatError("knowledge base document: missing 'schema_fingerprint'");
    const auto fingerprint = doc["schema_fingerprint"].get<std::string>();
    if (fingerprint != schema.fingerprint())
        throw CompatError("knowledge base schema fingerprint " + fingerprint +
                          " does not match the provided schema (" + schema.fingerprint() + ")");
    if (!doc.contains("next_id") || !doc["next_id"].is_number_integer())
        throw FormatError("knowledge base document: missing integer 'next_id'");
    if (!doc.contains("cases") || !doc["cases"].is_array())
        throw FormatError("knowledge base document: missing 'cases' array");

    std::vector<Case> cases;
    for (const auto& cj : doc["cases"]) cases.push_back(case_from_json(cj));
    return KnowledgeBase::restore(schema, std::move(cases), doc["next_id"].get<CaseId>());
}

}  // namespace sase
