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

#include "sase/documents.hpp"

#include <set>

#include <json.hpp>

#include "sase/errors.hpp"

namespace sase {

namespace {

using Json = nlohmann::json;

Json value_map_to_json(const ValueMap& m) {
    Json j = Json::object();
    for (const auto& [name, value] : m)
        j[name] = is_number(value) ? Json(as_number(value)) : Json(as_label(value));
    return j;
}

ValueMap value_map_from_json(const Json& j, const std::string& context) {
    if (!j.is_object()) throw FormatError(context + ": expected an object");
    ValueMap m;
    for (const auto& [key, val] : j.items()) {
        if (val.is_number())
            m.emplace(key, val.get<double>());
        else if (val.is_string())
            m.emplace(key, val.get<std::string>());
        else
            throw FormatError(context + "." + key + ": expected a number or a string");
    }
    return m;
}

}  // namespace

AdaptationRequest read_request(std::string_view json_text, const SchemaSet& schema) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed request document: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("request document must be an object");
    for (const auto& [key, _] : doc.items()) {
        static const std::set<std::string> allowed = {"state", "trigger_utility", "tick"};
        if (!allowed.count(key)) throw FormatError("request document: unknown key '" + key + "'");
    }
    if (!doc.contains("state")) throw FormatError("request document: missing 'state'");

    AdaptationRequest request;
    request.state.values = value_map_from_json(doc["state"], "request.state");
    if (doc.contains("trigger_utility")) {
        if (!doc["trigger_utility"].is_number())
            throw FormatError("request document: 'trigger_utility' must be a number");
        request.trigger_utility = doc["trigger_utility"].get<double>();
        if (!(request.trigger_utility >= 0.0 && request.trigger_utility <= 1.0))
            throw FormatError("request document: 'trigger_utility' must lie in [0, 1]");
    }
    if (doc.contains("tick")) {
        if (!doc["tick"].is_number_integer())
            throw FormatError("request document: 'tick' must be an integer");
        request.tick = doc["tick"].get<std::int64_t>();
    }

    auto vr = validate_state(schema, request.state);
    if (!vr.ok()) {
        std::string msg = "request state is invalid:";
        for (const auto& v : vr.violations) msg += "\n  - " + v;
        throw ContractError(msg);
    }
    return request;
}

std::string write_request(const AdaptationRequest& request) {
    Json doc = Json::object();
    doc["state"] = value_map_to_json(request.state.values);
    doc["trigger_utility"] = request.trigger_utility;
    doc["tick"] = request.tick;
    return doc.dump(2) + "\n";
}

std::string write_response(const AdaptationResponse& response) {
    Json doc = Json::object();
    doc["solution"] = value_map_to_json(response.solution);
    doc["predicted_utility"] = response.predicted_utility;
    doc["provenance"] = std::string(to_string(response.provenance));
    doc["case_id"] = response.case_id;
    doc["threshold_met"] = response.threshold_met;
    doc["eval_count"] = response.eval_count;
    return doc.dump(2) + "\n";
}

}  // namespace sase
