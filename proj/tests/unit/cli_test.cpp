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

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sase/documents.hpp"
#include "sase/knowledge_base.hpp"
#include "sase/scenario.hpp"

#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = SASE_BIN;
const std::string kScenario = SASE_SCENARIO_FILE;

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("sase-cli-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string command = kBin + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << content;
}

}  // namespace

TEST_CASE("run writes a header plus one row per tick and exits 0") {
    TempDir tmp;
    const auto metrics = tmp.file("metrics.csv");
    const int code =
        run_cli("run --scenario " + kScenario + " --ticks 100 --metrics " + metrics);
    CHECK(code == 0);

    const std::string csv = slurp(metrics);
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 101);  // header + 100 data rows
    CHECK(csv.rfind("tick,utility,expected_utility,", 0) == 0);
}

TEST_CASE("run is byte-deterministic under fixed seeds") {
    TempDir tmp;
    const auto m1 = tmp.file("m1.csv");
    const auto m2 = tmp.file("m2.csv");
    const auto k1 = tmp.file("k1.json");
    const auto k2 = tmp.file("k2.json");
    REQUIRE(run_cli("run --scenario " + kScenario + " --ticks 101 --seed 42 --metrics " + m1 +
                    " --kb-out " + k1) == 0);
    REQUIRE(run_cli("run --scenario " + kScenario + " --ticks 101 --seed 42 --metrics " + m2 +
                    " --kb-out " + k2) == 0);
    CHECK(slurp(m1) == slurp(m2));
    CHECK(slurp(k1) == slurp(k2));
}

TEST_CASE("run on a missing scenario exits 1") {
    TempDir tmp;
    const int code = run_cli("run --scenario " + tmp.file("absent.json") +
                             " --ticks 10 --metrics " + tmp.file("m.csv"));
    CHECK(code == 1);
}

TEST_CASE("run exits 2 when the threshold cannot be met") {
    TempDir tmp;
    std::string text = fixtures::webservice_json();
    const std::string target = "\"threshold\": 0.7";
    const auto pos = text.find(target);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, target.size(), "\"threshold\": 0.9");
    const auto scenario_path = tmp.file("unreachable.json");
    spit(scenario_path, text);

    const int code = run_cli("run --scenario " + scenario_path + " --ticks 55 --metrics " +
                             tmp.file("m.csv"));
    CHECK(code == 2);
}

TEST_CASE("adapt round-trips request and response documents") {
    TempDir tmp;
    const auto scenario = fixtures::webservice_scenario();

    const auto kb_path = tmp.file("kb.json");
    sase::KnowledgeBase kb(scenario.schema);
    spit(kb_path, sase::kb_serialize(kb));

    sase::AdaptationRequest request;
    request.state = fixtures::webservice_state(8, 256, 800);
    request.trigger_utility = 0.24;
    request.tick = 50;
    const auto request_path = tmp.file("request.json");
    spit(request_path, sase::write_request(request));

    const auto out_path = tmp.file("response.json");
    const int code = run_cli("adapt --scenario " + kScenario + " --kb " + kb_path +
                             " --request " + request_path + " --out " + out_path);
    CHECK(code == 0);

    const std::string response = slurp(out_path);
    CHECK(response.find("\"provenance\": \"constructed\"") != std::string::npos);
    CHECK(response.find("\"threshold_met\": true") != std::string::npos);

    // The KB file was updated in place and grew by one case.
    const auto updated = sase::kb_deserialize(slurp(kb_path), scenario.schema);
    CHECK(updated.size() == 1);

    // The identical request is now answered from memory.
    const auto out2 = tmp.file("response2.json");
    CHECK(run_cli("adapt --scenario " + kScenario + " --kb " + kb_path + " --request " +
                  request_path + " --out " + out2) == 0);
    CHECK(slurp(out2).find("\"provenance\": \"reused\"") != std::string::npos);
    CHECK(sase::kb_deserialize(slurp(kb_path), scenario.schema).size() == 1);
}

TEST_CASE("adapt exits 2 when the response misses the threshold") {
    TempDir tmp;
    std::string text = fixtures::webservice_json();
    const std::string target = "\"threshold\": 0.7";
    const auto pos = text.find(target);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, target.size(), "\"threshold\": 0.9");
    const auto scenario_path = tmp.file("unreachable.json");
    spit(scenario_path, text);

    const auto scenario = fixtures::webservice_scenario();  // same schema, same fingerprint
    sase::KnowledgeBase kb(scenario.schema);
    const auto kb_path = tmp.file("kb.json");
    spit(kb_path, sase::kb_serialize(kb));

    sase::AdaptationRequest request;
    request.state = fixtures::webservice_state(8, 256, 800);
    const auto request_path = tmp.file("request.json");
    spit(request_path, sase::write_request(request));

    const int code = run_cli("adapt --scenario " + scenario_path + " --kb " + kb_path +
                             " --request " + request_path + " --out " + tmp.file("out.json"));
    CHECK(code == 2);
    CHECK(slurp(tmp.file("out.json")).find("\"threshold_met\": false") != std::string::npos);
}

TEST_CASE("adapt refuses a KB from a different scenario") {
    TempDir tmp;
    // A KB bound to a one-attribute schema.
    auto other_attr = sase::AttributeSchema::numeric("other", 0, 1);
    other_attr.controllable = true;
    other_attr.similarity_weight = 1;
    sase::KnowledgeBase other_kb(sase::SchemaSet::create({other_attr}));
    const auto kb_path = tmp.file("kb.json");
    spit(kb_path, sase::kb_serialize(other_kb));

    sase::AdaptationRequest request;
    request.state = fixtures::webservice_state(8, 256, 800);
    const auto request_path = tmp.file("request.json");
    spit(request_path, sase::write_request(request));

    const int code = run_cli("adapt --scenario " + kScenario + " --kb " + kb_path +
                             " --request " + request_path + " --out " + tmp.file("out.json"));
    CHECK(code == 1);
}

TEST_CASE("kb summarizes and rejects corrupt files") {
    TempDir tmp;
    const auto scenario = fixtures::webservice_scenario();
    sase::KnowledgeBase kb(scenario.schema);
    const auto kb_path = tmp.file("kb.json");
    const auto out_path = tmp.file("summary.txt");
    spit(kb_path, sase::kb_serialize(kb));

    auto run_kb_capturing = [&] {
        const std::string command = kBin + " kb --kb " + kb_path + " >" + out_path + " 2>/dev/null";
        return WEXITSTATUS(std::system(command.c_str()));
    };

    CHECK(run_kb_capturing() == 0);
    CHECK(slurp(out_path).find("size: 0") != std::string::npos);

    // Two constructed cases via retain, then the counts must reflect them.
    const auto ctx_scenario = fixtures::webservice_scenario();
    const auto ctx = ctx_scenario.engine_context();
    sase::AdaptationRequest request;
    request.state = fixtures::webservice_state(8, 256, 800);
    sase::engine::retain(kb, request, {{"threads", 40.0}, {"cache_mb", 256.0}}, 0.75, ctx);
    sase::engine::retain(kb, request, {{"threads", 64.0}, {"cache_mb", 512.0}}, 0.76, ctx);
    spit(kb_path, sase::kb_serialize(kb));

    CHECK(run_kb_capturing() == 0);
    const std::string summary = slurp(out_path);
    CHECK(summary.find("size: 2") != std::string::npos);
    CHECK(summary.find("source constructed: 2") != std::string::npos);
    CHECK(summary.find("status untested: 2") != std::string::npos);

    spit(kb_path, "{ definitely broken");
    CHECK(run_cli("kb --kb " + kb_path) == 1);
}

TEST_CASE("validate accepts the reference scenario and rejects broken ones") {
    CHECK(run_cli("validate --scenario " + kScenario) == 0);

    TempDir tmp;
    std::string text = fixtures::webservice_json();
    const auto pos = text.find("arrival_rate / (threads * 20)");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 12, "ghost_rate__");
    const auto bad = tmp.file("bad.json");
    spit(bad, text);
    CHECK(run_cli("validate --scenario " + bad) == 1);
}
