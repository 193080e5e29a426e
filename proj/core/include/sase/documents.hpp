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

#ifndef SASE_DOCUMENTS_HPP
#define SASE_DOCUMENTS_HPP

#include <string>
#include <string_view>

#include "sase/case.hpp"

namespace sase {

/// Parses an adaptation request document:
///   { "state": {name: value, ...}, "trigger_utility": x, "tick": n }
/// The state is validated against `schema`; throws FormatError on a
/// malformed document and ContractError on an invalid state.
AdaptationRequest read_request(std::string_view json_text, const SchemaSet& schema);

std::string write_request(const AdaptationRequest& request);

/// Renders an adaptation response document with solution,
/// predicted_utility, provenance, case_id, threshold_met and eval_count.
std::string write_response(const AdaptationResponse& response);

}  // namespace sase

#endif  // SASE_DOCUMENTS_HPP
