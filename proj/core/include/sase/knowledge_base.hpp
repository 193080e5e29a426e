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

#ifndef SASE_KNOWLEDGE_BASE_HPP
#define SASE_KNOWLEDGE_BASE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "sase/case.hpp"
#include "sase/schema.hpp"

namespace sase {

/// Persistent, deduplicated collection of cases bound to one schema set.
///
/// Value-semantic. Single-writer contract: concurrent reads are fine,
/// mutation requires exclusive access.
class KnowledgeBase {
public:
    KnowledgeBase() = default;
    explicit KnowledgeBase(SchemaSet schema) : schema_(std::move(schema)) {}

    const SchemaSet& schema() const { return schema_; }
    const std::string& schema_fingerprint() const { return schema_.fingerprint(); }

    /// Rebuilds a KB from persisted parts. `cases` must be strictly
    /// ascending by id with every id below `next_id`, and every case must
    /// conform to `schema`; throws FormatError/CompatError otherwise.
    static KnowledgeBase restore(SchemaSet schema, std::vector<Case> cases, CaseId next_id);

    /// Stores `draft` under a fresh id (its `id` field is ignored) and
    /// returns the assigned id. Throws CompatError when the case does not
    /// conform to this KB's schema.
    CaseId insert(Case draft);

    /// Returns the stored case or nullptr. Absence is a value, not a fault.
    const Case* find(CaseId id) const;

    /// Mutable access for outcome/use-count updates. Single-writer only.
    Case* find_mut(CaseId id);

    std::size_t size() const { return cases_.size(); }
    bool empty() const { return cases_.empty(); }
    CaseId next_id() const { return next_id_; }

    /// Cases in ascending id order.
    const std::vector<Case>& cases() const { return cases_; }

    bool operator==(const KnowledgeBase& other) const {
        return schema_.fingerprint() == other.schema_.fingerprint() &&
               next_id_ == other.next_id_ && cases_ == other.cases_;
    }

private:
    SchemaSet schema_;
    std::vector<Case> cases_;  // ascending by id
    CaseId next_id_ = 0;
};

/// Deterministic serialization: versioned JSON document, cases ascending by
/// id, object keys sorted, reals rendered shortest-round-trip. Equal KBs
/// produce byte-identical documents.
std::string kb_serialize(const KnowledgeBase& kb);

/// Inverse of kb_serialize. Throws FormatError on a malformed document and
/// CompatError on a version or fingerprint mismatch against `schema`.
KnowledgeBase kb_deserialize(std::string_view bytes, const SchemaSet& schema);

}  // namespace sase

#endif  // SASE_KNOWLEDGE_BASE_HPP
