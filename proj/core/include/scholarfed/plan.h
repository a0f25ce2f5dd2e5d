// Copyright 2026 The ScholarFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHOLARFED_PLAN_H_
#define SCHOLARFED_PLAN_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scholarfed/domain.h"
#include "scholarfed/query.h"
#include "scholarfed/result.h"

namespace scholarfed {

enum class RootKind { kPaper, kPerson, kComparisonCitations };

// Top-level field groups of the unified schema. Each is served by exactly
// one source role.
enum class FieldGroup {
  // paper(doi:)
  kMetadata,
  kCitations,
  kReferences,
  kProjects,
  kTopics,
  kMetrics,
  kDatasets,
  kSoftwares,
  // person(id:)
  kProfile,
  kEmployment,
  kPublications,
  kPersonDatasets,
  kPersonSoftwares,
  kPersonTopics,
  // citationCounts(dois:)
  kCitationCounts,
};

// Name used in the response's attribution block.
std::string_view FieldGroupName(FieldGroup group);
Source FieldGroupSource(FieldGroup group);

// What a sub-request asks its source for.
enum class Operation {
  kWorkCore,
  kProjects,
  kTopics,
  kMetrics,
  kRelatedArtifacts,
  kPerson,
  kPersonTopics,
  kCitationCount,
};

std::string_view OperationName(Operation op);

struct SubRequest {
  Source source;
  Operation op;
  std::string key;
  bool root = false;

  friend bool operator==(const SubRequest&, const SubRequest&) = default;
};

// A validated selection node; children empty for leaves.
struct Selection {
  std::string name;
  std::vector<Selection> children;
  bool object = false;
};

struct QueryPlan {
  RootKind root;
  std::vector<std::string> keys;
  // Root lookup first, then groups in schema order. Never two entries with
  // the same (source, key).
  std::vector<SubRequest> sub_requests;
  std::vector<Selection> selection;
  std::set<FieldGroup> groups;
};

// Validates a parsed document against the unified schema and derives the
// sub-requests the selected fields need. kSchemaError for unknown roots or
// fields, kMalformedPid / kChecksumMismatch for bad key arguments.
Result<QueryPlan> Plan(const query::Document& document,
                       const nlohmann::json& variables);
Result<QueryPlan> PlanQueryText(std::string_view text,
                                const nlohmann::json& variables = nullptr);

// Top-level field names of each root, in schema order.
std::vector<std::string> PaperFieldNames();
std::vector<std::string> PersonFieldNames();

// Query text selecting `fields` (top-level names) with their full
// sub-selections. Empty `fields` selects the same set as the listing
// queries.
Result<std::string> PaperQueryText(const Doi& doi,
                                   const std::vector<std::string>& fields);
Result<std::string> PersonQueryText(const OrcidId& orcid,
                                    const std::vector<std::string>& fields);
std::string CitationCountsQueryText(const std::vector<Doi>& dois);

}  // namespace scholarfed

#endif  // SCHOLARFED_PLAN_H_
