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

#ifndef SCHOLARFED_WIRE_H_
#define SCHOLARFED_WIRE_H_

// Native request shapes and response mappings for each upstream role. Every
// parser is a pure function of the response status and bytes, so live and
// fixture playback produce identical domain values.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scholarfed/domain.h"
#include "scholarfed/pid.h"
#include "scholarfed/transport.h"

namespace scholarfed::wire {

// articles_api: Semantic Scholar Graph API shape.
UpstreamRequest WorkCoreRequest(const Doi& doi);
UpstreamRequest CitationCountRequest(const Doi& doi);
Result<WorkCore> ParseWorkCore(const Doi& doi, const UpstreamResponse& response);
Result<CitationCount> ParseCitationCount(const UpstreamResponse& response);

// projects_api: OpenAIRE search API JSON shape.
UpstreamRequest ProjectsRequest(const Doi& doi);
Result<std::vector<Project>> ParseProjects(const UpstreamResponse& response);

// topics_api: Wikidata SPARQL endpoint. One query resolves the PID to its
// item and follows the subject (works) or field-of-work (people) property.
UpstreamRequest TopicsRequest(const Doi& doi);
UpstreamRequest PersonTopicsRequest(const OrcidId& orcid);
Result<std::vector<Topic>> ParseTopics(const UpstreamResponse& response);

// metrics_api: Altmetric v1 DOI endpoint.
UpstreamRequest MetricsRequest(const Doi& doi,
                               const std::optional<std::string>& api_key);
Result<std::optional<Metrics>> ParseMetrics(const UpstreamResponse& response);

// pid_graph: DataCite GraphQL API.
UpstreamRequest PersonRequest(const OrcidId& orcid);
UpstreamRequest RelatedArtifactsRequest(const Doi& doi);
Result<PersonRecord> ParsePerson(const OrcidId& orcid,
                                 const UpstreamResponse& response);
Result<RelatedArtifacts> ParseRelatedArtifacts(const UpstreamResponse& response);

// Maps a non-2xx status to the error a connector reports.
Error StatusError(Source source, int status);

// Inverse of the request builders: recovers the canonical key of a request
// from its native shape. Used by the stub server; nullopt when the request
// does not look like one this source serves.
std::optional<std::string> ExtractKey(Source source, std::string_view method,
                                      std::string_view path,
                                      const Params& params,
                                      std::string_view body);

// Case-folded dedup key for topic labels.
std::string FoldCase(std::string_view text);

}  // namespace scholarfed::wire

#endif  // SCHOLARFED_WIRE_H_
