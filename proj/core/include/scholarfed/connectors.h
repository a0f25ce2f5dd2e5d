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

#ifndef SCHOLARFED_CONNECTORS_H_
#define SCHOLARFED_CONNECTORS_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scholarfed/domain.h"
#include "scholarfed/pid.h"
#include "scholarfed/result.h"
#include "scholarfed/transport.h"

namespace scholarfed {

// One retry on timeout, network error or 5xx. 429 is never retried.
struct RetryPolicy {
  int max_retries = 1;
  std::chrono::milliseconds initial_backoff{100};
  std::chrono::milliseconds jitter{100};
};

std::chrono::milliseconds BackoffForAttempt(const RetryPolicy& policy,
                                            int attempt);

struct ConnectorOptions {
  std::map<Source, std::chrono::milliseconds> timeouts;
  RetryPolicy retry;
  std::size_t concurrency_cap = 8;
  std::optional<std::string> metrics_api_key;

  std::chrono::milliseconds TimeoutFor(Source source) const;
};

// The adapters for all upstream roles over a shared transport. Stateless and
// safe to call concurrently.
class Connectors {
 public:
  Connectors(std::shared_ptr<Transport> transport, ConnectorOptions options);

  Result<WorkCore> FetchWorkCore(const Doi& doi) const;
  // NotFound is an empty list.
  Result<std::vector<Project>> FetchProjects(const Doi& doi) const;
  Result<std::vector<Topic>> FetchTopics(const Doi& doi) const;
  // Absent when the source does not track the DOI.
  Result<std::optional<Metrics>> FetchMetrics(const Doi& doi) const;
  Result<PersonRecord> FetchPerson(const OrcidId& orcid) const;
  Result<std::vector<Topic>> FetchPersonTopics(const OrcidId& orcid) const;
  // NotFound is two empty connections.
  Result<RelatedArtifacts> FetchRelatedArtifacts(const Doi& doi) const;
  // Single-DOI citation count; NotFound is absent.
  Result<CitationCount> FetchCitationCount(const Doi& doi) const;

  // One entry per input DOI, fanned out under the concurrency cap. Per-DOI
  // failures map to absent; fails only if every lookup failed. `dois` must
  // be non-empty.
  Result<CitationCounts> FetchCitationCounts(std::span<const Doi> dois) const;

  const ConnectorOptions& options() const { return options_; }

 private:
  Result<UpstreamResponse> SendWithRetry(const UpstreamRequest& request) const;

  std::shared_ptr<Transport> transport_;
  ConnectorOptions options_;
};

}  // namespace scholarfed

#endif  // SCHOLARFED_CONNECTORS_H_
