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

#include "scholarfed/connectors.h"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <utility>

#include "scholarfed/wire.h"

namespace scholarfed {
namespace {

bool Retriable(const Result<UpstreamResponse>& outcome) {
  if (!outcome.ok()) return outcome.error().kind == ErrorKind::kUpstreamUnavailable;
  return outcome->status >= 500;
}

}  // namespace

std::chrono::milliseconds BackoffForAttempt(const RetryPolicy& policy,
                                            int attempt) {
  auto delay = policy.initial_backoff * (std::int64_t{1} << std::min(attempt, 16));
  if (policy.jitter.count() > 0) {
    thread_local std::mt19937_64 rng{std::random_device{}()};
    std::uniform_int_distribution<std::int64_t> jitter(0, policy.jitter.count());
    delay += std::chrono::milliseconds(jitter(rng));
  }
  return delay;
}

std::chrono::milliseconds ConnectorOptions::TimeoutFor(Source source) const {
  auto it = timeouts.find(source);
  return it == timeouts.end() ? std::chrono::milliseconds(5000) : it->second;
}

Connectors::Connectors(std::shared_ptr<Transport> transport,
                       ConnectorOptions options)
    : transport_(std::move(transport)), options_(std::move(options)) {}

Result<UpstreamResponse> Connectors::SendWithRetry(
    const UpstreamRequest& request) const {
  const auto timeout = options_.TimeoutFor(request.source);
  Result<UpstreamResponse> outcome = transport_->Send(request, timeout);
  for (int attempt = 0; attempt < options_.retry.max_retries && Retriable(outcome);
       ++attempt) {
    std::this_thread::sleep_for(BackoffForAttempt(options_.retry, attempt));
    outcome = transport_->Send(request, timeout);
  }
  return outcome;
}

Result<WorkCore> Connectors::FetchWorkCore(const Doi& doi) const {
  auto response = SendWithRetry(wire::WorkCoreRequest(doi));
  if (!response.ok()) return response.error();
  return wire::ParseWorkCore(doi, *response);
}

Result<std::vector<Project>> Connectors::FetchProjects(const Doi& doi) const {
  auto response = SendWithRetry(wire::ProjectsRequest(doi));
  if (!response.ok()) return response.error();
  return wire::ParseProjects(*response);
}

Result<std::vector<Topic>> Connectors::FetchTopics(const Doi& doi) const {
  auto response = SendWithRetry(wire::TopicsRequest(doi));
  if (!response.ok()) return response.error();
  return wire::ParseTopics(*response);
}

Result<std::optional<Metrics>> Connectors::FetchMetrics(const Doi& doi) const {
  auto response =
      SendWithRetry(wire::MetricsRequest(doi, options_.metrics_api_key));
  if (!response.ok()) return response.error();
  return wire::ParseMetrics(*response);
}

Result<PersonRecord> Connectors::FetchPerson(const OrcidId& orcid) const {
  auto response = SendWithRetry(wire::PersonRequest(orcid));
  if (!response.ok()) return response.error();
  return wire::ParsePerson(orcid, *response);
}

Result<std::vector<Topic>> Connectors::FetchPersonTopics(
    const OrcidId& orcid) const {
  auto response = SendWithRetry(wire::PersonTopicsRequest(orcid));
  if (!response.ok()) return response.error();
  return wire::ParseTopics(*response);
}

Result<RelatedArtifacts> Connectors::FetchRelatedArtifacts(const Doi& doi) const {
  auto response = SendWithRetry(wire::RelatedArtifactsRequest(doi));
  if (!response.ok()) return response.error();
  return wire::ParseRelatedArtifacts(*response);
}

Result<CitationCount> Connectors::FetchCitationCount(const Doi& doi) const {
  auto response = SendWithRetry(wire::CitationCountRequest(doi));
  if (!response.ok()) return response.error();
  return wire::ParseCitationCount(*response);
}

Result<CitationCounts> Connectors::FetchCitationCounts(
    std::span<const Doi> dois) const {
  if (dois.empty()) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "citation count lookup needs at least one DOI");
  }
  std::vector<Doi> unique(dois.begin(), dois.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<std::optional<Result<CitationCount>>> outcomes(unique.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < unique.size(); i = next++) {
      outcomes[i] = FetchCitationCount(unique[i]);
    }
  };
  std::size_t workers =
      std::clamp<std::size_t>(options_.concurrency_cap, 1, unique.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  CitationCounts counts;
  std::size_t failures = 0;
  std::optional<Error> last_error;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    const Result<CitationCount>& outcome = *outcomes[i];
    if (outcome.ok()) {
      counts.emplace(unique[i], *outcome);
    } else {
      ++failures;
      last_error = outcome.error();
      counts.emplace(unique[i], std::nullopt);
    }
  }
  if (failures == unique.size()) {
    return MakeError(ErrorKind::kUpstreamUnavailable,
                     "every citation count lookup failed; last: " +
                         ToString(*last_error));
  }
  return counts;
}

}  // namespace scholarfed
