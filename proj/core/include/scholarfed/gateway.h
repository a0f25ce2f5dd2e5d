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

#ifndef SCHOLARFED_GATEWAY_H_
#define SCHOLARFED_GATEWAY_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scholarfed/cache.h"
#include "scholarfed/config.h"
#include "scholarfed/connectors.h"
#include "scholarfed/domain.h"
#include "scholarfed/plan.h"
#include "scholarfed/result.h"

namespace scholarfed {

struct WorkContext {
  WorkCore core;
  std::vector<Project> projects;
  std::vector<Topic> topics;
  std::optional<Metrics> metrics;
  std::optional<ArtifactConnection> datasets;
  std::optional<ArtifactConnection> softwares;
  // Field-group name -> serving source, for groups that were populated.
  std::map<std::string, Source> attribution;
};

struct PersonContext {
  OrcidId orcid;
  std::string name;
  std::vector<EmploymentRecord> employment;
  ArtifactConnection publications;
  ArtifactConnection datasets;
  ArtifactConnection softwares;
  std::vector<Topic> topics;
  std::map<std::string, Source> attribution;
};

struct ErrorEntry {
  Source source;
  std::string key;
  ErrorKind kind;
  std::string message;
};

struct SourceTiming {
  double elapsed_ms = 0;
  bool from_cache = true;
  // Upstream fetches; cache hits are not counted.
  int requests = 0;
};

// The merged response. `data` and `errors` may coexist; `data` is absent
// only when the root lookup failed.
struct FederatedResponse {
  RootKind root = RootKind::kPaper;
  std::optional<nlohmann::ordered_json> data;
  std::vector<ErrorEntry> errors;
  // The error of the root sub-request, if it failed.
  std::optional<ErrorEntry> root_error;
  std::map<Source, SourceTiming> timing;
  double total_ms = 0;

  std::optional<WorkContext> work;
  std::optional<PersonContext> person;
  std::optional<CitationCounts> citation_counts;

  bool has_data() const { return data.has_value(); }
  std::map<std::string, Source> attribution() const;
};

nlohmann::ordered_json ToJson(const FederatedResponse& response,
                              bool include_timing = true);

struct GatewayOptions {
  std::chrono::milliseconds request_deadline{10'000};
  std::size_t concurrency_cap = 8;
  bool cache_enabled = true;
  std::map<Source, std::chrono::seconds> ttls;
};

GatewayOptions GatewayOptionsFrom(const Config& config);

// The federated query service core: plans a unified query, fans the
// sub-requests out concurrently, and merges the outcomes deterministically
// in plan order.
class Gateway {
 public:
  Gateway(std::shared_ptr<const Connectors> connectors, GatewayOptions options);

  // Never fails on sub-request errors; they become error entries.
  FederatedResponse Execute(const QueryPlan& plan) const;

  // Parse + plan + execute. Errors are schema/PID errors in the query.
  Result<FederatedResponse> Query(std::string_view text,
                                  const nlohmann::json& variables = nullptr) const;

  // Empty `fields` selects everything the listing queries select.
  Result<FederatedResponse> QueryPaper(
      const Doi& doi, const std::vector<std::string>& fields = {}) const;
  Result<FederatedResponse> QueryPerson(
      const OrcidId& orcid, const std::vector<std::string>& fields = {}) const;
  FederatedResponse QueryCitationCounts(std::span<const Doi> dois) const;

  ResponseCache& cache() const { return *cache_; }
  const Connectors& connectors() const { return *connectors_; }

 private:
  std::shared_ptr<const Connectors> connectors_;
  GatewayOptions options_;
  std::shared_ptr<ResponseCache> cache_;
};

// Live mode -> HTTP transport to the configured base URLs; fixture mode ->
// in-process playback of the configured scenario.
Result<std::shared_ptr<Transport>> MakeTransport(const Config& config);
Result<std::shared_ptr<Gateway>> MakeGateway(const Config& config);
std::shared_ptr<Gateway> MakeGateway(const Config& config,
                                     std::shared_ptr<Transport> transport);

}  // namespace scholarfed

#endif  // SCHOLARFED_GATEWAY_H_
